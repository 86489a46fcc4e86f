"""Pure-Python wire kernel: CRC-8 and the frame scan loop.

Semantics must stay bit-identical with the compiled kernel in
``_wire_cy.pyx``; the test suite cross-checks the two on random and
corrupted streams.
"""

from __future__ import annotations

import struct

NAME = "python"

FRAME_SIZE = 16
SYNC = b"\xaa\x55"
_PAYLOAD = struct.Struct("<HHhhhHB")  # seq, t16, ax, ay, az, stretch, flags


def _make_table(poly: int = 0x07) -> list[int]:
    table = []
    for byte in range(256):
        crc = byte
        for _ in range(8):
            crc = ((crc << 1) ^ poly) & 0xFF if crc & 0x80 else (crc << 1) & 0xFF
        table.append(crc)
    return table


_CRC_TABLE = _make_table()


def crc8(data: bytes) -> int:
    """CRC-8, polynomial 0x07, init 0x00, MSB first, no reflection."""
    table = _CRC_TABLE
    crc = 0
    for b in data:
        crc = table[crc ^ b]
    return crc


def scan(buf, factory, t_started, last_t16, t_base, seq_started, last_seq):
    """Scan `buf` for frames. Returns

        (frames, tail_offset, crc_failures, bytes_skipped, resyncs,
         seq_gaps, t_started, last_t16, t_base, seq_started, last_seq)

    Frames are built with `factory(seq, t_ms, ax, ay, az, stretch, button)`.
    `buf[tail_offset:]` is the undecodable suffix to keep for the next chunk
    (a partial candidate frame, or a trailing 0xAA that may pair up later).
    On a CRC failure the scan advances one byte, so an intact frame
    overlapping the failed candidate is still found.
    """
    table = _CRC_TABLE
    unpack = _PAYLOAD.unpack_from
    find = buf.find
    n = len(buf)
    frames = []
    crc_failures = 0
    bytes_skipped = 0
    resyncs = 0
    seq_gaps = 0
    in_skip = False
    i = 0
    while True:
        j = find(SYNC, i)
        if j < 0:
            # No sync pair ahead; a trailing 0xAA may complete next chunk.
            tail = n - 1 if n > i and buf[n - 1] == 0xAA else n
            if tail > i:
                bytes_skipped += tail - i
                if not in_skip:
                    resyncs += 1
            return (frames, tail, crc_failures, bytes_skipped, resyncs,
                    seq_gaps, t_started, last_t16, t_base, seq_started, last_seq)
        if j > i:
            bytes_skipped += j - i
            if not in_skip:
                resyncs += 1
                in_skip = True
            i = j
        if i + FRAME_SIZE > n:
            return (frames, i, crc_failures, bytes_skipped, resyncs,
                    seq_gaps, t_started, last_t16, t_base, seq_started, last_seq)
        crc = 0
        for b in buf[i + 2:i + 15]:
            crc = table[crc ^ b]
        if crc != buf[i + 15]:
            crc_failures += 1
            bytes_skipped += 1
            if not in_skip:
                resyncs += 1
                in_skip = True
            i += 1
            continue
        seq, t16, ax, ay, az, stretch, flags = unpack(buf, i + 2)
        if t_started:
            t_base += (t16 - last_t16) & 0xFFFF
        else:
            t_base = t16
            t_started = True
        last_t16 = t16
        if seq_started:
            seq_gaps += (seq - last_seq - 1) & 0xFFFF
        else:
            seq_started = True
        last_seq = seq
        frames.append(factory(seq, t_base, ax, ay, az, stretch, bool(flags & 1)))
        in_skip = False
        i += FRAME_SIZE
