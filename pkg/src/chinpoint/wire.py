"""Framed binary wire protocol between a sensor board and the host.

16-byte frames: sync 0xAA 0x55, then little-endian seq(2) t_ms-low16(2)
ax(2) ay(2) az(2) stretch(2) flags(1), then CRC-8 (poly 0x07, init 0x00)
over bytes 2..14. The decoder resynchronizes on the next sync pair after
corruption and counts failures instead of raising.

The scan loop runs in a compiled kernel when available; set CHINPOINT_PURE=1
to force the pure-Python fallback.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass, field

from .frames import SEQ_MOD, SensorFrame

if os.environ.get("CHINPOINT_PURE"):
    from . import _wire_py as _kernel
else:
    try:
        from . import _wire_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _wire_py as _kernel

BACKEND = _kernel.NAME
FRAME_SIZE = 16
SYNC = b"\xaa\x55"
_PAYLOAD = struct.Struct("<HHhhhHB")


class WireEncodingError(ValueError):
    """Frame fields out of range for the wire format."""


def crc8(data: bytes) -> int:
    """CRC-8 (poly 0x07, init 0x00) as used in the frame trailer."""
    return _kernel.crc8(data)


def encode_frame(frame: SensorFrame) -> bytes:
    """Encode one frame to its 16-byte wire record.

    Only the low 16 bits of t_ms travel; the decoder unrolls them from
    arrival order (unambiguous while frames arrive at 10 Hz or faster).
    """
    try:
        frame.validate()
    except ValueError as exc:
        raise WireEncodingError(str(exc)) from exc
    payload = _PAYLOAD.pack(
        frame.seq,
        frame.t_ms & 0xFFFF,
        frame.ax,
        frame.ay,
        frame.az,
        frame.stretch,
        1 if frame.button else 0,
    )
    return SYNC + payload + bytes([_kernel.crc8(payload)])


@dataclass
class DecoderState:
    """Single-owner streaming decoder state plus integrity counters.

    `bytes_skipped` counts bytes that ended up in no decoded frame;
    `resyncs` counts maximal runs of such bytes. Byte conservation:
    16 * frames_decoded + bytes_skipped + len(pending) == bytes fed.
    """

    frames_decoded: int = 0
    crc_failures: int = 0
    resyncs: int = 0
    bytes_skipped: int = 0
    seq_gaps: int = 0
    pending: bytes = b""
    _t_started: bool = field(default=False, repr=False)
    _last_t16: int = field(default=0, repr=False)
    _t_base: int = field(default=0, repr=False)
    _seq_started: bool = field(default=False, repr=False)
    _last_seq: int = field(default=0, repr=False)


def decode_stream(data: bytes, state: DecoderState) -> list[SensorFrame]:
    """Decode every well-formed frame in `state.pending + data`.

    Corruption is counted, never raised: bad CRCs bump `crc_failures`,
    garbage bytes bump `bytes_skipped`/`resyncs`, and the scan re-locks on
    the next sync pair. Returns the newly decoded frames; trailing partial
    input stays in `state.pending` for the next call.
    """
    buf = state.pending + data if state.pending else data
    (frames, tail, crc_failures, skipped, resyncs, seq_gaps,
     t_started, last_t16, t_base, seq_started, last_seq) = _kernel.scan(
        buf, SensorFrame, state._t_started, state._last_t16,
        state._t_base, state._seq_started, state._last_seq)
    state.pending = buf[tail:]
    state.frames_decoded += len(frames)
    state.crc_failures += crc_failures
    state.bytes_skipped += skipped
    state.resyncs += resyncs
    state.seq_gaps += seq_gaps
    state._t_started = t_started
    state._last_t16 = last_t16
    state._t_base = t_base
    state._seq_started = seq_started
    state._last_seq = last_seq
    return frames


def flush(state: DecoderState) -> None:
    """Declare end of stream: any pending partial frame becomes skipped bytes."""
    if state.pending:
        state.bytes_skipped += len(state.pending)
        state.resyncs += 1
        state.pending = b""


def expected_seq_after(seq: int, count: int = 1) -> int:
    return (seq + count) % SEQ_MOD
