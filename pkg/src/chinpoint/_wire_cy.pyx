# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled wire kernel. Mirrors _wire_py exactly; see that module for
the scan contract."""

NAME = "cython"

FRAME_SIZE = 16
SYNC = b"\xaa\x55"

cdef unsigned char _CRC_TABLE[256]

cdef void _fill_table(unsigned char poly):
    cdef int byte, bit
    cdef unsigned int crc
    for byte in range(256):
        crc = byte
        for bit in range(8):
            if crc & 0x80:
                crc = ((crc << 1) ^ poly) & 0xFF
            else:
                crc = (crc << 1) & 0xFF
        _CRC_TABLE[byte] = <unsigned char>crc

_fill_table(0x07)


cdef inline unsigned char _crc8_raw(const unsigned char *p, Py_ssize_t n) noexcept nogil:
    cdef unsigned char crc = 0
    cdef Py_ssize_t k
    for k in range(n):
        crc = _CRC_TABLE[crc ^ p[k]]
    return crc


def crc8(data) -> int:
    """CRC-8, polynomial 0x07, init 0x00, MSB first, no reflection."""
    cdef const unsigned char[:] view = data
    if len(view) == 0:
        return 0
    return _crc8_raw(&view[0], len(view))


def scan(buf, factory, t_started, last_t16, t_base, seq_started, last_seq):
    cdef const unsigned char[:] view = buf
    cdef const unsigned char *p = NULL
    cdef Py_ssize_t n = len(view)
    if n:
        p = &view[0]
    cdef Py_ssize_t i = 0, tail
    cdef long crc_failures = 0, resyncs = 0
    cdef long long bytes_skipped = 0, seq_gaps = 0
    cdef bint in_skip = False
    cdef bint c_t_started = t_started, c_seq_started = seq_started
    cdef unsigned int c_last_t16 = last_t16, c_last_seq = last_seq
    cdef unsigned long long c_t_base = t_base
    cdef unsigned int seq, t16, stretch
    cdef int ax, ay, az
    cdef unsigned char flags
    frames = []
    while True:
        while i < n - 1 and not (p[i] == 0xAA and p[i + 1] == 0x55):
            i += 1
            bytes_skipped += 1
            if not in_skip:
                resyncs += 1
                in_skip = True
        if i >= n - 1:
            # No sync pair ahead; a trailing 0xAA may complete next chunk.
            if i == n - 1 and p[i] == 0xAA:
                tail = i
            else:
                if i == n - 1:
                    bytes_skipped += 1
                    if not in_skip:
                        resyncs += 1
                        in_skip = True
                tail = n
            break
        if i + FRAME_SIZE > n:
            tail = i
            break
        if _crc8_raw(p + i + 2, 13) != p[i + 15]:
            crc_failures += 1
            bytes_skipped += 1
            if not in_skip:
                resyncs += 1
                in_skip = True
            i += 1
            continue
        seq = p[i + 2] | (p[i + 3] << 8)
        t16 = p[i + 4] | (p[i + 5] << 8)
        ax = <short>(p[i + 6] | (p[i + 7] << 8))
        ay = <short>(p[i + 8] | (p[i + 9] << 8))
        az = <short>(p[i + 10] | (p[i + 11] << 8))
        stretch = p[i + 12] | (p[i + 13] << 8)
        flags = p[i + 14]
        if c_t_started:
            c_t_base += (t16 - c_last_t16) & 0xFFFF
        else:
            c_t_base = t16
            c_t_started = True
        c_last_t16 = t16
        if c_seq_started:
            seq_gaps += (seq - c_last_seq - 1) & 0xFFFF
        else:
            c_seq_started = True
        c_last_seq = seq
        frames.append(factory(seq, c_t_base, ax, ay, az, stretch, flags & 1 == 1))
        in_skip = False
        i += FRAME_SIZE
    return (frames, tail, crc_failures, bytes_skipped, resyncs, seq_gaps,
            c_t_started, c_last_t16, c_t_base, c_seq_started, c_last_seq)
