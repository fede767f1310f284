"""Binary CIR container: little-endian u32 header (record count, tap
count), then per record the complex taps as interleaved float64 I/Q
followed by one u8 label."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

_HEADER = struct.Struct("<II")


def write_cirs(path, cirs: np.ndarray, labels: np.ndarray) -> None:
    cirs = np.asarray(cirs, dtype=complex)
    labels = np.asarray(labels)
    if cirs.ndim != 2 or cirs.shape[0] != labels.size:
        raise ValueError("need one label per CIR row")
    count, taps = cirs.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(count, taps))
        for row, label in zip(cirs, labels):
            iq = np.empty(2 * taps, dtype="<f8")
            iq[0::2] = row.real
            iq[1::2] = row.imag
            fh.write(iq.tobytes())
            fh.write(struct.pack("<B", int(label)))


def read_cirs(path) -> tuple[np.ndarray, np.ndarray]:
    data = Path(path).read_bytes()
    count, taps = _HEADER.unpack_from(data, 0)
    record = 16 * taps + 1
    expected = _HEADER.size + count * record
    if len(data) != expected:
        raise ValueError(f"corrupt CIR file: {len(data)} bytes, expected {expected}")
    cirs = np.empty((count, taps), dtype=complex)
    labels = np.empty(count, dtype=np.int64)
    off = _HEADER.size
    for i in range(count):
        iq = np.frombuffer(data, dtype="<f8", count=2 * taps, offset=off)
        cirs[i] = iq[0::2] + 1j * iq[1::2]
        off += 16 * taps
        labels[i] = data[off]
        off += 1
    return cirs, labels
