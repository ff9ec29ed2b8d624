"""Compressed forms of trit vectors: a run-length text encoding and a
2-bit-per-trit binary container."""

from __future__ import annotations

import struct
from itertools import groupby
from typing import BinaryIO, Iterable

import numpy as np

from .core import DataError, FdVector

__all__ = [
    "MAGIC",
    "rle_encode",
    "rle_expand",
    "rle_decode",
    "pack_trits",
    "unpack_trits",
    "write_fdt",
    "read_fdt",
]

MAGIC = b"FDT1"
_HEADER = struct.Struct("<4sII")  # magic, trit count, source length

# 2-bit field codes. 11 is reserved and never written.
_FROM_CODE = np.array([0, 1, -1, 99], dtype=np.int8)  # 99 marks the invalid code


def _as_trits(v, what: str = "trit vector") -> np.ndarray:
    if isinstance(v, FdVector):
        return v.trits
    t = np.asarray(v, dtype=np.int8)
    if t.ndim != 1 or t.size == 0:
        raise DataError(f"{what} must be a non-empty one-dimensional array")
    if not np.isin(t, (-1, 0, 1)).all():
        raise DataError(f"{what} values must be -1, 0, or +1")
    return t


def rle_encode(v) -> str:
    """Render trits as comma-joined ``count#value`` runs, e.g. ``3#1,2#-1``.

    Runs are maximal: adjacent tokens never share a value.
    """
    t = _as_trits(v)
    return ",".join(f"{len(list(g))}#{k}" for k, g in groupby(t.tolist()))


def rle_expand(text: str) -> np.ndarray:
    """Expand a run-length string into a bare trit array.

    Lenient on input the encoder would not produce (non-maximal runs,
    surrounding whitespace) but rejects malformed tokens, non-positive
    counts, and values outside {-1, 0, +1}.
    """
    if not isinstance(text, str) or not text.strip():
        raise DataError("empty run-length string")
    parts: list[np.ndarray] = []
    for i, token in enumerate(text.strip().split(",")):
        fields = token.strip().split("#")
        if len(fields) != 2:
            raise DataError(f"malformed run token {token!r} at position {i}")
        count_s, value_s = fields
        try:
            count = int(count_s)
            value = int(value_s)
        except ValueError:
            raise DataError(f"malformed run token {token!r} at position {i}") from None
        if count < 1:
            raise DataError(f"non-positive run count in token {token!r} at position {i}")
        if value not in (-1, 0, 1):
            raise DataError(f"value outside alphabet in token {token!r} at position {i}")
        parts.append(np.full(count, value, dtype=np.int8))
    return np.concatenate(parts)


def rle_decode(text: str, source_length: int, window: int) -> FdVector:
    """Expand runs and bind them to their provenance; the run total must
    equal ``source_length - window + 1``."""
    trits = rle_expand(text)
    expected = source_length - window + 1
    if trits.size != expected:
        raise DataError(
            f"runs expand to {trits.size} trits, expected {expected} "
            f"(source length {source_length}, window {window})"
        )
    return FdVector(trits, source_length=source_length, window=window)


def _pack_payload(t: np.ndarray) -> bytes:
    codes = np.zeros(t.size, dtype=np.uint8)
    codes[t == 1] = 1
    codes[t == -1] = 2
    pad = (-t.size) % 4
    if pad:
        codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
    quads = codes.reshape(-1, 4)
    packed = quads[:, 0] | quads[:, 1] << 2 | quads[:, 2] << 4 | quads[:, 3] << 6
    return packed.astype(np.uint8).tobytes()


def _unpack_payload(payload: bytes, count: int) -> np.ndarray:
    raw = np.frombuffer(payload, dtype=np.uint8)
    codes = np.empty(raw.size * 4, dtype=np.uint8)
    codes[0::4] = raw & 0b11
    codes[1::4] = (raw >> 2) & 0b11
    codes[2::4] = (raw >> 4) & 0b11
    codes[3::4] = raw >> 6
    if (codes[:count] == 3).any():
        raise DataError("invalid trit encoding (bit pattern 11) in payload")
    if codes[count:].any():
        raise DataError("nonzero padding bits in final byte")
    return _FROM_CODE[codes[:count]]


def pack_trits(v: FdVector) -> bytes:
    """Serialize one vector: magic ``FDT1``, trit count and source length as
    little-endian 32-bit fields, then ceil(L/4) payload bytes holding 2-bit
    trits, first trit in the least significant bits (00 zero, 01 plus one,
    10 minus one; final-byte padding is 00)."""
    return _HEADER.pack(MAGIC, len(v), v.source_length) + _pack_payload(v.trits)


def _parse_record(data: bytes, offset: int, index: int) -> tuple[FdVector, int]:
    if len(data) - offset < _HEADER.size:
        raise DataError(f"truncated header in record {index}")
    magic, count, source_length = _HEADER.unpack_from(data, offset)
    if magic != MAGIC:
        raise DataError(f"bad magic {magic!r} in record {index}")
    if count < 1:
        raise DataError(f"record {index} declares zero trits")
    window = source_length - count + 1
    if window < 1:
        raise DataError(
            f"record {index} declares {count} trits for source length {source_length}"
        )
    need = (count + 3) // 4
    start = offset + _HEADER.size
    payload = data[start:start + need]
    if len(payload) < need:
        raise DataError(f"payload too short in record {index}")
    trits = _unpack_payload(payload, count)
    return FdVector(trits, source_length=source_length, window=window), start + need


def unpack_trits(data: bytes) -> FdVector:
    """Exact inverse of :func:`pack_trits` for a single record."""
    v, end = _parse_record(bytes(data), 0, 0)
    if end != len(data):
        raise DataError(f"{len(data) - end} trailing bytes after record")
    return v


def write_fdt(fh: BinaryIO, vectors: Iterable[FdVector]) -> int:
    """Write records back to back; returns the number written."""
    n = 0
    for v in vectors:
        fh.write(pack_trits(v))
        n += 1
    return n


def read_fdt(fh: BinaryIO) -> list[FdVector]:
    """Read concatenated records until end of stream.

    The window width is recovered from each header as
    ``source_length - count + 1``.
    """
    data = fh.read()
    out: list[FdVector] = []
    offset = 0
    while offset < len(data):
        v, offset = _parse_record(data, offset, len(out))
        out.append(v)
    return out
