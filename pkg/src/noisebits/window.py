"""Finite sample runs of stream expressions and the correlator.

Product windows are bit-packed: sample ``start + 64*w + j`` lives in bit
``j`` of 64-bit word ``w``, bit value 1 encoding +1.  Padding bits past
the window length are zero.  Packing turns multiply-and-average of two
product windows into XOR plus popcount: with ``h`` differing positions
out of ``L``, the mean product is ``(L - 2h) / L``.

Superposition windows hold the signed integer sum per sample (int32).

Correlation is computed in exact integer arithmetic and divided once at
the end, so diagonal correlations are exactly 1.0 and results are
reproducible bit for bit.

A window can be dumped to a small binary file for debugging; see
:func:`dump_window` for the layout.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

from .expr import Product, StreamExpr, Superposition, canonical_str, parse_expr
from .source import MAX_INDEX, NoiseSource, as_source, sign_bits

_FULL_WORD = np.uint64(0xFFFFFFFFFFFFFFFF)


def _tail_mask(length: int) -> np.uint64:
    bits = length % 64
    return np.uint64((1 << bits) - 1) if bits else _FULL_WORD


def pack_bits(bits01: np.ndarray) -> np.ndarray:
    """Pack a 0/1 uint8 array into little-endian uint64 words."""
    by = np.packbits(bits01, bitorder="little")
    pad = (-by.size) % 8
    if pad:
        by = np.concatenate([by, np.zeros(pad, np.uint8)])
    return by.view(np.uint64)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`, truncated to ``length`` bits."""
    return np.unpackbits(words.view(np.uint8), bitorder="little", count=length)


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum(dtype=np.int64))


@dataclass(frozen=True, eq=False)
class Window:
    """Materialized run of an expression over [start, start + length).

    Exactly one of ``words`` (packed +-1 samples) and ``ints`` (integer
    samples) is set.  ``expr`` records provenance for dump headers and
    detection bookkeeping; it is None for synthetic windows such as the
    output of :func:`negate`.
    """

    start: int
    length: int
    seed: int
    expr: StreamExpr | None
    words: np.ndarray | None = None
    ints: np.ndarray | None = None

    @property
    def is_packed(self) -> bool:
        return self.words is not None

    @property
    def values(self) -> np.ndarray:
        """Samples as a signed array: int8 +-1 when packed, else int32."""
        if self.words is not None:
            bits = unpack_bits(self.words, self.length)
            return (bits.astype(np.int8) << 1) - 1
        assert self.ints is not None
        return self.ints

    def same_frame(self, other: "Window") -> bool:
        return self.start == other.start and self.length == other.length


@dataclass(frozen=True)
class CorrelationEstimate:
    """Time-average of a per-sample product over a finite window."""

    rho: float
    window_len: int
    sigma: float

    @classmethod
    def from_sum(cls, total: int, length: int) -> "CorrelationEstimate":
        return cls(rho=total / length, window_len=length, sigma=length ** -0.5)


def product_words(source: NoiseSource | int, offsets: tuple[int, ...],
                  start: int, length: int) -> np.ndarray:
    """Packed +-1 window of a product stream (bit 1 encodes +1).

    XOR-folds the per-offset sign bits; an even factor count flips the
    polarity of the fold and is fixed with one complement.
    """
    src = as_source(source)
    nwords = (length + 63) // 64
    acc = np.zeros(nwords, dtype=np.uint64)
    for o in offsets:
        acc ^= pack_bits(src.sign_bits(start + o, length))
    if len(offsets) % 2 == 0:
        acc = ~acc
        acc[-1] &= _tail_mask(length)
    return acc


def materialize(source: NoiseSource | int, expr: StreamExpr,
                start: int, length: int) -> Window:
    """Evaluate ``expr`` over [start, start + length) into a Window."""
    src = as_source(source)
    if length < 1:
        raise ValueError(f"window length must be at least 1, got {length}")
    if start < 0:
        raise ValueError(f"window start must be non-negative, got {start}")
    max_offset = 0
    if isinstance(expr, Product):
        max_offset = max(expr.offsets, default=0)
    elif isinstance(expr, Superposition):
        max_offset = max((max(m.offsets, default=0) for m in expr.members), default=0)
    else:
        raise TypeError(f"not a stream expression: {expr!r}")
    if start + length + max_offset > MAX_INDEX:
        raise OverflowError("window reaches past the supported sample index range")

    if isinstance(expr, Product):
        words = product_words(src, expr.offsets, start, length)
        words.setflags(write=False)
        return Window(start=start, length=length, seed=src.seed, expr=expr, words=words)

    total = np.zeros(length, dtype=np.int32)
    for m in expr.members:
        w = product_words(src, m.offsets, start, length)
        bits = unpack_bits(w, length).astype(np.int32)
        total += (bits << 1) - 1
    total.setflags(write=False)
    return Window(start=start, length=length, seed=src.seed, expr=expr, ints=total)


def correlate(a: Window, b: Window) -> CorrelationEstimate:
    """Mean per-sample product of two windows sharing the same frame."""
    if not a.same_frame(b):
        raise ValueError(
            f"window frames differ: [{a.start}, +{a.length}) vs [{b.start}, +{b.length})"
        )
    L = a.length
    if a.words is not None and b.words is not None:
        h = popcount(a.words ^ b.words)
        return CorrelationEstimate.from_sum(L - 2 * h, L)
    if a.words is not None or b.words is not None:
        packed, ints = (a, b) if a.words is not None else (b, a)
        bits = unpack_bits(packed.words, L).astype(np.int64)
        v = ints.ints.astype(np.int64)
        total = 2 * int(bits @ v) - int(v.sum())
        return CorrelationEstimate.from_sum(total, L)
    total = int(a.ints.astype(np.int64) @ b.ints.astype(np.int64))
    return CorrelationEstimate.from_sum(total, L)


def negate(w: Window) -> Window:
    """Pointwise sign flip; provenance is dropped (negation has no
    expression form in the algebra)."""
    if w.words is not None:
        flipped = ~w.words
        flipped[-1] &= _tail_mask(w.length)
        flipped.setflags(write=False)
        return Window(start=w.start, length=w.length, seed=w.seed, expr=None,
                      words=flipped)
    flipped = -w.ints
    flipped.setflags(write=False)
    return Window(start=w.start, length=w.length, seed=w.seed, expr=None,
                  ints=flipped)


# ----------------------------------------------------------------------
# Debug dump format (little-endian throughout):
#   magic   4s   b"NBW1"
#   seed    u64
#   start   u64
#   length  u64
#   kind    u8   0 = packed product bits, 1 = superposition int32 samples
#   elen    u32  byte length of the canonical expression string
#   expr    elen bytes, utf-8 ("" when provenance is unknown)
#   payload kind 0: ceil(length/64) u64 words; kind 1: length i32 values
# ----------------------------------------------------------------------

_MAGIC = b"NBW1"
_HEADER = struct.Struct("<4sQQQBI")


def dump_window(w: Window, fh: BinaryIO) -> None:
    """Write a window to an open binary file."""
    expr_bytes = (canonical_str(w.expr) if w.expr is not None else "").encode()
    kind = 0 if w.words is not None else 1
    fh.write(_HEADER.pack(_MAGIC, w.seed, w.start, w.length, kind, len(expr_bytes)))
    fh.write(expr_bytes)
    if kind == 0:
        fh.write(w.words.astype("<u8").tobytes())
    else:
        fh.write(w.ints.astype("<i4").tobytes())


def load_window(fh: BinaryIO) -> Window:
    """Read a window written by :func:`dump_window`."""
    magic, seed, start, length, kind, elen = _HEADER.unpack(fh.read(_HEADER.size))
    if magic != _MAGIC:
        raise ValueError("not a window dump (bad magic)")
    expr_text = fh.read(elen).decode()
    expr = parse_expr(expr_text) if expr_text else None
    if kind == 0:
        nwords = (length + 63) // 64
        words = np.frombuffer(fh.read(8 * nwords), dtype="<u8").astype(np.uint64)
        words.setflags(write=False)
        return Window(start=start, length=length, seed=seed, expr=expr, words=words)
    ints = np.frombuffer(fh.read(4 * length), dtype="<i4").astype(np.int32)
    ints.setflags(write=False)
    return Window(start=start, length=length, seed=seed, expr=expr, ints=ints)
