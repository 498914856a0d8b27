"""Encoding sets of classical bit strings on one wire, and reading back.

A string of length n_eff picks, for every noise bit i, the reference
carrying its bit value; the product of those references is the string's
carrier.  A set of strings rides the wire as the integer superposition
of its carriers.  Readout correlates the wire window against candidate
carriers: members average near 1, non-members near 0, and a threshold
midway between the two expectations decides membership.

Readout is a brute-force sweep over all 2**n_eff candidates.  The cost
is exponential by design and therefore capped (``max_n``); raising the
cap is an explicit opt-in.  The sweep runs entirely on packed words:
candidate carriers are XOR combinations of the reference bit arrays,
and the signal's integer window is split into packed bitplanes so each
candidate correlation is a handful of AND + popcount passes, exact in
integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .expr import Product, Superposition, member_count, superpose
from .reference import ReferenceSystem, build_reference_system
from .window import Window, correlate, materialize, pack_bits, product_words

#: Classical bit strings are plain tuples of 0/1 ints.
BitString = tuple[int, ...]

#: Default cap on the candidate sweep (2**max_n candidates).
DEFAULT_MAX_N = 14

#: Default membership threshold: midpoint of the member expectation (1)
#: and the non-member expectation (0).
DEFAULT_THRESHOLD = 0.5

# Sweep working-set bound, in 64-bit words per candidate chunk.
_CHUNK_WORDS = 1 << 23


def check_bits(bits: Sequence[int], n_eff: int | None = None) -> BitString:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"bit values must be 0 or 1, got {bits!r}")
    if n_eff is not None and len(out) != n_eff:
        raise ValueError(f"expected {n_eff} bits, got {len(out)}")
    return out


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in bits)


def parse_bits(text: str) -> BitString:
    if not all(c in "01" for c in text):
        raise ValueError(f"bit string must contain only 0 and 1, got {text!r}")
    return tuple(int(c) for c in text)


def int_to_bits(value: int, width: int) -> BitString:
    """Binary digits of ``value``, least significant bit first."""
    if not 0 <= value < (1 << width):
        raise ValueError(f"value {value} out of range for {width} bits")
    return tuple((value >> i) & 1 for i in range(width))


def bits_to_int(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def encode_string(sys: ReferenceSystem, bits: Sequence[int]) -> Product:
    """Carrier product of one bit string: reference (i, bits[i]) per bit."""
    s = check_bits(bits, sys.n_eff)
    return Product(tuple(2 * i + b for i, b in enumerate(s)))


def product_to_string(p: Product) -> BitString:
    """Inverse of :func:`encode_string`; rejects partial or clashing carriers."""
    n = len(p.offsets)
    out = [-1] * n
    for o in p.offsets:
        slot, b = divmod(o, 2)
        if slot >= n or out[slot] != -1:
            raise ValueError(f"{p} is not a full product-string carrier")
        out[slot] = b
    return tuple(out)


def encode_integer(sys: ReferenceSystem, value: int) -> Product:
    """Carrier of an integer, bit i of the value on noise bit i + 1."""
    return encode_string(sys, int_to_bits(value, sys.n_eff))


def decode_integer(p: Product) -> int:
    return bits_to_int(product_to_string(p))


def encode_set(sys: ReferenceSystem, strings: Iterable[Sequence[int]]) -> Superposition:
    """Superposition of the carriers of a set of strings; empty set is
    the zero signal.  Members are stored sorted for reproducibility;
    duplicate strings are rejected."""
    checked = [check_bits(s, sys.n_eff) for s in strings]
    carriers = sorted((encode_string(sys, s) for s in checked),
                      key=lambda p: p.offsets)
    return superpose(carriers)


def default_window_len(m: int) -> int:
    """Window length policy: 5 sigma of an m-member readout stays below
    0.25, half the threshold margin.  max(10**4, 400 * (m - 1))."""
    return max(10_000, 400 * (max(m, 1) - 1))


@dataclass(frozen=True)
class DetectionResult:
    """Membership verdict for one candidate string."""

    rho: float
    threshold: float
    present: bool
    sigma_bound: float


def _signal_members(window: Window) -> int:
    if window.expr is not None:
        return member_count(window.expr)
    if window.ints is not None and window.ints.size:
        return int(np.abs(window.ints).max())  # lower bound when provenance lost
    return 1


def _check_same_source(signal_window: Window, sys: ReferenceSystem) -> None:
    if signal_window.seed != sys.seed:
        raise ValueError(
            f"window comes from source seed {signal_window.seed}, "
            f"reference system uses {sys.seed}"
        )


def detect_string(signal_window: Window, sys: ReferenceSystem,
                  bits: Sequence[int],
                  threshold: float = DEFAULT_THRESHOLD) -> DetectionResult:
    """Correlate the wire window against one candidate carrier."""
    _check_same_source(signal_window, sys)
    candidate = materialize(sys.source, encode_string(sys, bits),
                            signal_window.start, signal_window.length)
    est = correlate(signal_window, candidate)
    m = _signal_members(signal_window)
    bound = (max(m - 1, 0) ** 0.5) / (signal_window.length ** 0.5)
    return DetectionResult(rho=est.rho, threshold=threshold,
                           present=est.rho > threshold, sigma_bound=bound)


def correlation_sweep(signal_window: Window, sys: ReferenceSystem,
                      max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    """rho against every candidate carrier, indexed by the candidate's
    integer value (least significant bit on noise bit 1)."""
    n = sys.n_eff
    if n > max_n:
        raise ValueError(
            f"capacity exceeded: raise max_n explicitly (n_eff={n}, max_n={max_n})"
        )
    _check_same_source(signal_window, sys)
    start, length = signal_window.start, signal_window.length
    refs = [product_words(sys.source, (o,), start, length) for o in range(2 * n)]
    nw = refs[0].size

    base = np.zeros(nw, dtype=np.uint64)
    for i in range(n):
        base ^= refs[2 * i]
    if n % 2 == 0:  # even factor count flips the XOR fold's polarity
        base = ~base
        base[-1] &= _pad_mask(length)
    flips = [refs[2 * i] ^ refs[2 * i + 1] for i in range(n)]

    low = n
    while low > 0 and (1 << low) * nw > _CHUNK_WORDS:
        low -= 1
    table = np.zeros((1, nw), dtype=np.uint64)
    for i in range(low):
        table = np.concatenate([table, table ^ flips[i]])

    if signal_window.words is not None:
        sig_words = signal_window.words
        planes, pops, offset = [], [], 0
    else:
        v = signal_window.ints.astype(np.int64)
        offset = int(-v.min()) if v.size and v.min() < 0 else 0
        u = (v + offset).astype(np.uint64)
        nplanes = int(u.max()).bit_length() if u.size else 0
        planes = [pack_bits(((u >> p) & 1).astype(np.uint8)) for p in range(nplanes)]
        pops = [int(np.bitwise_count(pl).sum(dtype=np.int64)) for pl in planes]
        sig_words = None

    rhos = np.empty(1 << n, dtype=np.float64)
    for h in range(1 << (n - low)):
        head = base.copy()
        for j in range(n - low):
            if (h >> j) & 1:
                head ^= flips[low + j]
        chunk = table ^ head  # all candidates with high bits == h
        if sig_words is not None:
            ham = np.bitwise_count(chunk ^ sig_words).sum(axis=1, dtype=np.int64)
            totals = length - 2 * ham
        else:
            totals = np.zeros(chunk.shape[0], dtype=np.int64)
            for p, (plane, pop) in enumerate(zip(planes, pops)):
                inter = np.bitwise_count(chunk & plane).sum(axis=1, dtype=np.int64)
                totals += (1 << p) * (2 * inter - pop)
            if offset:
                ones = np.bitwise_count(chunk).sum(axis=1, dtype=np.int64)
                totals -= offset * (2 * ones - length)
        rhos[h << low:(h + 1) << low] = totals / length
    return rhos


def _pad_mask(length: int) -> np.uint64:
    bits = length % 64
    return np.uint64((1 << bits) - 1) if bits else np.uint64(0xFFFFFFFFFFFFFFFF)


def decode_superposition(signal_window: Window, sys: ReferenceSystem,
                         threshold: float = DEFAULT_THRESHOLD,
                         max_n: int = DEFAULT_MAX_N) -> set[BitString]:
    """All candidate strings whose correlation clears the threshold."""
    rhos = correlation_sweep(signal_window, sys, max_n=max_n)
    return {int_to_bits(v, sys.n_eff) for v in np.nonzero(rhos > threshold)[0]}


def decode_report(signal_window: Window, sys: ReferenceSystem,
                  threshold: float = DEFAULT_THRESHOLD,
                  max_n: int = DEFAULT_MAX_N) -> dict:
    """JSON-ready readout report.

    Keys: seed, N, k, m, L, threshold, detected (sorted "0101" strings)
    and, for n_eff <= 10, the full correlations list.
    """
    rhos = correlation_sweep(signal_window, sys, max_n=max_n)
    detected = sorted(format_bits(int_to_bits(v, sys.n_eff))
                      for v in np.nonzero(rhos > threshold)[0])
    report = {
        "seed": sys.seed,
        "N": sys.n_bits,
        "k": sys.extra_shift_rounds,
        "m": _signal_members(signal_window),
        "L": signal_window.length,
        "threshold": threshold,
        "detected": detected,
    }
    if sys.n_eff <= 10:
        report["correlations"] = [
            {"candidate": format_bits(int_to_bits(v, sys.n_eff)), "rho": float(r)}
            for v, r in enumerate(rhos)
        ]
    return report


def round_trip_run(seed: int, n_bits: int, m_strings: int,
                   length: int | None = None,
                   threshold: float = DEFAULT_THRESHOLD,
                   max_n: int = DEFAULT_MAX_N, start: int = 0,
                   extra_shift_rounds: int = 0) -> dict:
    """Encode m random strings, decode them back, and score the result.

    The string draw and the wire noise both derive from ``seed``, so a
    run is one reproducible experiment.
    """
    sys = build_reference_system(seed, n_bits, extra_shift_rounds)
    if length is None:
        length = default_window_len(m_strings)
    rng = random.Random(seed)
    population = rng.sample(range(1 << sys.n_eff), m_strings)
    strings = {int_to_bits(v, sys.n_eff) for v in population}
    signal = encode_set(sys, strings)
    window = materialize(sys.source, signal, start, length)
    rhos = correlation_sweep(window, sys, max_n=max_n)
    decoded = {int_to_bits(v, sys.n_eff) for v in np.nonzero(rhos > threshold)[0]}

    member_idx = sorted(bits_to_int(s) for s in strings)
    member_rhos = [float(rhos[v]) for v in member_idx]
    mask = np.ones(rhos.size, dtype=bool)
    mask[member_idx] = False
    nonmember_abs_max = float(np.abs(rhos[mask]).max()) if mask.any() else 0.0
    return {
        "seed": seed,
        "N": n_bits,
        "k": extra_shift_rounds,
        "m": m_strings,
        "L": length,
        "threshold": threshold,
        "strings": sorted(format_bits(s) for s in strings),
        "detected": sorted(format_bits(s) for s in decoded),
        "ok": decoded == strings,
        "member_rho_min": min(member_rhos),
        "member_rho_max": max(member_rhos),
        "nonmember_abs_max": nonmember_abs_max,
    }
