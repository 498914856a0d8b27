"""Time-shift demonstrations: holographic readout, gate non-commutation,
and restoration under fixed random shifts.

Shifting a whole superposition moves every carrier offset up the
reference ladder, so decoding against the *unshifted* references reads
out systematically remapped strings (or nothing, when a carrier slides
off the ladder or two of its factors land on the same noise bit).
Interleaving a shift with a reference multiplication makes the two gate
operations non-commuting.  Hiding each reference behind a private
random shift keeps it recoverable only by whoever knows that shift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .expr import Product, canonical_str, multiply, shift
from .hyperspace import (
    DEFAULT_MAX_N,
    DEFAULT_THRESHOLD,
    BitString,
    check_bits,
    correlation_sweep,
    decode_superposition,
    default_window_len,
    encode_set,
    format_bits,
    int_to_bits,
)
from .reference import ReferenceSystem
from .window import correlate, materialize


@dataclass(frozen=True)
class OutOfRange:
    """Image of a shifted string that is no longer a full product string.

    ``ladder-overflow``: an offset moved past the last reference.
    ``bit-collision``: two offsets landed on the same noise bit.
    """

    reason: str


def holographic_map(bits: Sequence[int], steps: int = 1) -> BitString | OutOfRange:
    """Re-interpretation of a string's carrier after a whole-signal shift.

    Works directly on the carrier offsets (each moves up by ``steps``),
    which is the ground truth of the signal algebra; for full product
    strings this agrees with iterating the single-period map.
    """
    s = check_bits(bits)
    steps = int(steps)
    if steps < 0:
        raise ValueError("shifts are forward-only")
    n = len(s)
    offsets = [2 * i + b + steps for i, b in enumerate(s)]
    if offsets and max(offsets) > 2 * n - 1:
        return OutOfRange("ladder-overflow")
    slots = [o // 2 for o in offsets]
    if len(set(slots)) != n:
        return OutOfRange("bit-collision")
    out = [0] * n
    for o in offsets:
        out[o // 2] = o % 2
    return tuple(out)


def holographic_demo(sys: ReferenceSystem, strings: Sequence[Sequence[int]],
                     d: int, length: int | None = None, start: int = 0,
                     threshold: float = DEFAULT_THRESHOLD,
                     max_n: int = DEFAULT_MAX_N) -> dict:
    """Shift an encoded set by d periods and decode it against the
    unshifted references; the decode must equal the in-range images."""
    checked = [check_bits(s, sys.n_eff) for s in strings]
    if length is None:
        length = default_window_len(len(checked))
    signal = encode_set(sys, checked)
    window = materialize(sys.source, shift(signal, d), start, length)
    decoded = decode_superposition(window, sys, threshold=threshold, max_n=max_n)

    expected: set[BitString] = set()
    out_of_range: list[dict] = []
    for s in checked:
        image = holographic_map(s, d)
        if isinstance(image, OutOfRange):
            out_of_range.append({"string": format_bits(s), "reason": image.reason})
        else:
            expected.add(image)

    report = {
        "seed": sys.seed,
        "N": sys.n_bits,
        "k": sys.extra_shift_rounds,
        "d": d,
        "L": length,
        "threshold": threshold,
        "input": sorted(format_bits(s) for s in checked),
        "expected": sorted(format_bits(s) for s in expected),
        "decoded": sorted(format_bits(s) for s in decoded),
        "out_of_range": out_of_range,
        "ok": decoded == expected,
    }
    if sys.n_eff <= 10:
        rhos = correlation_sweep(window, sys, max_n=max_n)
        report["correlations"] = [
            {"candidate": format_bits(int_to_bits(v, sys.n_eff)), "rho": float(r)}
            for v, r in enumerate(rhos)
        ]
    return report


def noncommute_demo(sys: ReferenceSystem, x: Product, i: int, b: int, d: int,
                    length: int, start: int = 0) -> dict:
    """Compare multiply-then-shift against shift-then-multiply.

    A = multiply by reference (i, b); B = shift by d.  The two orders
    give canonically different streams whenever d >= 1, and their
    cross-correlation sits at noise level while each self-correlation
    is exactly 1.
    """
    if d < 1:
        raise ValueError("need a shift of at least one period")
    ref = sys.reference_noise(i, b)
    ab = multiply(shift(x, d), ref)        # A after B
    ba = shift(multiply(x, ref), d)        # B after A
    w_ab = materialize(sys.source, ab, start, length)
    w_ba = materialize(sys.source, ba, start, length)
    cross = correlate(w_ab, w_ba)
    tolerance = 5.0 * cross.sigma
    self_ab = correlate(w_ab, w_ab).rho
    self_ba = correlate(w_ba, w_ba).rho
    equal = ab == ba
    return {
        "seed": sys.seed,
        "N": sys.n_bits,
        "k": sys.extra_shift_rounds,
        "i": i,
        "b": b,
        "d": d,
        "L": length,
        "x": canonical_str(x),
        "ab": canonical_str(ab),
        "ba": canonical_str(ba),
        "structurally_equal": equal,
        "cross_rho": cross.rho,
        "self_rho_ab": self_ab,
        "self_rho_ba": self_ba,
        "tolerance": tolerance,
        "ok": (not equal) and abs(cross.rho) <= tolerance
              and self_ab == 1.0 and self_ba == 1.0,
    }


@dataclass(frozen=True)
class ShiftAssignment:
    """Fixed random shift per reference, drawn once per experiment."""

    shifts: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        for (i, b), r in self.shifts.items():
            if r < 0:
                raise ValueError(f"shift for ({i},{b}) must be >= 0, got {r}")

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.shifts[key]

    @classmethod
    def draw(cls, sys: ReferenceSystem, seed: int, r_max: int | None = None,
             distinct: bool = False) -> "ShiftAssignment":
        """Draw one shift in [1, r_max] per reference.

        r_max defaults to 2 * n_eff, which both guarantees shifted
        references leave the ladder and makes ``distinct`` drawable.
        """
        keys = [(i, b) for i in range(1, sys.n_eff + 1) for b in (0, 1)]
        if r_max is None:
            r_max = 2 * sys.n_eff
        if r_max < 1:
            raise ValueError(f"r_max must be >= 1, got {r_max}")
        rng = random.Random(seed)
        if distinct:
            if r_max < len(keys):
                raise ValueError(
                    f"cannot draw {len(keys)} distinct shifts from [1, {r_max}]"
                )
            values = rng.sample(range(1, r_max + 1), len(keys))
        else:
            values = [rng.randint(1, r_max) for _ in keys]
        return cls(dict(zip(keys, values)))


def random_shift_demo(sys: ReferenceSystem, assignment: ShiftAssignment,
                      i: int, b: int, length: int, start: int = 0,
                      global_shift: int | None = None) -> dict:
    """Hide reference (i, b) behind its assigned shift and try to read it.

    Without the shift value the hidden stream looks like fresh noise;
    compensating with the true value restores it exactly; compensating
    every reference with one global guess restores only those whose
    assigned shift happens to equal the guess.
    """
    r = assignment[(i, b)]
    ref = sys.reference_noise(i, b)
    hidden = shift(ref, r)
    w_hidden = materialize(sys.source, hidden, start, length)
    uncompensated = correlate(w_hidden, materialize(sys.source, ref, start, length))
    compensated_expr = shift(ref, r)
    compensated = correlate(w_hidden,
                            materialize(sys.source, compensated_expr, start, length))

    d = r if global_shift is None else int(global_shift)
    restored = []
    for j in range(1, sys.n_eff + 1):
        for c in (0, 1):
            if assignment[(j, c)] == d:
                restored.append(f"V_{j}_{c}")

    sigma = 1.0 / length ** 0.5
    uncomp_ok = (uncompensated.rho == 1.0) if r == 0 else \
        abs(uncompensated.rho) <= 5.0 * sigma
    return {
        "seed": sys.seed,
        "N": sys.n_bits,
        "k": sys.extra_shift_rounds,
        "i": i,
        "b": b,
        "r": r,
        "L": length,
        "assignment": {f"V_{j}_{c}": assignment[(j, c)]
                       for j in range(1, sys.n_eff + 1) for c in (0, 1)},
        "uncompensated_rho": uncompensated.rho,
        "compensated_rho": compensated.rho,
        "compensated_exact": compensated.rho == 1.0
                             and compensated_expr == hidden,
        "global_shift": d,
        "restored": restored,
        "restored_count": len(restored),
        "ok": uncomp_ok and compensated.rho == 1.0,
    }
