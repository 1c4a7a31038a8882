"""High-precision numeric checks of the continued-fraction convergence claims
for the divisor-generating J-fraction: elementwise margin tests against the
classical |b_h| >= |a_h| + 1 sufficient criterion, the numeric threshold
radius where the governing inequality flips, and direct convergent-vs-target
probes.

These are diagnostics at extended precision (default 128 bits, configurable
through QJFRAC_PRECISION_BITS), not interval-arithmetic proofs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

_B_READING_NOTE = (
    "partial-denominator display read with the adjacent 'q^i q^(i+1)' taken as "
    "the product q^(2i+1)"
)


def precision_bits() -> int:
    """Working precision in bits; >= 64 fractional bits are always kept."""
    raw = os.environ.get("QJFRAC_PRECISION_BITS", "128")
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"QJFRAC_PRECISION_BITS must be an integer, got {raw!r}") from exc
    return max(bits, 64)


class _prec:
    """Temporarily pin mpmath precision."""

    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        self.saved = mp.prec
        mp.prec = self.bits

    def __exit__(self, *exc):
        mp.prec = self.saved


def _cseq(q: mpc, i: int) -> mpc:
    """c_i of the divisor spec, numerically: 2 q^(i-1) / ((1+q^(i-1))(1+q^i)); c_1 = 1/(1+q)."""
    if i == 1:
        return 1 / (1 + q)
    return 2 * q ** (i - 1) / ((1 + q ** (i - 1)) * (1 + q ** i))


def _abseq(q: mpc, i: int) -> mpc:
    """ab_i of the divisor spec, numerically:
    q^(2i-3) (1-q^(i-1))^4 / ((1-q^(2i-3)) (1-q^(2i-2))^2 (1-q^(2i-1)))."""
    return (
        q ** (2 * i - 3)
        * (1 - q ** (i - 1)) ** 4
        / ((1 - q ** (2 * i - 3)) * (1 - q ** (2 * i - 2)) ** 2 * (1 - q ** (2 * i - 1)))
    )


@dataclass
class PringsheimRow:
    h: int
    abs_a: float
    abs_b: float
    margin: float  # |b_h| - |a_h| - 1


@dataclass
class PringsheimReport:
    """Per-level margins of the elementwise convergence criterion at z = q."""

    q: complex
    z: complex
    precision_bits: int
    reading_note: str
    rows: list[PringsheimRow] = field(default_factory=list)

    def min_margin(self) -> float:
        return min(r.margin for r in self.rows)

    def all_positive(self) -> bool:
        return all(r.margin > 0 for r in self.rows)

    def to_json(self) -> dict:
        return {
            "schema": "qjfrac/pringsheim/1",
            "q": [float(self.q.real), float(self.q.imag)],
            "z": [float(self.z.real), float(self.z.imag)],
            "precision_bits": self.precision_bits,
            "reading_note": self.reading_note,
            "rows": [
                {"h": r.h, "abs_a": r.abs_a, "abs_b": r.abs_b, "margin": r.margin}
                for r in self.rows
            ],
        }


def pringsheim_margins(q: complex, h_max: int = 100) -> PringsheimReport:
    """Evaluate the displayed a_h, b_h with z = q and report |b_h| - |a_h| - 1.

    a_h = z^2 q^(2h-3) (1-q^(h-1))^4
          / ((1-q^(2h-3)) (1-q^(2h-2))^2 (1-q^(2h-1)))
    b_h = (1 + q^(h-1)(2q + q^(2h) + q^(h+2)) - q^(h-1)(q^(2h+1) + q^2 + q^3))
          / ((1-q^(2h-2)) (1-q^(2h)))

    The level h = 1 partial term is degenerate (0/0); rows start at h = 2."""
    if h_max < 2:
        raise ValueError("h_max must be >= 2")
    if abs(q) >= 1 or q == 0:
        raise ValueError("need 0 < |q| < 1")
    # margins at level h decay like |q|^(2h-2); keep enough bits to resolve them
    import math

    needed = int(2 * h_max * math.log2(1 / abs(q))) + 64
    bits = max(precision_bits(), needed)
    with _prec(bits):
        qq = mpc(q)
        z = qq
        report = PringsheimReport(complex(qq), complex(z), bits, _B_READING_NOTE)
        for h in range(2, h_max + 1):
            a_h = (
                z ** 2
                * qq ** (2 * h - 3)
                * (1 - qq ** (h - 1)) ** 4
                / ((1 - qq ** (2 * h - 3)) * (1 - qq ** (2 * h - 2)) ** 2 * (1 - qq ** (2 * h - 1)))
            )
            b_num = (
                1
                + qq ** (h - 1) * (2 * qq + qq ** (2 * h) + qq ** (h + 2))
                - qq ** (h - 1) * (qq ** (2 * h + 1) + qq ** 2 + qq ** 3)
            )
            b_h = b_num / ((1 - qq ** (2 * h - 2)) * (1 - qq ** (2 * h)))
            # the margin must be formed at working precision; at float precision
            # |b_h| - 1 underflows to zero for moderate h already
            margin = abs(b_h) - abs(a_h) - 1
            report.rows.append(PringsheimRow(h, float(abs(a_h)), float(abs(b_h)), float(margin)))
    return report


def threshold_inequality_gap(t: float) -> float:
    """LHS - RHS of the governing inequality

        (1-t)^2/(1+t^2)  >=  sqrt(((1-t)^4 + t^2 (1+t)^2) / (1+t+t^2+t^3)),

    positive inside the provable region."""
    with _prec(precision_bits()):
        tt = mpf(t)
        lhs = (1 - tt) ** 2 / (1 + tt ** 2)
        rhs = mpmath.sqrt(((1 - tt) ** 4 + tt ** 2 * (1 + tt) ** 2) / (1 + tt + tt ** 2 + tt ** 3))
        return float(lhs - rhs)


def threshold_radius(tolerance: float = 1e-10) -> float:
    """Bisection root of the governing inequality on (0, 1); near 0.206783.

    The gap vanishes at t = 0 as well, so the bracket is located by scanning
    for the interior sign change; a missing sign change signals a
    transcription bug and raises."""
    if tolerance <= 0:
        raise ValueError("tolerance must be > 0")
    lo, hi = None, None
    prev_t, prev_g = None, None
    steps = 400
    for k in range(1, steps + 1):
        t = 0.001 + (0.999 - 0.001) * k / steps
        g = threshold_inequality_gap(t)
        if prev_t is not None and prev_g > 0 >= g:
            lo, hi = prev_t, t
            break
        prev_t, prev_g = t, g
    if lo is None:
        raise ArithmeticError("no sign change found for the threshold inequality")
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if threshold_inequality_gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass
class ProbeRow:
    h: int
    convergent: complex
    gap: float  # |Conv_h - direct sum|
    overflow: bool = False


@dataclass
class ProbeReport:
    q: complex
    z: complex
    target: complex
    precision_bits: int
    rows: list[ProbeRow] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": "qjfrac/converge-probe/1",
            "q": [float(self.q.real), float(self.q.imag)],
            "z": [float(self.z.real), float(self.z.imag)],
            "target": [float(self.target.real), float(self.target.imag)],
            "precision_bits": self.precision_bits,
            "rows": [
                {"h": r.h, "gap": r.gap, "overflow": r.overflow} for r in self.rows
            ],
        }


def _direct_sum(q: mpc, z: mpc) -> mpc:
    """(1-q) * sum_{n >= 0} z^n/(1-q^(n+1a)) to numerically negligible tail."""
    total = mpc(0)
    zn = mpc(1)
    eps = mpf(2) ** (-mp.prec - 8)
    n = 0
    while True:
        total += zn / (1 - q ** (n + 1))
        zn *= z
        n += 1
        if abs(zn) / (1 - abs(z)) < eps * max(abs(total), 1) and n > 4:
            break
        if n > 100000:
            break
    return (1 - q) * total


def numeric_convergence_probe(q: complex, z: complex, h_max: int = 20) -> ProbeReport:
    """Backward-recurrence evaluation of each convergent against the direct sum.

    Conv_h = 1/(1 - c_1 z - t_2) with t_i = ab_i z^2 / (1 - c_i z - t_{i+1});
    the gap |Conv_h - target| is reported per level, and is expected to fall
    monotonically to zero inside the provable radius."""
    if abs(q) >= 1 or abs(z) >= 1:
        raise ValueError("need |q| < 1 and |z| < 1")
    bits = precision_bits()
    with _prec(bits):
        qq, zz = mpc(q), mpc(z)
        target = _direct_sum(qq, zz) if q != 0 else mpc(1) / (1 - zz) * (1 - qq)
        report = ProbeReport(complex(qq), complex(zz), complex(target), bits)
        for h in range(1, h_max + 1):
            tail = mpc(0)
            overflow = False
            try:
                for i in range(h, 1, -1):
                    tail = _abseq(qq, i) * zz ** 2 / (1 - _cseq(qq, i) * zz - tail)
                conv = 1 / (1 - _cseq(qq, 1) * zz - tail)
                gap = float(abs(conv - target))
            except (ZeroDivisionError, OverflowError):
                conv, gap, overflow = mpc(0), float("inf"), True
            report.rows.append(ProbeRow(h, complex(conv), gap, overflow))
    return report
