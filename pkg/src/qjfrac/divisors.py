"""Divisor-function and sums-of-divisors generating functions built on the
(q, q^2) J-fraction, their single-rational-function approximants, residue
tables modulo an integer, and partial-sum series.

Conventions.  The depth-h convergent C_h(q, z) has [z^n] C_h = (1-q)/(1-q^(n+1))
for n < 2h, so q*C_h(q, q)/(1-q) = sum over m >= 1 of q^m/(1-q^m) + error terms,
i.e. the Lambert series of the divisor function.  The divisor series below is
1 + q*C_h(q,q)/(1-q), whose coefficient at q^n is d(n) inside the accuracy
window (the constant 1 is an artifact of the scaling, and tables start at
n = 1).  For alpha >= 1 the Stirling-number derivative transform

    sum_n n^alpha f_n z^n = sum_j S(alpha, j) z^j F^(j)(z)

is applied to H(z) = z*C_h(q, z) before the substitution z := q; that builds
in the weight n^alpha exactly and needs no shift afterwards.

Coefficients with 1 <= n < h are certified by the convergent accuracy theorem;
those with h <= n < 2h hold by the (everywhere-tested) 2h-window and are
flagged as empirical; anything beyond is untrusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exact import QRationalFn, QSeries
from .jfraction import (
    ConvergentPair,
    JFractionSpec,
    convergent_pairs,
    divisor_spec,
    lambda_modulus,
)
from .stirling import NestedSumSpec, StirlingQTriangle, nested_sum
from .zalgebra import ZPolynomial

_ONE = QRationalFn.one()
_ZERO = QRationalFn.zero()
_Q = QRationalFn.q()


class Stirling2Table:
    """Stirling numbers of the second kind, S(n,k) = k S(n-1,k) + S(n-1,k-1)."""

    def __init__(self, n_max: int):
        rows = [[1]]
        for n in range(1, n_max + 1):
            prev = rows[-1]
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                row[k] = k * (prev[k] if k <= n - 1 else 0) + prev[k - 1]
            rows.append(row)
        self._rows = rows

    def value(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        return self._rows[n][k]

    def row(self, n: int) -> list[int]:
        return list(self._rows[n])


@dataclass(frozen=True)
class DivisorGFRequest:
    """Parameters of one generating-function computation."""

    alpha: int
    h: int
    order: int
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.h < 2:
            raise ValueError("h must be >= 2")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def certified_below(self) -> int:
        """Coefficients 1 <= n < h are theorem-certified."""
        return self.h

    @property
    def empirical_below(self) -> int:
        """Coefficients h <= n < 2h hold on the tested window, flagged empirical."""
        return 2 * self.h


@dataclass(frozen=True)
class GFResult:
    request: DivisorGFRequest
    series: QSeries
    generator: QRationalFn  # the reduced rational function whose expansion is `series`

    def rows(self) -> list[dict]:
        req = self.request
        out = []
        for n in range(1, self.series.order):
            c = self.series[n]
            out.append(
                {
                    "n": n,
                    "value": str(c.numerator) if c.denominator == 1 else str(c),
                    "certified": n < req.certified_below,
                    "empirical": req.certified_below <= n < req.empirical_below,
                }
            )
        return out


def _stirling_derivative_transform(
    num: ZPolynomial, den: ZPolynomial, alpha: int
) -> tuple[ZPolynomial, ZPolynomial]:
    """(N, D) with N/D = sum_j S(alpha,j) z^j d^j/dz^j (num/den), exactly.

    Uses H^(j) = N_j / den^(j+1) with N_{j+1} = N_j' den - (j+1) N_j den',
    so repeated differentiation never squares the denominator."""
    table = Stirling2Table(alpha)
    den_prime = den.derivative()
    N_j = num
    total = ZPolynomial.zero()
    den_pow = [ZPolynomial.one()]
    for _ in range(alpha + 1):
        den_pow.append(den_pow[-1] * den)
    for j in range(alpha + 1):
        s = table.value(alpha, j)
        if s:
            total = total + (N_j * den_pow[alpha - j]).shift(j) * QRationalFn.from_fraction(s)
        if j < alpha:
            N_j = N_j.derivative() * den - (j + 1) * N_j * den_prime
    return total, den_pow[alpha + 1]


def _transform_evaluated_at_q(num: ZPolynomial, den: ZPolynomial, alpha: int) -> QRationalFn:
    """Value of sum_j S(alpha,j) z^j d^j/dz^j (num/den) at z = q.

    The N_j iteration stays polynomial in z (differentiation needs the
    z-structure) but every assembled factor is evaluated at q immediately,
    which avoids the large bivariate products of the naive route."""
    table = Stirling2Table(alpha)
    den_prime = den.derivative()
    den_q = den.evaluate(_Q)
    N_j = num
    total = _ZERO
    for j in range(alpha + 1):
        s = table.value(alpha, j)
        if s:
            total = total + s * QRationalFn.qpow(j) * N_j.evaluate(_Q) * den_q ** (alpha - j)
        if j < alpha:
            N_j = N_j.derivative() * den - (j + 1) * N_j * den_prime
    return total / den_q ** (alpha + 1)


_generator_cache: dict[tuple[int, int], QRationalFn] = {}


def _generator(req: DivisorGFRequest, pair: ConvergentPair) -> QRationalFn:
    """The reduced one-variable generating function for the request."""
    key = (req.alpha, req.h)
    cached = _generator_cache.get(key)
    if cached is not None:
        return cached
    if req.alpha == 0:
        conv_q = pair.P.evaluate(_Q) / pair.Q.evaluate(_Q)
        gen = _ONE + _Q * conv_q / (_ONE - _Q)
    else:
        value = _transform_evaluated_at_q(pair.P.shift(1), pair.Q, req.alpha)
        gen = value / (_ONE - _Q)
    _generator_cache[key] = gen
    return gen


def divisor_gf(req: DivisorGFRequest) -> GFResult:
    """Divisor-count series: [q^n] = d(n) for 1 <= n inside the window, constant 1."""
    if req.alpha != 0:
        raise ValueError("divisor_gf is the alpha = 0 case; use sigma_gf")
    pair = convergent_pairs(divisor_spec(), req.h)[req.h]
    gen = _generator(req, pair)
    return GFResult(req, gen.taylor(req.order), gen)


def sigma_gf(req: DivisorGFRequest) -> GFResult:
    """Sums-of-divisors series: [q^n] = sigma_alpha(n) inside the window, [q^0] = 0."""
    if req.alpha < 1:
        raise ValueError("sigma_gf requires alpha >= 1; use divisor_gf")
    pair = convergent_pairs(divisor_spec(), req.h)[req.h]
    gen = _generator(req, pair)
    return GFResult(req, gen.taylor(req.order), gen)


def generating_series(req: DivisorGFRequest) -> GFResult:
    return divisor_gf(req) if req.alpha == 0 else sigma_gf(req)


def rational_approximant(req: DivisorGFRequest) -> QRationalFn:
    """Single reduced rational function in q whose expansion is the request's series."""
    pair = convergent_pairs(divisor_spec(), req.h)[req.h]
    return _generator(req, pair)


def partial_sums(req: DivisorGFRequest) -> GFResult:
    """Running totals: [q^x] = sum_{n <= x} sigma_alpha(n) inside the window.

    One extra 1/(1-q) factor over the plain series; the alpha = 0 case drops
    the constant-1 artifact first so that [q^0] = 0."""
    pair = convergent_pairs(divisor_spec(), req.h)[req.h]
    gen = _generator(req, pair)
    if req.alpha == 0:
        gen = gen - _ONE
    gen = gen / (_ONE - _Q)
    return GFResult(req, gen.taylor(req.order), gen)


def congruence_table(req: DivisorGFRequest) -> list[dict]:
    """Rows of sigma_alpha(n) mod p (or d(n) mod p) over the request window.

    A coefficient whose reduced denominator is divisible by p cannot be read
    modulo p; such rows are flagged and keep the exact rational instead."""
    if req.modulus is None:
        raise ValueError("congruence_table requires a modulus")
    p = req.modulus
    result = generating_series(req)
    rows = []
    for n in range(1, result.series.order):
        c = result.series[n]
        row = {
            "n": n,
            "certified": n < req.certified_below,
            "empirical": req.certified_below <= n < req.empirical_below,
        }
        if c.denominator % p == 0:
            row["residue"] = None
            row["exact"] = str(c)
            row["flagged"] = True
        else:
            inv = pow(c.denominator, -1, p)
            row["residue"] = (c.numerator * inv) % p
            row["flagged"] = False
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# the quadruple-sum block and its comparison against Q_j Q_{j+1}
# ---------------------------------------------------------------------------


@dataclass
class TildeDReport:
    """Comparison of the tabulated quadruple-sum denominator block against the
    product Q_j(q,z) Q_{j+1}(q,z) computed from the recurrence.

    `proportional_factor` is set when the two differ by a z-independent
    rational function of q only (measured, not asserted)."""

    j: int
    quad_sum: ZPolynomial
    product: ZPolynomial
    equal: bool
    residual: ZPolynomial
    proportional_factor: Optional[QRationalFn]

    def to_json(self) -> dict:
        return {
            "schema": "qjfrac/tilde-d/1",
            "j": self.j,
            "equal": self.equal,
            "proportional_factor": (
                str(self.proportional_factor) if self.proportional_factor is not None else None
            ),
            "quad_sum_degree": self.quad_sum.degree,
            "product_degree": self.product.degree,
        }


def tilde_D0j(j: int, spec: Optional[JFractionSpec] = None) -> TildeDReport:
    """Evaluate the four printed sum blocks verbatim and compare with Q_j Q_{j+1}.

    Block 1 pairs entries along the anti-diagonal sum(2j); blocks 2-4 weight
    triangle entries by series coefficients of the nested sums.  The display
    is internally garbled (the comparison documents how far it lands from the
    denominator block it is said to restate), so this is a measurement, never
    an assertion."""
    if j < 1:
        raise ValueError("j must be >= 1")
    if spec is None:
        spec = divisor_spec()
    tri = StirlingQTriangle.from_spec(spec, j + 1)
    order = 2 * j + 2

    def s_series(h: int, m: int, s: int):
        return nested_sum(spec, NestedSumSpec(h, m, s)).series(order)

    coeffs = [_ZERO] * (2 * j + 2)

    # block 1: sum_{n=0}^{2j} entry(j+1, n) entry(j, 2j-n) z^n
    for n in range(0, 2 * j + 1):
        coeffs[n] = coeffs[n] + tri.entry(j + 1, n) * tri.entry(j, 2 * j - n)

    # block 2: double-(m, s, k) cross terms
    for n in range(0, 2 * j + 2):
        acc = _ZERO
        for m1 in range(1, j // 2 + 1):
            for m2 in range(1, (j + 1) // 2 + 1):
                for s1 in range(1, m1 * j + 1):
                    ser1 = s_series(j, m1, s1)
                    for s2 in range(1, m2 * (j + 1) + 1):
                        ser2 = s_series(j + 1, m2, s2)
                        for k1 in range(1, s1 + 1):
                            if not (0 <= k1 - 2 * m1 < order):
                                continue
                            c1 = ser1[k1 - 2 * m1]
                            if c1.is_zero():
                                continue
                            e1 = tri.entry(j, 2 * j + 1 - n - k1)
                            if e1.is_zero():
                                continue
                            for k2 in range(1, s2 + 1):
                                if not (0 <= k2 - 2 * m2 < order):
                                    continue
                                c2 = ser2[k2 - 2 * m2]
                                if c2.is_zero():
                                    continue
                                e2 = tri.entry(j + 1, n - k2)
                                if e2.is_zero():
                                    continue
                                term = e2 * e1 * c1 * c2
                                acc = acc + term if (m1 + m2) % 2 == 0 else acc - term
        coeffs[n] = coeffs[n] + acc

    # block 3: entry(j+1, n-k) entry(j, 2j+1-n) against S_{j+1,m,s}
    for n in range(0, 2 * j + 2):
        e_fix = tri.entry(j, 2 * j + 1 - n)
        if e_fix.is_zero():
            continue
        acc = _ZERO
        for m in range(1, (j + 1) // 2 + 1):
            for s in range(0, m * (j + 1) + 1):
                ser = s_series(j + 1, m, s)
                for k in range(0, s + 1):
                    if not (0 <= k - 2 * m < order):
                        continue
                    c = ser[k - 2 * m]
                    if c.is_zero():
                        continue
                    term = tri.entry(j + 1, n - k) * c
                    acc = acc + term if m % 2 == 0 else acc - term
        coeffs[n] = coeffs[n] + e_fix * acc

    # block 4: entry(j, n-k) entry(j+1, 2j+1-n) against S_{j,m,s}
    for n in range(0, 2 * j + 2):
        e_fix = tri.entry(j + 1, 2 * j + 1 - n)
        if e_fix.is_zero():
            continue
        acc = _ZERO
        for m in range(1, j // 2 + 1):
            for s in range(0, m * j + 1):
                ser = s_series(j, m, s)
                for k in range(0, s + 1):
                    if not (0 <= k - 2 * m < order):
                        continue
                    c = ser[k - 2 * m]
                    if c.is_zero():
                        continue
                    term = tri.entry(j, n - k) * c
                    acc = acc + term if m % 2 == 0 else acc - term
        coeffs[n] = coeffs[n] + e_fix * acc

    quad = ZPolynomial(coeffs)
    pairs = convergent_pairs(spec, j + 1)
    product = pairs[j].Q * pairs[j + 1].Q
    residual = quad - product
    factor: Optional[QRationalFn] = None
    if not quad.is_zero() and not product.is_zero():
        # z-independent ratio iff quad == r * product with r from any nonzero column
        for k in range(max(quad.degree, product.degree) + 1):
            pk = product.coefficient(k)
            if not pk.is_zero():
                r = quad.coefficient(k) / pk
                if quad == product * r:
                    factor = r
                break
    return TildeDReport(j, quad, product, residual.is_zero(), residual, factor)


# ---------------------------------------------------------------------------
# explicit low-order sums-of-divisors realizations (cross-check paths)
# ---------------------------------------------------------------------------


@dataclass
class SpecialCaseReport:
    """Cross-check of sigma_gf against the telescoped convergent-block sum and
    against the verbatim printed special-case realization.

    The telescoped path rewrites z*C_h as sum_i lambda_i z^(2i-1)/(Q_{i-1}Q_i)
    and differentiates termwise; it is algebraically identical to sigma_gf and
    its residual must vanish.  The printed path evaluates the tabulated
    special-case display (with its own leading term and coefficient set) and
    is reported as-is."""

    alpha: int
    h: int
    order: int
    primary: QSeries
    telescoped: QSeries
    printed: QSeries
    telescoped_residual_zero: bool
    printed_residual: QSeries

    def to_json(self) -> dict:
        return {
            "schema": "qjfrac/sigma-special-case/1",
            "alpha": self.alpha,
            "h": self.h,
            "order": self.order,
            "telescoped_residual_zero": self.telescoped_residual_zero,
            "printed_residual": [str(c) for c in self.printed_residual],
        }


def _poch_step(x: QRationalFn, step: QRationalFn, n: int) -> QRationalFn:
    acc = _ONE
    xs = x
    for _ in range(n):
        acc = acc * (_ONE - xs)
        xs = xs * step
    return acc


def _printed_block_coefficient(j: int) -> QRationalFn:
    """q * q^(j^2) (q;q)_j^4 / ((q;q^2)_j^2 (q^2;q^2)_j^2), the tabulated weight."""
    q2 = _Q * _Q
    num = _Q * QRationalFn.qpow(j * j) * _poch_step(_Q, _Q, j) ** 4
    den = _poch_step(_Q, q2, j) ** 2 * _poch_step(q2, q2, j) ** 2
    return num / den


def sigma_special_case_check(alpha: int, h: int, order: Optional[int] = None) -> SpecialCaseReport:
    """Compare the alpha in {1,2} sums-of-divisors series along three routes.

    primary    : sigma_gf (transform of z*C_h as one rational function)
    telescoped : termwise transform of lambda_i z^(2i-1)/((1-q) Q_{i-1} Q_i)
    printed    : the tabulated explicit display, with G_j realized as the
                 recurrence product Q_j Q_{j+1} (the quadruple-sum realization
                 is measured separately by tilde_D0j)
    """
    if alpha not in (1, 2):
        raise ValueError("explicit displays exist for alpha in {1, 2} only")
    if order is None:
        order = h + 1
    req = DivisorGFRequest(alpha, h, order)
    primary = sigma_gf(req).series

    spec = divisor_spec()
    pairs = convergent_pairs(spec, h)
    one_minus_q = _ONE - _Q

    telescoped = QSeries.zero(order)
    for i in range(1, h + 1):
        lam = lambda_modulus(spec, i)
        G = pairs[i - 1].Q * pairs[i].Q
        val = _transform_evaluated_at_q(ZPolynomial.monomial(2 * i - 1, lam), G, alpha)
        telescoped = telescoped + (val / one_minus_q).taylor(order)

    printed = QSeries.zero(order)
    if alpha == 1:
        lead = _Q * _Q * (_ONE + _Q) / one_minus_q
    else:
        lead = _Q * _Q * (_ONE + _Q) * (_ONE + 2 * _Q) / one_minus_q
    printed = printed + lead.taylor(order)
    for j in range(1, h):
        Gpoly = pairs[j].Q * pairs[j + 1].Q
        Gq = Gpoly.evaluate(_Q)
        Gp = Gpoly.derivative().evaluate(_Q)
        coeff = _printed_block_coefficient(j)
        if alpha == 1:
            inner = (2 * j) * QRationalFn.qpow(2 * j) / Gq - QRationalFn.qpow(2 * j + 1) * Gp / Gq ** 2
        else:
            Gpp = Gpoly.derivative().derivative().evaluate(_Q)
            inner = (
                (4 * j * j) * QRationalFn.qpow(2 * j) / Gq
                - (4 * j + 1) * QRationalFn.qpow(2 * j + 1) * Gp / Gq ** 2
                - QRationalFn.qpow(2 * j + 1) * (Gq * Gpp - 2 * Gp ** 2) / Gq ** 3
            )
        printed = printed + (coeff * inner).taylor(order)

    return SpecialCaseReport(
        alpha,
        h,
        order,
        primary,
        telescoped,
        printed,
        (primary - telescoped) == QSeries.zero(order),
        primary - printed,
    )
