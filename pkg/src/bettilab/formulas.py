"""Closed-form Poincare and Hilbert series, and granularity case formulas.

Every function returns an exact ``RationalSeries``/``BiPoly`` or an integer.
Negative powers of z that appear in intermediate expressions are tracked
explicitly and divided out at the end; a failed division raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import NegativePowersRemain, NotPolynomial, NumeratorNotDivisibleByZ
from .series import ONE, Y, Z, BiPoly, RationalSeries, root_multiplicity, univariate

ONE_PLUS_Z = univariate(1, 1)
ONE_MINUS_Z = univariate(1, -1)
ONE_PLUS_YZ = ONE + Y * Z


def _as_poly(p) -> BiPoly:
    if isinstance(p, BiPoly):
        return p
    if isinstance(p, RationalSeries):
        if p.den != ONE or p.y_offset:
            raise NotPolynomial(f"{p.to_text()} is not a polynomial")
        return p.num
    if isinstance(p, int):
        return BiPoly.const(p)
    return BiPoly.from_z_coeffs(p)


def _divide_by_minus_z(p: BiPoly, k: int, err=NotPolynomial) -> BiPoly:
    """Exact p / (-z)^k."""
    if k <= 0:
        return p * (-Z) ** (-k)
    if not p.is_zero() and p.min_z() < k:
        raise err(f"{p.to_text()} is not divisible by z^{k}")
    return p.shift_z(-k) * ((-1) ** k)


def tate_series(dim_r: int, codim_r: int) -> RationalSeries:
    """(1 + z)^dim / (1 - z)^codim."""
    if dim_r < 0 or codim_r < 0:
        raise ValueError("dimension and codimension must be non-negative")
    return RationalSeries(ONE_PLUS_Z ** dim_r, ONE_MINUS_Z ** codim_r)


def graded_ci_pk(e: int, degrees: Sequence[int]) -> RationalSeries:
    """(1 + yz)^e / prod (1 - y^n z^2) for a regular sequence of forms of the given degrees."""
    den = ONE
    for n in degrees:
        if n < 2:
            raise ValueError("relation degrees must be at least 2")
        den = den * (ONE - BiPoly.monomial(n, 2))
    return RationalSeries(ONE_PLUS_YZ ** e, den)


def golod_pk(e: int, p_bi) -> RationalSeries:
    """(1 + yz)^e / (1 - z^2 P), P the Poincare series of the defining ideal over the polynomial ring."""
    return RationalSeries(ONE_PLUS_YZ ** e, ONE - Z * Z * _as_poly(p_bi))


def golod_residue_series(a: int, c: int, d: int, e: int, p_qj) -> RationalSeries:
    """Poincare series of a Golod residue ring S of a complete intersection R.

    ((1+z)^(a+1) (1-z)^a + z^2 P - 1) / (z (1+z)^(c-d+e) (1-z)^c), where P is
    the Poincare series of the defining ideal of S over its regular presentation.
    """
    p = _as_poly(p_qj)
    if not p.is_univariate():
        raise ValueError("expected a univariate P^Q_J")
    num = ONE_PLUS_Z ** (a + 1) * ONE_MINUS_Z ** a + Z * Z * p - ONE
    if not num.is_zero() and num.min_z() < 1:
        raise NumeratorNotDivisibleByZ(f"numerator {num.to_text()} has a nonzero constant term")
    num = num.shift_z(-1)
    k = c - d + e
    den = ONE_MINUS_Z ** c
    if k >= 0:
        den = den * ONE_PLUS_Z ** k
    else:
        num = num * ONE_PLUS_Z ** (-k)
    return RationalSeries(num, den).reduced()


def _binomial_sum(top: int, stop: int, x: BiPoly) -> BiPoly:
    """sum_{i < stop} C(top + i, i) x^i."""
    out, xp = BiPoly(), ONE
    for i in range(stop):
        out = out + xp * comb(top + i, i)
        xp = xp * x
    return out


def adequate_ideal_series(s: int, h: int, e: int) -> BiPoly:
    """Graded Poincare series of the maximal-minor ideal of an adequate s x (s+h-1) matrix.

    Solves (-z)^s P(y, z) = 1 - (1 + yz)^h sum_{i<s} C(h-1+i, i) (-yz)^i.
    """
    if not (1 <= h <= e) or s < 1:
        raise ValueError("need 1 <= h <= e and s >= 1")
    rhs = ONE - ONE_PLUS_YZ ** h * _binomial_sum(h - 1, s, -(Y * Z))
    return _divide_by_minus_z(rhs, s)


def det_power_series(s: int, h: int, e: int) -> BiPoly:
    """z^2 P for J = I(U) + (x)^(s+1) over the polynomial ring, as a polynomial in z."""
    if not (1 <= h <= e) or s < 2:
        raise ValueError("need 1 <= h <= e and s >= 2")
    mz = -Z
    first = _binomial_sum(h - 1, s, mz)
    second = _binomial_sum(e - 1, s + 1, mz) - mz ** s * comb(h - 1 + s, s)
    # everything multiplied by (-z)^(s-1)
    scaled = mz + ONE_PLUS_Z ** (h + 1) * first - ONE_PLUS_Z ** e * second
    out = _divide_by_minus_z(scaled, s - 1)
    if out[(0, 0)] or out[(0, 1)]:
        raise NotPolynomial(f"{out.to_text()} has a nonzero term below z^2")
    return out


def det_poincare(s: int, h: int, e: int) -> BiPoly:
    """P^Q_J itself (det_power_series divided by z^2)."""
    return det_power_series(s, h, e).shift_z(-2)


def _substitute_minus_yz(p: BiPoly) -> BiPoly:
    """t -> -yz for a univariate polynomial in t (stored as z)."""
    return BiPoly({(k, k): c * (-1) ** k for k, c in enumerate(p.univariate_coeffs())})


def _times_one_minus_t_power(h: RationalSeries, e: int, err) -> BiPoly:
    """(1 - t)^e H(t) as a polynomial, H univariate."""
    num = h.num * ONE_MINUS_Z ** e
    den = h.den
    q = num
    for a_c in (-1, 1):
        while True:
            qd = den.divide_linear(0, a_c)
            if qd is None:
                break
            qn = q.divide_linear(0, a_c)
            if qn is None:
                raise err(f"(1 - t)^{e} H(t) is not a polynomial for H = {h.to_text()}")
            q, den = qn, qd
    if den != ONE:
        raise err(f"(1 - t)^{e} H(t) is not a polynomial for H = {h.to_text()}")
    return q


def linear_ideal_series(t: int, e: int, h_i: RationalSeries) -> BiPoly:
    """Graded Poincare series of a t-linear ideal from its Hilbert series H_I."""
    if h_i.num.is_zero():
        return BiPoly()
    k = _times_one_minus_t_power(h_i, e, NegativePowersRemain)
    return _divide_by_minus_z(_substitute_minus_yz(k), t, NegativePowersRemain)


def componentwise_linear_series(e: int, data: Sequence[tuple[int, RationalSeries, RationalSeries, int]]) -> BiPoly:
    """Graded Poincare series of a componentwise linear ideal.

    ``data`` holds, for each degree j where new generators appear, the tuple
    (j, H of B/(I_{j-1}), H of B/(I_j), dim I_{j-1}); here (I_j) is the ideal
    generated by the degree-j component.
    """
    if not data:
        return BiPoly()
    top = max(j for j, *_ in data)
    acc = BiPoly()
    for j, h_prev, h_cur, n_prev in data:
        diff = h_prev - h_cur
        k = _times_one_minus_t_power(diff, e, NegativePowersRemain) if not diff.num.is_zero() else BiPoly()
        term = _substitute_minus_yz(k) + ONE_PLUS_YZ ** e * n_prev * (-(Y * Z)) ** (j - 1)
        acc = acc + term * (-Z) ** (top - j)
    return _divide_by_minus_z(acc, top, NegativePowersRemain)


@dataclass(frozen=True)
class GringParams:
    c: int
    d: int
    e: int
    a: int
    h: int

    def __post_init__(self):
        if self.c > self.d or self.h > self.e or self.a < 0 or self.h < 1 or self.e < 1 or self.c < 0:
            raise ValueError(f"invalid parameters {self}")

    @property
    def case_tag(self) -> str:
        return "HEqualsE" if self.h == self.e else "HAtMostEMinus1"


def gring_granularity(p: GringParams) -> int:
    c, d, e, a, h = p.c, p.d, p.e, p.a, p.h
    if h == e:
        return max(c - d + e - a - 1, 0) if a <= e - 2 else 0
    if a <= h - 1:
        return max(c - d + e - a - 1, 0)
    return max(c - d + e - h - 1, 0)


def granularity_bound(c: int, q: int) -> int:
    if not 0 <= q <= c:
        raise ValueError("need 0 <= q <= c")
    return max(c - q - 1, 0)


def m_invariant_from_series(z2p: BiPoly) -> int:
    """(1+z)-adic multiplicity of z^2 P - 1."""
    return root_multiplicity(z2p - ONE, -1)
