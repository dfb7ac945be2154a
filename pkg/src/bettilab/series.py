"""Exact bivariate polynomials and rational generating functions in (y, z).

Poincare and Hilbert series live here as ``RationalSeries``: a quotient of two
integer polynomials in ``y`` (internal degree) and ``z`` (homological degree)
whose denominator has constant term 1, so it can be expanded as a power series
in ``z`` with polynomial coefficients in ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .errors import (
    DenominatorVanishes,
    FitMismatch,
    NotPlusMinusOnePoles,
    ZeroPolynomial,
)

__all__ = [
    "BiPoly",
    "RationalSeries",
    "QuasiPolynomialPair",
    "Y",
    "Z",
    "ONE",
    "expand",
    "pole_orders",
    "betti_polynomials",
    "root_multiplicity",
    "specialize_y",
    "univariate",
]


class BiPoly:
    """Integer polynomial in ``y`` and ``z`` with canonical (zero-free) terms.

    Terms are keyed by ``(y_exp, z_exp)``.  Instances are immutable and
    hashable; equality is equality of the term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term y^{a} z^{b}")
            c = int(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: int) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, y_exp: int, z_exp: int, coeff: int = 1) -> BiPoly:
        return cls({(y_exp, z_exp): coeff})

    @classmethod
    def from_z_coeffs(cls, coeffs: Iterable[int]) -> BiPoly:
        """Univariate polynomial in z from ascending coefficients."""
        return cls({(0, i): c for i, c in enumerate(coeffs)})

    # basic protocol ---------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._terms.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self):
        return f"BiPoly({self.to_text()!r})"

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly.const(other)
        raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly({k: c * other for k, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structure --------------------------------------------------------

    def z_degree(self) -> int:
        return max((b for _, b in self._terms), default=-1)

    def y_degree(self) -> int:
        return max((a for a, _ in self._terms), default=-1)

    def min_z(self) -> int:
        return min((b for _, b in self._terms), default=-1)

    def is_univariate(self) -> bool:
        return all(a == 0 for a, _ in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0, 0), 0)

    def z_coeffs(self) -> list[dict[int, int]]:
        """Coefficients of z^0..z^deg as sparse polynomials in y."""
        out: list[dict[int, int]] = [dict() for _ in range(self.z_degree() + 1)]
        for (a, b), c in self._terms.items():
            out[b][a] = c
        return out

    def univariate_coeffs(self) -> list[int]:
        """Ascending z-coefficients; requires no y."""
        if not self.is_univariate():
            raise ValueError(f"{self.to_text()} is not univariate in z")
        out = [0] * (self.z_degree() + 1)
        for (_, b), c in self._terms.items():
            out[b] = c
        return out

    def subs_y(self, value: int) -> BiPoly:
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self._terms.items():
            out[(0, b)] = out.get((0, b), 0) + c * value**a
        return BiPoly(out)

    def subs_z_scaled(self, y_power: int, sign: int = 1) -> BiPoly:
        """Substitute z -> sign * y^y_power * z."""
        return BiPoly({(a + y_power * b, b): c * sign**b for (a, b), c in self._terms.items()})

    def shift_z(self, k: int) -> BiPoly:
        """Multiply by z^k; a negative k requires exact divisibility."""
        if k < 0 and self._terms and self.min_z() < -k:
            raise ValueError(f"{self.to_text()} is not divisible by z^{-k}")
        return BiPoly({(a, b + k): c for (a, b), c in self._terms.items()})

    def eval(self, y, z):
        return sum(c * y**a * z**b for (a, b), c in self._terms.items())

    def divide_linear(self, a_y: int, a_c: int) -> BiPoly | None:
        """Exact quotient by ``1 + a_c * y^a_y * z``, or None if it does not divide."""
        if not self._terms:
            return BiPoly()
        coeffs = self.z_coeffs()
        n = len(coeffs) - 1
        if n == 0:
            return None
        q: list[dict[int, int]] = []
        prev: dict[int, int] = {}
        for k in range(n):
            cur = dict(coeffs[k])
            for e, c in prev.items():
                cur[e + a_y] = cur.get(e + a_y, 0) - a_c * c
            cur = {e: c for e, c in cur.items() if c}
            q.append(cur)
            prev = cur
        last = {e + a_y: a_c * c for e, c in prev.items()}
        if last != {e: c for e, c in coeffs[n].items() if c}:
            return None
        return BiPoly({(e, k): c for k, part in enumerate(q) for e, c in part.items()})

    # text -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """``(y_exp, z_exp, coeff)`` sorted by (z_exp, y_exp)."""
        return [(a, b, c) for (a, b), c in sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for a, b, c in self.sorted_terms():
            mono = []
            if a:
                mono.append("y" if a == 1 else f"y^{a}")
            if b:
                mono.append("z" if b == 1 else f"z^{b}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            if not parts:
                parts.append(s if c > 0 else f"-{s}")
            else:
                parts.append(f"+ {s}" if c > 0 else f"- {s}")
        return " ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[a, b, c] for a, b, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> BiPoly:
        return cls({(int(a), int(b)): int(c) for a, b, c in data})


Y = BiPoly.monomial(1, 0)
Z = BiPoly.monomial(0, 1)
ONE = BiPoly.const(1)


def univariate(*coeffs: int) -> BiPoly:
    """Polynomial in z from ascending coefficients, e.g. ``univariate(1, -1)`` is 1 - z."""
    return BiPoly.from_z_coeffs(coeffs)


# ---------------------------------------------------------------------------
# univariate helpers on ascending integer coefficient lists


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _div_linear_univ(c: list[int], root: int) -> tuple[list[int], int]:
    """Divide by (z - root) via synthetic division; returns (quotient, remainder)."""
    n = len(c) - 1
    q = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = c[k] + acc * root
        q[k - 1] = acc
    rem = c[0] + acc * root
    return q, rem


def _multiplicity_univ(c: list[int], root: int) -> tuple[int, list[int]]:
    c = _trim(c)
    if not c:
        raise ZeroPolynomial("the zero polynomial has no root multiplicity")
    m = 0
    while len(c) > 1:
        q, rem = _div_linear_univ(c, root)
        if rem:
            break
        c = _trim(q)
        m += 1
    return m, c


def root_multiplicity(p: BiPoly, root: int) -> int:
    """Multiplicity of ``root`` (+1 or -1) as a root of the univariate ``p``."""
    if root not in (1, -1):
        raise ValueError("root must be +1 or -1")
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no root multiplicity")
    m, _ = _multiplicity_univ(p.univariate_coeffs(), root)
    return m


# ---------------------------------------------------------------------------


_LINEAR_FACTORS = ((0, -1), (0, 1), (1, -1), (1, 1))  # 1 - z, 1 + z, 1 - yz, 1 + yz


@dataclass(frozen=True)
class RationalSeries:
    """``y^y_offset * num / den`` with ``den(0, 0) == 1``."""

    num: BiPoly
    den: BiPoly = ONE
    y_offset: int = 0

    def __post_init__(self):
        c0 = self.den.constant_term()
        if c0 == 0:
            raise DenominatorVanishes(f"denominator {self.den.to_text()} has zero constant term")
        if c0 not in (1, -1):
            raise ValueError(f"denominator constant term must be +1 or -1, got {c0}")
        if c0 == -1:
            object.__setattr__(self, "num", -self.num)
            object.__setattr__(self, "den", -self.den)

    @classmethod
    def polynomial(cls, p: BiPoly) -> RationalSeries:
        return cls(p, ONE)

    def is_univariate(self) -> bool:
        return self.num.is_univariate() and self.den.is_univariate()

    def expand(self, order_z: int) -> list[BiPoly]:
        return expand(self, order_z)

    def reduced(self) -> RationalSeries:
        """Cancel common factors of the form 1 +- z and 1 +- yz."""
        num, den = self.num, self.den
        if num.is_zero():
            return RationalSeries(BiPoly(), ONE, 0)
        for a_y, a_c in _LINEAR_FACTORS:
            while True:
                qd = den.divide_linear(a_y, a_c)
                if qd is None:
                    break
                qn = num.divide_linear(a_y, a_c)
                if qn is None:
                    break
                num, den = qn, qd
        return RationalSeries(num, den, self.y_offset)

    def __add__(self, other: RationalSeries) -> RationalSeries:
        if self.y_offset != other.y_offset:
            raise ValueError("cannot add series with different y offsets")
        if self.den == other.den:
            return RationalSeries(self.num + other.num, self.den, self.y_offset)
        return RationalSeries(
            self.num * other.den + other.num * self.den, self.den * other.den, self.y_offset
        )

    def __neg__(self):
        return RationalSeries(-self.num, self.den, self.y_offset)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly | int):
            return RationalSeries(self.num * other, self.den, self.y_offset)
        return RationalSeries(self.num * other.num, self.den * other.den, self.y_offset + other.y_offset)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.y_offset == other.y_offset and self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den, r.y_offset))

    # presentation -----------------------------------------------------

    def to_text(self) -> str:
        s = f"({self.num.to_text()}) / ({self.den.to_text()})"
        if self.y_offset:
            s += f" * y^{self.y_offset}"
        return s

    def pretty(self) -> str:
        """Human form with powers of (1 - z), (1 + z), (1 - yz), (1 + yz) factored out."""
        r = self.reduced()
        den = r.den
        factors = []
        names = {(0, -1): "1 - z", (0, 1): "1 + z", (1, -1): "1 - y*z", (1, 1): "1 + y*z"}
        for key in _LINEAR_FACTORS:
            k = 0
            while True:
                q = den.divide_linear(*key)
                if q is None:
                    break
                den, k = q, k + 1
            if k:
                factors.append(f"({names[key]})" + (f"^{k}" if k > 1 else ""))
        if den != ONE:
            factors.append(f"({den.to_text()})")
        n = r.num.to_text()
        if len(r.num.items()) > 1 and factors:
            n = f"({n})"
        s = n if not factors else f"{n} / " + "*".join(factors)
        if r.y_offset:
            s += f" * y^{r.y_offset}"
        return s

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json(), "yOffset": self.y_offset}

    @classmethod
    def from_json(cls, data: dict) -> RationalSeries:
        return cls(BiPoly.from_json(data["num"]), BiPoly.from_json(data["den"]), int(data.get("yOffset", 0)))


def expand(s: RationalSeries, order_z: int) -> list[BiPoly]:
    """Coefficients c_0..c_order of z^i in the power series of ``s`` (each a polynomial in y)."""
    if order_z < 0:
        return []
    if s.y_offset < 0:
        raise ValueError("expansion with a negative y offset is not representable")
    num = s.num.z_coeffs()
    den = s.den.z_coeffs()
    out: list[dict[int, int]] = []
    for i in range(order_z + 1):
        acc = dict(num[i]) if i < len(num) else {}
        for k in range(1, min(i, len(den) - 1) + 1):
            dk = den[k]
            if not dk:
                continue
            for e1, c1 in dk.items():
                for e2, c2 in out[i - k].items():
                    acc[e1 + e2] = acc.get(e1 + e2, 0) - c1 * c2
        # den[0] is the constant 1 in y only if the y-part of z^0 is exactly 1
        d0 = den[0]
        if d0 != {0: 1}:
            acc = _divide_by_y_poly(acc, d0)
        out.append({e: c for e, c in acc.items() if c})
    k = s.y_offset
    return [BiPoly({(e + k, 0): c for e, c in part.items()}) for part in out]


def _divide_by_y_poly(a: dict[int, int], d: dict[int, int]) -> dict[int, int]:
    """Power-series division in y by d with d(0) = 1 (exact: a is a polynomial multiple)."""
    a = dict(a)
    q: dict[int, int] = {}
    if not a:
        return q
    top = max(a)
    for e in range(top + 1):
        c = a.get(e, 0)
        if c:
            q[e] = c
            for f, dc in d.items():
                if f:
                    a[e + f] = a.get(e + f, 0) - c * dc
    if any(c for e, c in a.items() if e > top):
        raise ArithmeticError("y-coefficient division is not exact")
    return q


def specialize_y(s: RationalSeries, value: int = 1) -> RationalSeries:
    """Substitute y -> value (default 1) in numerator and denominator; drops the y offset."""
    num = s.num.subs_y(value)
    den = s.den.subs_y(value)
    if den.constant_term() == 0:
        raise DenominatorVanishes(f"denominator vanishes at z = 0 after y -> {value}")
    scale = value ** s.y_offset if s.y_offset >= 0 else None
    if scale is None:
        if value not in (1, -1):
            raise ValueError("negative y offset can only be specialized at y = +-1")
        scale = value ** (-s.y_offset)
    return RationalSeries(num * scale, den, 0)


def pole_orders(s: RationalSeries) -> tuple[int, int]:
    """Orders of the poles at z = 1 (complexity) and z = -1 (granularity)."""
    if s.y_offset != 0 or not s.is_univariate():
        raise ValueError("pole_orders expects a univariate series without y offset")
    num = _trim(s.num.univariate_coeffs())
    den = _trim(s.den.univariate_coeffs())
    if not num:
        return (0, 0)
    m_num_p, _ = _multiplicity_univ(num, 1)
    m_den_p, _ = _multiplicity_univ(den, 1)
    m_num_m, _ = _multiplicity_univ(num, -1)
    m_den_m, _ = _multiplicity_univ(den, -1)
    return max(m_den_p - m_num_p, 0), max(m_den_m - m_num_m, 0)


# ---------------------------------------------------------------------------
# quasi-polynomial description of eventually-polynomial Betti sequences


def _poly_eval(coeffs: tuple[Fraction, ...], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_degree(coeffs: tuple[Fraction, ...]) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    return d


@dataclass(frozen=True)
class QuasiPolynomialPair:
    """Even/odd Betti polynomials (ascending rational coefficients in x)."""

    beta_even: tuple[Fraction, ...]
    beta_odd: tuple[Fraction, ...]
    cx: int
    gn: int
    valid_from: int

    def __call__(self, i: int) -> Fraction:
        return _poly_eval(self.beta_even if i % 2 == 0 else self.beta_odd, i)

    def difference_degree(self) -> int:
        n = max(len(self.beta_even), len(self.beta_odd))
        e = self.beta_even + (Fraction(0),) * (n - len(self.beta_even))
        o = self.beta_odd + (Fraction(0),) * (n - len(self.beta_odd))
        return _poly_degree(tuple(a - b for a, b in zip(e, o)))

    def format(self, var: str = "x") -> tuple[str, str]:
        return _poly_text(self.beta_even, var), _poly_text(self.beta_odd, var)


def _poly_text(coeffs, var):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _solve_fractions(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise FitMismatch("singular system while fitting Betti polynomials")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def betti_polynomials(s: RationalSeries) -> QuasiPolynomialPair:
    """Even and odd Betti polynomials of a series whose poles lie at z = +-1 only."""
    s = s.reduced()
    if s.y_offset != 0 or not s.is_univariate():
        raise ValueError("betti_polynomials expects a univariate series")
    num = _trim(s.num.univariate_coeffs())
    if not num:
        return QuasiPolynomialPair((), (), 0, 0, 0)
    den = _trim(s.den.univariate_coeffs())
    _, rest = _multiplicity_univ(den, 1)
    _, rest = _multiplicity_univ(rest, -1)
    # dividing by the monic factors z -+ 1 leaves a unit exactly when no other roots exist
    if rest not in ([1], [-1]):
        raise NotPlusMinusOnePoles(f"denominator {s.den.to_text()} has roots other than +-1")
    cx, gn = pole_orders(s)
    k = cx + gn
    valid_from = max(0, len(num) - 1 - k + 1)
    n_check = 2 * k + 4
    coeffs = [int(c.constant_term()) for c in expand(s, valid_from + k + n_check)]
    if k == 0:
        tail = coeffs[valid_from:]
        if any(tail):
            raise FitMismatch("polynomial series has nonzero tail")
        return QuasiPolynomialPair((), (), 0, 0, valid_from)
    # beta_i = A(i) + (-1)^i B(i), deg A < cx, deg B < gn
    idx = list(range(valid_from, valid_from + k))
    rows = []
    for i in idx:
        sign = -1 if i % 2 else 1
        rows.append([Fraction(i) ** d for d in range(cx)] + [Fraction(sign) * Fraction(i) ** d for d in range(gn)])
    sol = _solve_fractions(rows, [Fraction(coeffs[i]) for i in idx])
    a_part, b_part = sol[:cx], sol[cx:]
    n = max(cx, gn)
    a_full = a_part + [Fraction(0)] * (n - cx)
    b_full = b_part + [Fraction(0)] * (n - gn)
    even = tuple(x + y for x, y in zip(a_full, b_full))
    odd = tuple(x - y for x, y in zip(a_full, b_full))
    even = even[: _poly_degree(even) + 1]
    odd = odd[: _poly_degree(odd) + 1]
    result = QuasiPolynomialPair(even, odd, cx, gn, valid_from)
    for i in range(valid_from, len(coeffs)):
        if result(i) != coeffs[i]:
            raise FitMismatch(f"fitted Betti polynomial disagrees with expansion at index {i}")
    if max(_poly_degree(even), _poly_degree(odd)) + 1 != cx or result.difference_degree() + 1 != gn:
        raise FitMismatch("degrees of the fitted Betti polynomials do not match the pole orders")
    return result


def tate_like(dim: int, codim: int) -> RationalSeries:
    """(1 + z)^dim / (1 - z)^codim."""
    return RationalSeries(univariate(1, 1) ** dim, univariate(1, -1) ** codim)


def binomial_sum(top: int, n_terms: int, x: BiPoly) -> BiPoly:
    """sum_{i < n_terms} C(top + i, i) x^i."""
    out = BiPoly()
    xp = ONE
    for i in range(n_terms):
        out = out + xp * comb(top + i, i)
        xp = xp * x
    return out
