"""Builders for adequate matrices, their minor ideals, and explicit ring families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .algebra import HomogPoly, RingSpec, min_multiplicity_check, monomials
from .errors import BadParameters, NotASubideal
from .fplinalg import DEFAULT_PRIME, reduce_rows
from .formulas import granularity_bound
from .rng import trial_rng

Entry = int | None  # 1-based variable index, or None for a zero entry


@dataclass(frozen=True)
class Violation:
    row: int
    col: int
    clause: int
    message: str


def validate_adequate(entries: Sequence[Sequence[Entry]], e: int) -> list[Violation]:
    """Check the adequacy conditions; an empty list means the matrix is adequate.

    For an s x (s+h-1) matrix, diagonal n (entries with col - row + 1 = n, n in
    1..h) must consist of x_n only; x_1..x_h may appear nowhere else; any other
    variable may appear at most once in the whole matrix.
    """
    s = len(entries)
    if s == 0:
        return [Violation(0, 0, 0, "matrix has no rows")]
    ncols = len(entries[0])
    if any(len(r) != ncols for r in entries):
        return [Violation(0, 0, 0, "rows of different lengths")]
    h = ncols - s + 1
    if h < 1:
        return [Violation(0, 0, 0, f"{s} x {ncols} has fewer columns than rows")]
    out = []
    seen: dict[int, tuple[int, int]] = {}
    for i in range(s):
        for j in range(ncols):
            x = entries[i][j]
            n = j - i + 1
            if x is not None and not 1 <= x <= e:
                out.append(Violation(i, j, 0, f"variable index {x} outside 1..{e}"))
                continue
            if 1 <= n <= h:
                if x is None:
                    out.append(Violation(i, j, 1, f"zero entry on diagonal {n}"))
                elif x != n:
                    out.append(Violation(i, j, 2, f"x{x} on diagonal {n}, expected x{n}"))
            elif x is not None and x <= h:
                out.append(Violation(i, j, 2, f"x{x} off its diagonal"))
            if x is not None and x > h:
                if x in seen:
                    out.append(Violation(i, j, 3, f"x{x} already used at {seen[x]}"))
                else:
                    seen[x] = (i, j)
    return out


@dataclass(frozen=True)
class AdequateMatrix:
    entries: tuple[tuple[Entry, ...], ...]
    e: int

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        bad = validate_adequate(entries, self.e)
        if bad:
            raise BadParameters("; ".join(f"({v.row},{v.col}): {v.message}" for v in bad))

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def h(self) -> int:
        return self.cols - self.s + 1

    def diagonal(self, n: int) -> list[Entry]:
        return [self.entries[i][i + n - 1] for i in range(self.s) if 0 <= i + n - 1 < self.cols]

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.e)]
        return "\n".join(" ".join("0" if x is None else names[x - 1] for x in row) for row in self.entries)


def staircase(s: int, h: int, e: int) -> AdequateMatrix:
    """The band matrix with x_n on diagonal n (n = 1..h) and zeros elsewhere."""
    if s < 1 or h < 1 or h > e:
        raise BadParameters("need s >= 1 and 1 <= h <= e")
    rows = []
    for i in range(s):
        rows.append(tuple((j - i + 1) if 1 <= j - i + 1 <= h else None for j in range(s + h - 1)))
    return AdequateMatrix(tuple(rows), e)


def _perm_sign(perm) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            k = seen[i]
            seen[i], seen[k] = seen[k], seen[i]
            sign = -sign
    return sign


def minors_ideal(U: AdequateMatrix) -> list[HomogPoly]:
    """All nonzero maximal minors, column subsets in lexicographic order, repeats dropped."""
    s, e = U.s, U.e
    out: list[HomogPoly] = []
    seen = set()
    for cols in combinations(range(U.cols), s):
        terms: dict[tuple[int, ...], int] = {}
        for perm in permutations(range(s)):
            exps = [0] * e
            ok = True
            for i, k in enumerate(perm):
                x = U.entries[i][cols[k]]
                if x is None:
                    ok = False
                    break
                exps[x - 1] += 1
            if ok:
                key = tuple(exps)
                terms[key] = terms.get(key, 0) + _perm_sign(perm)
        f = HomogPoly(terms, e, s)
        if f.is_zero():
            continue
        key = frozenset(f.terms.items())
        neg = frozenset((-f).terms.items())
        if key in seen or neg in seen:
            continue
        seen.add(key)
        out.append(f)
    return out


def power_of_maximal_ideal(e: int, n: int) -> list[HomogPoly]:
    return [HomogPoly.monomial(m) for m in monomials(e, n)]


def golod_quotient_ideal(U: AdequateMatrix, e: int | None = None, p: int = DEFAULT_PRIME,
                         names: Sequence[str] | None = None) -> RingSpec:
    """F_p[x_1..x_e]/(I(U) + (x)^(s+1))."""
    e = U.e if e is None else e
    if U.h > e:
        raise BadParameters(f"h = {U.h} exceeds e = {e}")
    gens = minors_ideal(U) + power_of_maximal_ideal(e, U.s + 1)
    return RingSpec(p, tuple(names or [f"x{i + 1}" for i in range(e)]), tuple(gens), f"J_s{U.s}_h{U.h}_e{e}")


def check_containment(R: RingSpec, S: RingSpec) -> None:
    """Raise NotASubideal unless every generator of R lies in the ideal of S."""
    for g in R.gens:
        rows, piv = S.ideal_rows(g.degree)
        r = reduce_rows(g.vector(R.p)[None, :], rows, piv, R.p)
        if r.any():
            raise NotASubideal(f"{g.to_text(R.var_names)} is not in the ideal of {S.name}")


@dataclass(frozen=True)
class OptimalFamily:
    params: tuple[int, int, int, int]
    R: RingSpec
    Stilde: RingSpec
    U: AdequateMatrix | None
    e: int
    predicted_gn: int

    def manifest(self) -> dict:
        d, c, q, a = self.params
        return {"params": {"d": d, "c": c, "q": q, "a": a}, "e": self.e, "predictedGn": self.predicted_gn}


def optimal_family(d: int, c: int, q: int, a: int, p: int = DEFAULT_PRIME) -> OptimalFamily:
    """A complete intersection R = P/I and a quotient S = P/J~ with prescribed (d, c, q, a).

    Variables are t_1..t_(d-e) followed by u_1..u_e.  When q > a, e = d - q + a
    and I = (t_1..t_(q-a))^[2] + (u_1..u_a)^[2] + quartics of further u's;
    J~ = (t) + (u_1..u_q)^2 + (u)^3.  When q <= a, e = d and
    I = (u_1..u_q)^[2] + (u_(q+1)..u_a)^[3] + (u_(a+1)..u_c)^[4];
    J~ = (u_1..u_q)^2 + (u)^3.  Here (v)^[n] means the n-th powers of the v's.
    """
    if not d >= c >= q >= 0 or a < 0:
        raise BadParameters(f"need d >= c >= q >= 0 and a >= 0, got (d,c,q,a) = {(d, c, q, a)}")
    if a > c:
        raise BadParameters(f"need a <= c, got a = {a} > c = {c}")
    e = d - q + a if q > a else d
    nt = d - e
    names = tuple([f"t{i + 1}" for i in range(nt)] + [f"u{i + 1}" for i in range(e)])

    def t(i, n):
        exps = [0] * d
        exps[i - 1] = n
        return HomogPoly.monomial(exps)

    def u(i, n):
        exps = [0] * d
        exps[nt + i - 1] = n
        return HomogPoly.monomial(exps)

    if q > a:
        # quartics go on u_(q+1)..u_c when those exist, otherwise right after the squared u's
        quartic_vars = range(q + 1, c + 1) if c <= e else range(a + 1, a + c - q + 1)
        gens = [t(i, 2) for i in range(1, q - a + 1)] + [u(i, 2) for i in range(1, a + 1)]
        gens += [u(i, 4) for i in quartic_vars]
        jt = [t(i, 1) for i in range(1, nt + 1)]
    else:
        gens = [u(i, 2) for i in range(1, q + 1)] + [u(i, 3) for i in range(q + 1, a + 1)]
        gens += [u(i, 4) for i in range(a + 1, c + 1)]
        jt = []
    qq = min(q, e)
    squares = [u(i, 1) * u(k, 1) for i in range(1, qq + 1) for k in range(i, qq + 1)]
    cubes = []
    for m in monomials(e, 3):
        cubes.append(HomogPoly.monomial((0,) * nt + m))
    R = RingSpec(p, names, tuple(gens), f"R_{d}{c}{q}{a}")
    S = RingSpec(p, names, tuple(jt + squares + cubes), f"S_{d}{c}{q}{a}")
    check_containment(R, S)
    U = staircase(2, q, e) if 1 <= q <= e else None
    return OptimalFamily((d, c, q, a), R, S, U, e, granularity_bound(c, q))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleResult:
    a: tuple[int, ...]
    passed: bool


def perturbed_forms(forms: Sequence[HomogPoly], avec: Sequence[int], p: int) -> list[HomogPoly]:
    """f_i - a_i f_r for i < r."""
    last = forms[-1]
    return [(f - last * int(ai)).mod(p) for f, ai in zip(forms[:-1], avec)]


def check_point(e: int, forms: Sequence[HomogPoly], q: int, avec: Sequence[int], p: int = DEFAULT_PRIME,
                trials: int = 5, seed: int = 0) -> bool:
    if q == 0:
        return True
    fa = perturbed_forms(forms, avec, p)[:q]
    if any(f.is_zero() for f in fa):
        return False
    return min_multiplicity_check(e, fa, trials, p, seed)


def sample_regular_point(e: int, forms: Sequence[HomogPoly], q: int, seed: int = 1, trials: int = 50,
                         p: int = DEFAULT_PRIME) -> tuple[list[SampleResult], float]:
    """Random points a of affine (r-1)-space; does f^a_1..f^a_q cut out a minimal-multiplicity c.i.?"""
    r = len(forms)
    if r < 2 or not 0 <= q < r:
        raise BadParameters("need r >= 2 and 0 <= q < r")
    results = []
    for t in range(trials):
        avec = tuple(trial_rng(seed, t).residues(r - 1, p))
        results.append(SampleResult(avec, check_point(e, forms, q, avec, p, seed=seed + t)))
    ratio = sum(s.passed for s in results) / trials if trials else 1.0
    return results, ratio


def quadric_matrix_rows(forms: Sequence[HomogPoly], p: int) -> np.ndarray:
    return np.vstack([f.vector(p) for f in forms])
