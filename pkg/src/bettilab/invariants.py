"""Ring invariants of a presentation R = P/I and a quotient S = P/J~.

All rank computations are graded linear algebra over F_p.  Dimensions go
through ``krull_dimension`` and carry its exactness tag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Exact,
    Heuristic,
    HomogPoly,
    RingSpec,
    Tagged,
    krull_dimension,
    minimal_generator_count,
    monomials,
    quadratic_part,
    span_dim,
    substitute,
    times_linear,
    weakest,
)
from .constructions import check_containment
from .errors import BadParameters, BettiLabError, NegativePowersRemain
from .fplinalg import rref
from .formulas import componentwise_linear_series, golod_residue_series
from .resolution import ideal_betti_table, poincare_truncated
from .series import ONE, BiPoly, RationalSeries, pole_orders, root_multiplicity, univariate


@dataclass(frozen=True)
class InvariantReport:
    d: Tagged
    c: Tagged
    q: Tagged
    r: Tagged
    eS: Tagged | None = None
    mS: Tagged | None = None
    aPhi: Tagged | None = None
    pqj: BiPoly | None = None  # Poincare series of J over its regular ring, y = 1
    series: RationalSeries | None = None  # golod residue series with the measured inputs
    cx: int | None = None
    gn: int | None = None

    def values(self) -> tuple:
        return tuple(None if f is None else f.value for f in (self.d, self.c, self.q, self.r, self.eS, self.mS, self.aPhi))

    def tag(self) -> str:
        fields = [f for f in (self.d, self.c, self.q, self.r, self.eS, self.mS, self.aPhi) if f is not None]
        return weakest(*(f.tag for f in fields))

    def to_json(self) -> dict:
        out = {}
        for k in ("d", "c", "q", "r", "eS", "mS", "aPhi"):
            f = getattr(self, k)
            if f is not None:
                out[k] = {"value": f.value, "tag": f.tag}
        if self.pqj is not None:
            out["pQJ"] = self.pqj.to_text()
        if self.series is not None:
            out["series"] = self.series.to_text()
            out["cx"], out["gn"] = self.cx, self.gn
        return out


def _relative_rank(R: RingSpec, S: RingSpec) -> int:
    """rank_k I/(I ∩ p J~), summed over the degrees where I has generators."""
    total = 0
    for j in range(1, R.max_gen_degree() + 1):
        rows, _ = R.ideal_rows(j)
        if not len(rows):
            continue
        w = times_linear(S.ideal_rows(j - 1)[0], S.e, j - 1) if j > 1 else np.zeros((0, rows.shape[1]), dtype=np.int64)
        inter = len(rows) + span_dim(R.p, w) - span_dim(R.p, rows, w)
        total += len(rows) - inter
    return total


def eliminate_linear_part(S: RingSpec) -> RingSpec:
    """Rewrite S = P/J~ as Q/J with Q a polynomial ring and J inside its square.

    The linear forms in J~ are solved for their pivot variables, which are then
    substituted into the remaining generators.
    """
    p, e = S.p, S.e
    lin, piv = S.ideal_rows(1)
    if not len(lin):
        return S
    lin, piv = rref(lin, p)
    mono = monomials(e, 1)
    var_of = [m.index(1) for m in mono]
    pivvars = {var_of[c]: k for k, c in enumerate(piv)}
    free = [v for v in range(e) if v not in pivvars]
    ne = len(free)
    names = tuple(S.var_names[v] for v in free)
    col_of = {var_of[c]: c for c in range(e)}
    images = []
    for v in range(e):
        if v in pivvars:
            row = lin[pivvars[v]]
            terms = {}
            for k, f in enumerate(free):
                c = int(row[col_of[f]])
                if c:
                    ex = [0] * ne
                    ex[k] = 1
                    terms[tuple(ex)] = (-c) % p
            images.append(HomogPoly(terms, ne, 1))
        else:
            ex = [0] * ne
            ex[free.index(v)] = 1
            images.append(HomogPoly.monomial(ex))
    if ne == 0:
        return RingSpec(p, (), (), S.name + "_reg")
    gens = [substitute(g, images, p) for g in S.gens if g.degree >= 2]
    return RingSpec(p, names, tuple(g for g in gens if not g.is_zero()), S.name + "_reg")


def regular_poincare(S: RingSpec, jmax: int | None = None) -> Tagged:
    """P^Q_J(1, z) for the regular presentation S = Q/J, as a univariate polynomial."""
    Sq = eliminate_linear_part(S)
    if Sq.e == 0 or not Sq.gens:
        return Exact(BiPoly())
    Q = Sq.ambient()
    table = ideal_betti_table(Q, Sq.gens, imax=Sq.e, jmax=jmax)
    tag = "exact" if all(table.complete) and all(table.certified) else "heuristic"
    return Tagged(poincare_truncated(table).poly.subs_y(1), tag)


def m_invariant(pqj: BiPoly) -> int:
    return root_multiplicity(pqj.shift_z(2) - ONE, -1)


def invariants(R: RingSpec, S: RingSpec | None = None, trials: int = 5, seed: int = 0,
               cap: int | None = None) -> InvariantReport:
    """The tuple (d, c, q, r, e, m, a) for R = P/I and, when given, S = P/J~."""
    d = Exact(R.e)
    kd = krull_dimension(R, trials, cap, seed)
    c = Tagged(R.e - kd.value, kd.tag)
    kq = krull_dimension(quadratic_part(R), trials, cap, seed)
    q = Tagged(R.e - kq.value, kq.tag)
    r = Exact(minimal_generator_count(R))
    if S is None:
        return InvariantReport(d, c, q, r)
    if S.var_names != R.var_names or S.p != R.p:
        raise BadParameters("R and S must share variables and prime")
    check_containment(R, S)
    eS = Exact(S.e - len(S.ideal_rows(1)[0]))
    pq = regular_poincare(S)
    mS = Tagged(m_invariant(pq.value), pq.tag)
    aPhi = Exact(_relative_rank(R, S))
    series = cx = gn = None
    try:
        series = golod_residue_series(aPhi.value, c.value, d.value, eS.value, pq.value)
        cx, gn = pole_orders(series)
    except (BettiLabError, ValueError):  # inconsistent inputs: no series
        series = None
    return InvariantReport(d, c, q, r, eS, mS, aPhi, pq.value, series, cx, gn)


def loewy_bound_check(R: RingSpec, L: list[HomogPoly] | tuple = (), trials: int = 5, seed: int = 0):
    """(lhs, rhs, holds) for codim R - 1 <= rank L_1 + rank I_2/(I_2 ∩ B_1 L_1)."""
    kd = krull_dimension(R, trials, None, seed)
    lhs = R.e - kd.value - 1
    L = [g.mod(R.p) for g in L]
    L = [g for g in L if not g.is_zero()]
    l1 = R.with_gens(L, "L").ideal_rows(1)[0] if L else np.zeros((0, R.e), dtype=np.int64)
    i2 = R.ideal_rows(2)[0] if R.gens else np.zeros((0, len(monomials(R.e, 2))), dtype=np.int64)
    w = times_linear(l1, R.e, 1)
    inter = len(i2) + span_dim(R.p, w) - span_dim(R.p, i2, w)
    rhs = len(l1) + len(i2) - inter
    return lhs, rhs, lhs <= rhs


# ---------------------------------------------------------------------------
# Hilbert series and the componentwise-linear wrapper


def hilbert_series(A: RingSpec, start: int | None = None, limit: int = 60) -> Tagged:
    """H_A(t) = K(t)/(1-t)^e, with K read off once its tail vanishes for e+2 degrees.

    Artinian rings are exact; otherwise the stabilization stop is a heuristic.
    """
    e = A.e
    if not A.gens:
        return Exact(RationalSeries(ONE, univariate(1, -1) ** e))
    jmax = start if start is not None else A.max_gen_degree() + 2 * e + 4
    tail = e + 2
    while True:
        vals = A.hilbert_values(jmax)
        top = A.top_degree(jmax)
        if top is not None:
            return Exact(RationalSeries(BiPoly.from_z_coeffs(vals[: top + 1])))
        k = list(vals)
        for _ in range(e):
            k = [k[0]] + [k[i] - k[i - 1] for i in range(1, len(k))]
        if len(k) > tail and not any(k[-tail:]):
            return Heuristic(RationalSeries(BiPoly.from_z_coeffs(k), univariate(1, -1) ** e).reduced())
        if jmax >= limit:
            raise NegativePowersRemain(f"Hilbert series of {A.name} did not stabilize by degree {limit}")
        jmax = min(2 * jmax, limit)


def componentwise_data(B: RingSpec, gens: list[HomogPoly]):
    """(𝕁 data for componentwise_linear_series, tag).

    𝕁 is the set of degrees where the ideal needs new generators; for each
    j in 𝕁 the tuple holds the Hilbert series of B/(I_{j-1}), of B/(I_j), and
    rank I_{j-1}, with (I_j) the ideal generated by the degree-j component.
    """
    I = B.with_gens(gens, "I")
    top = I.max_gen_degree()
    jset = []
    for j in range(1, top + 1):
        rows = I.ideal_rows(j)[0]
        prev = I.ideal_rows(j - 1)[0] if j > 1 else np.zeros((0, 1), dtype=np.int64)
        if len(rows) > span_dim(B.p, times_linear(prev, B.e, j - 1) if len(prev) else None):
            jset.append(j)
    data, tags = [], []

    def comp_series(j):
        if j <= 0:
            return Exact(RationalSeries(ONE, univariate(1, -1) ** B.e))
        rows = I.ideal_rows(j)[0]
        forms = [HomogPoly.from_vector(r, B.e, j, B.p) for r in rows]
        return hilbert_series(B.with_gens(forms, f"I<{j}>"))

    for j in jset:
        hp, hc = comp_series(j - 1), comp_series(j)
        tags += [hp.tag, hc.tag]
        n_prev = len(I.ideal_rows(j - 1)[0]) if j > 1 else 0
        data.append((j, hp.value, hc.value, n_prev))
    return data, weakest(*tags)


def componentwise_series(B: RingSpec, gens: list[HomogPoly]) -> Tagged:
    data, tag = componentwise_data(B, gens)
    return Tagged(componentwise_linear_series(B.e, data), tag)
