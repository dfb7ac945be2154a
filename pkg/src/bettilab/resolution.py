"""Degree-truncated minimal graded free resolutions over A = F_p[x]/I.

The module resolved is always cyclic, M = A/J'.  Each step works one internal
degree at a time: the differential restricted to degree j is assembled from
degree j-1 by multiplying by a variable, its kernel is computed by row
reduction, and the new minimal generators are the part of the kernel not
reached by multiplying the previous degree's kernel by variables.

Every entry beta_{i,j} with j <= jmax is exact.  A column i is marked complete
when no generator of homological degree i can sit above jmax; the flag is
certified when that follows from a degree bound, otherwise it is a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import HomogPoly, RingSpec, is_regular_sequence
from .errors import TruncationTooTight
from .fplinalg import kernel_from_rref, matmul_mod, reduce_rows, rref
from .series import BiPoly


class FreeModule:
    """Graded free A-module; degree-j piece laid out generator-degree group by group."""

    def __init__(self, A: RingSpec, counts: dict[int, int]):
        self.A = A
        self.counts = {d: n for d, n in sorted(counts.items()) if n}
        self._layouts: dict[int, list[tuple[int, int, int, int, int]]] = {}

    def layout(self, j: int) -> list[tuple[int, int, int, int, int]]:
        """Groups (delta, n, t, dim A_t, offset) making up the degree-j piece."""
        if j not in self._layouts:
            out, off = [], 0
            for d, n in self.counts.items():
                if d > j:
                    break
                a = self.A.dim(j - d)
                out.append((d, n, j - d, a, off))
                off += n * a
            self._layouts[j] = out
        return self._layouts[j]

    def dim(self, j: int) -> int:
        return sum(n * a for _, n, _, a, _ in self.layout(j))

    def group_offset(self, j: int, delta: int) -> int:
        for d, _, _, _, off in self.layout(j):
            if d == delta:
                return off
        raise KeyError(delta)

    def apply_var(self, v: int, rows: np.ndarray, j: int) -> np.ndarray:
        """Multiply degree-j elements (rows) by x_v."""
        p = self.A.p
        r = rows.shape[0]
        out = np.zeros((r, self.dim(j + 1)), dtype=np.int64)
        if r == 0:
            return out
        for d, n, t, a, off in self.layout(j):
            a_next = self.A.dim(t + 1)
            if a == 0 or a_next == 0:
                continue
            x = self.A.mult(v, t)
            seg = rows[:, off:off + n * a].reshape(r * n, a)
            prod = matmul_mod(seg, x, p).reshape(r, n * a_next)
            o2 = self.group_offset(j + 1, d)
            out[:, o2:o2 + n * a_next] = prod
        return out

    def times_all_vars(self, rows: np.ndarray, j: int) -> np.ndarray:
        return np.vstack([self.apply_var(v, rows, j) for v in range(self.A.e)] or
                         [np.zeros((0, self.dim(j + 1)), dtype=np.int64)])


class _Sub:
    """Subspace of a degree piece: explicit rows, or the whole space."""

    __slots__ = ("rows", "dim", "ambient")

    def __init__(self, rows: np.ndarray | None, ambient: int):
        self.rows = rows
        self.ambient = ambient
        self.dim = ambient if rows is None else rows.shape[0]

    def materialize(self) -> np.ndarray:
        if self.rows is None:
            return np.eye(self.ambient, dtype=np.int64)
        return self.rows


def _minimal_generators(G: FreeModule, K: dict[int, _Sub], j: int, need_vectors: bool):
    """New minimal generators of the submodule K in degree j: (count, vectors or None)."""
    p = G.A.p
    kj = K.get(j)
    if kj is None or kj.dim == 0:
        return 0, None
    prev = K.get(j - 1)
    if prev is None or prev.dim == 0 or kj.ambient == 0:
        s_rows, s_piv = np.zeros((0, kj.ambient), dtype=np.int64), []
    else:
        s_rows, s_piv = rref(G.times_all_vars(prev.materialize(), j - 1), p)
    count = kj.dim - len(s_piv)
    if count == 0:
        return 0, None
    if not need_vectors:
        return count, None
    if kj.rows is None:
        # complement of the pivots: unit vectors on the free columns
        piv = set(s_piv)
        free = [c for c in range(kj.ambient) if c not in piv]
        gens = np.zeros((len(free), kj.ambient), dtype=np.int64)
        gens[np.arange(len(free)), free] = 1
        return count, gens
    resid = reduce_rows(kj.rows, s_rows, s_piv, p)
    gens, _ = rref(resid, p)
    assert len(gens) == count
    return count, gens


def _kernel(F: FreeModule, G: FreeModule, images: dict[int, np.ndarray], jmin: int, jmax: int) -> dict[int, _Sub]:
    """Kernel of F -> G (generators of F sent to ``images``) in degrees jmin..jmax."""
    A, p = F.A, F.A.p
    K: dict[int, _Sub] = {}
    d_prev = None
    for j in range(jmin, jmax + 1):
        nf, ng = F.dim(j), G.dim(j)
        d = np.zeros((nf, ng), dtype=np.int64)
        for delta, n, t, a, off in F.layout(j):
            if a == 0:
                continue
            if t == 0:
                d[off:off + n] = images[delta]
                continue
            if ng == 0:
                continue
            piece = A.piece(t)
            a_prev = A.dim(t - 1)
            off_prev = F.group_offset(j - 1, delta)
            ks = np.arange(n)[:, None]
            for v in np.unique(piece.div_var):
                sel = np.flatnonzero(piece.div_var == v)
                src = (off_prev + ks * a_prev + piece.div_idx[sel][None, :]).ravel()
                dst = (off + ks * a + sel[None, :]).ravel()
                d[dst] = G.apply_var(int(v), d_prev[src], j - 1)
        d_prev = d
        if nf == 0:
            K[j] = _Sub(np.zeros((0, 0), dtype=np.int64), 0)
        elif ng == 0 or not d.any():
            K[j] = _Sub(None, nf)
        else:
            r, piv = rref(d.T, p)
            K[j] = _Sub(kernel_from_rref(r, piv, nf, p), nf)
    return K


@dataclass(frozen=True)
class BettiTable:
    """Truncated graded Betti table beta_{i,j} with per-column completeness."""

    entries: dict
    imax: int
    jmax: int
    complete: tuple[bool, ...]
    certified: tuple[bool, ...]
    notes: tuple[str, ...] = field(default=())

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def total(self, i: int) -> int:
        return sum(c for (a, _), c in self.entries.items() if a == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.imax + 1)]

    def column(self, i: int) -> dict[int, int]:
        return {j: c for (a, j), c in sorted(self.entries.items()) if a == i}

    def max_degree(self, i: int) -> int | None:
        return max(self.column(i), default=None)

    def all_complete(self) -> bool:
        return all(self.complete)

    def require_complete(self, upto: int | None = None):
        upto = self.imax if upto is None else upto
        bad = [i for i in range(upto + 1) if not self.complete[i]]
        if bad:
            raise TruncationTooTight(
                f"columns {bad} may have generators above degree {self.jmax}; raise --jmax"
            )

    def shifted(self) -> BettiTable:
        """Table of the ideal J' from the table of A/J' (drop column 0, shift the rest)."""
        entries = {(i - 1, j): c for (i, j), c in self.entries.items() if i >= 1}
        return BettiTable(entries, self.imax - 1, self.jmax, self.complete[1:], self.certified[1:], self.notes)

    def to_json(self) -> dict:
        return {
            "imax": self.imax,
            "jmax": self.jmax,
            "entries": [{"i": i, "j": j, "count": c} for (i, j), c in sorted(self.entries.items())],
            "complete": list(self.complete),
            "certified": list(self.certified),
        }

    @classmethod
    def from_json(cls, data: dict) -> BettiTable:
        entries = {(d["i"], d["j"]): d["count"] for d in data["entries"]}
        return cls(entries, data["imax"], data["jmax"], tuple(data["complete"]), tuple(data["certified"]))

    def macaulay(self) -> str:
        """Betti diagram: columns i, rows j - i, as printed by Macaulay2."""
        cols = range(self.imax + 1)
        strands = sorted({j - i for (i, j) in self.entries}) or [0]
        header = ["", *[str(i) for i in cols]]
        rows = [["total:", *[str(self.total(i)) for i in cols]]]
        for r in range(strands[0], strands[-1] + 1):
            cells = []
            for i in cols:
                c = self[(i, i + r)]
                cells.append(str(c) if c else ".")
            rows.append([f"{r}:", *cells])
        flags = ["", *["" if self.complete[i] else "?" for i in cols]]
        table = [header, *rows]
        if not self.all_complete():
            table.append(flags)
        widths = [max(len(row[k]) for row in table) for k in range(len(header))]
        lines = [" ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
        return "\n".join(lines)


@dataclass(frozen=True)
class TruncatedSeries:
    poly: BiPoly
    imax: int
    jmax: int
    complete: tuple[bool, ...]


def poincare_truncated(t: BettiTable) -> TruncatedSeries:
    terms = {(j, i): c for (i, j), c in t.entries.items()}
    return TruncatedSeries(BiPoly(terms), t.imax, t.jmax, t.complete)


# ---------------------------------------------------------------------------


def maximal_ideal(A: RingSpec) -> list[HomogPoly]:
    return [A.var(v) for v in range(A.e)]


def regular_presentation(A: RingSpec, trials: int = 3, seed: int = 0) -> bool:
    """True when the generators of I are certified to form a regular sequence."""
    if not A.gens:
        return True
    if A.is_monomial():
        supports = [g.support() for g in A.gens]
        return all(not (a & b) for k, a in enumerate(supports) for b in supports[k + 1:])
    # a single successful random trial already certifies regularity
    return bool(is_regular_sequence(A.e, A.gens, trials, A.p, seed).value)


def module_top_degree(A: RingSpec, module_gens: Sequence[HomogPoly], limit: int) -> int | None:
    """Top degree of A/J' when it is finite-dimensional by degree ``limit``."""
    M = A.with_gens(tuple(A.gens) + tuple(module_gens), A.name + "_mod")
    return M.top_degree(limit)


def _plan(A: RingSpec, module_gens, imax: int, jmax: int | None):
    """Choose jmax and the completeness rule."""
    D = A.max_gen_degree()
    dm = max((g.degree for g in module_gens), default=0)
    spec_default = imax * max(1, D) + dm + 2
    limit = max(spec_default, 2 * (sum(A.gen_degrees()) + dm + A.e + 2))
    rho = module_top_degree(A, module_gens, limit)
    ci = rho is not None and regular_presentation(A)
    # only probe A itself when the c.i. rule is unavailable
    top_a = None if ci else A.top_degree(limit)
    if ci:
        slope = max(D - 2, 0)
        bound = lambda i: i + rho + (i // 2) * slope  # noqa: E731
        rule = ("ci", bound)
        if jmax is None:
            jmax = max(bound(imax), dm)
    elif top_a is not None:
        rule = ("artinian", top_a)
    else:
        rule = ("heuristic", max(1, D, dm))
    if jmax is None:
        jmax = spec_default
    return jmax, rule


def minimal_betti_table(A: RingSpec, module_gens: Sequence[HomogPoly] | None = None, imax: int = 6,
                        jmax: int | None = None, strict: bool = False) -> BettiTable:
    """Graded Betti numbers of M = A/J' (J' = ``module_gens``; None means M = k)."""
    if module_gens is None:
        module_gens = maximal_ideal(A)
    module_gens = [g.mod(A.p) for g in module_gens]
    if any(g.degree == 0 and not g.is_zero() for g in module_gens):
        raise ValueError("J' contains a unit; the module is zero")
    module_gens = [g for g in module_gens if not g.is_zero()]
    jmax, rule = _plan(A, module_gens, imax, jmax)
    p = A.p
    if rule[0] == "ci":
        # beta_{i,j} = 0 above the certified bound, so step i stops there
        cap = lambda i: min(jmax, rule[1](i))  # noqa: E731
    else:
        cap = lambda i: jmax  # noqa: E731
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    gen_degrees: list[list[int]] = [[0]]

    # step 0: K = J'A inside A
    G = FreeModule(A, {0: 1})
    K: dict[int, _Sub] = {}
    for j in range(0, cap(1) + 1):
        dim = A.dim(j)
        rows = []
        if j > 0 and K.get(j - 1) is not None and K[j - 1].dim:
            rows.append(G.times_all_vars(K[j - 1].materialize(), j - 1))
        for g in module_gens:
            if g.degree == j and dim:
                rows.append(A.normal_form(g)[None, :])
        if rows:
            r, _ = rref(np.vstack(rows), p)
            K[j] = _Sub(r, dim)
        else:
            K[j] = _Sub(np.zeros((0, dim), dtype=np.int64), dim)

    for i in range(1, imax + 1):
        counts: dict[int, int] = {}
        images: dict[int, np.ndarray] = {}
        need = i < imax
        for j in range(0, cap(i) + 1):
            n, vecs = _minimal_generators(G, K, j, need)
            if n:
                counts[j] = n
                entries[(i, j)] = n
                if need:
                    images[j] = vecs
        gen_degrees.append(sorted(counts))
        if not counts or not need:
            break
        F = FreeModule(A, counts)
        K = _kernel(F, G, images, min(counts), cap(i + 1))
        G = F
    while len(gen_degrees) < imax + 1:
        gen_degrees.append([])

    complete, certified = _completeness(rule, gen_degrees, imax, jmax, A, module_gens)
    table = BettiTable(entries, imax, jmax, complete, certified)
    if strict:
        table.require_complete()
    return table


def _completeness(rule, gen_degrees, imax, jmax, A, module_gens):
    kind, data = rule
    complete, certified = [], []
    if kind == "ci":
        for i in range(imax + 1):
            ok = data(i) <= jmax or (A.is_polynomial_ring() and i > A.e)
            complete.append(ok)
            certified.append(ok)
    elif kind == "artinian":
        top = data
        dm = max((g.degree for g in module_gens), default=0)
        ok = True
        for i in range(imax + 1):
            if i == 0:
                ok = True
            elif i == 1:
                ok = dm <= jmax or top <= jmax
            else:
                prev = gen_degrees[i - 1]
                ok = ok and (not prev or max(prev) + top <= jmax)
            complete.append(ok)
            certified.append(ok)
    else:
        margin = data
        ok = True
        for i in range(imax + 1):
            degs = gen_degrees[i]
            ok = ok and (not degs or max(degs) <= jmax - margin)
            complete.append(ok)
            certified.append(False)
    return tuple(complete), tuple(certified)


def ideal_betti_table(A: RingSpec, ideal_gens: Sequence[HomogPoly], imax: int = 6,
                      jmax: int | None = None) -> BettiTable:
    """Graded Betti numbers of the ideal J' itself (as an A-module)."""
    return minimal_betti_table(A, ideal_gens, imax + 1, jmax).shifted()


def is_koszul_truncated(A: RingSpec, imax: int = 6, jmax: int | None = None) -> bool:
    """beta_{i,j}(k) = 0 for j != i and all i <= imax (a truncated certificate)."""
    t = minimal_betti_table(A, None, imax, jmax)
    return all(j == i for (i, j) in t.entries)


def first_nonlinear_entry(A: RingSpec, imax: int = 6, jmax: int | None = None) -> tuple[int, int] | None:
    t = minimal_betti_table(A, None, imax, jmax)
    bad = sorted((i, j) for (i, j) in t.entries if j != i)
    return bad[0] if bad else None


def golod_comparison(A: RingSpec, imax: int, jmax: int):
    """Oracle P^A_k against (1+yz)^e / (1 - z^2 P^B_I) in all (i <= imax, j <= jmax)."""
    from .formulas import golod_pk

    B = A.ambient()
    if A.gens and imax >= 2:
        pbi = poincare_truncated(ideal_betti_table(B, A.gens, imax - 2, jmax)).poly
    else:
        pbi = BiPoly()
    predicted = golod_pk(A.e, pbi).expand(imax)
    oracle = minimal_betti_table(A, None, imax, jmax)
    diffs = []
    for i in range(imax + 1):
        for j in range(jmax + 1):
            want = predicted[i][(j, 0)]
            got = oracle[(i, j)]
            if want != got:
                diffs.append((i, j, got, want))
    return oracle, predicted, diffs


def is_golod_truncated(A: RingSpec, imax: int = 6, jmax: int | None = None) -> bool:
    """Golod identity for k over A checked degree by degree through (imax, jmax)."""
    if jmax is None:
        jmax = imax * max(1, A.max_gen_degree()) + 3
    return not golod_comparison(A, imax, jmax)[2]
