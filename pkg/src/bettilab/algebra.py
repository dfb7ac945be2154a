"""Standard graded algebras A = F_p[x_1..x_e]/I given by homogeneous generators.

Each graded piece A_j is described by the row-reduced span of I_j inside the
space of degree-j monomials (ordered degrevlex, x_1 > ... > x_e, largest
first).  Non-pivot monomials form the standard basis of A_j and a normal-form
matrix sends every degree-j monomial to its coordinates in that basis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded, NonHomogeneous
from .fplinalg import DEFAULT_PRIME, check_prime, rref
from .rng import SplitMix64, trial_rng
from .series import BiPoly, RationalSeries, expand, univariate


class Tagged(NamedTuple):
    """A value together with how it was obtained: exact, probabilistic or heuristic."""

    value: object
    tag: str = "exact"

    @property
    def exact(self) -> bool:
        return self.tag == "exact"


def Exact(value):
    return Tagged(value, "exact")


def Probabilistic(value):
    return Tagged(value, "probabilistic")


def Heuristic(value):
    return Tagged(value, "heuristic")


def weakest(*tags: str) -> str:
    order = {"exact": 0, "probabilistic": 1, "heuristic": 2}
    return max(tags, key=order.__getitem__, default="exact")


# ---------------------------------------------------------------------------
# monomials


@lru_cache(maxsize=None)
def monomials(e: int, j: int) -> tuple[tuple[int, ...], ...]:
    """All degree-j exponent vectors in e variables, largest first in degrevlex."""
    if j < 0:
        return ()
    if e == 0:
        return ((),) if j == 0 else ()
    out = []

    def rec(prefix, left, k):
        if k == e - 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, k + 1)

    rec((), j, 0)
    out.sort(key=lambda m: m[::-1])
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(e: int, j: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(e, j))}


@lru_cache(maxsize=None)
def up_map(e: int, j: int, v: int) -> np.ndarray:
    """Position in degree j+1 of x_v times each degree-j monomial."""
    idx = monomial_index(e, j + 1)
    out = np.empty(len(monomials(e, j)), dtype=np.int64)
    for i, m in enumerate(monomials(e, j)):
        n = list(m)
        n[v] += 1
        out[i] = idx[tuple(n)]
    return out


def default_var_names(e: int, stem: str = "x") -> tuple[str, ...]:
    return tuple(f"{stem}{i + 1}" for i in range(e))


def monomial_text(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for a, n in zip(exps, names):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# homogeneous polynomials


class HomogPoly:
    """Homogeneous polynomial with integer coefficients, read modulo p when used."""

    __slots__ = ("terms", "degree", "nvars")

    def __init__(self, terms: Mapping[Sequence[int], int], nvars: int | None = None, degree: int | None = None):
        clean: dict[tuple[int, ...], int] = {}
        for k, c in terms.items():
            k = tuple(int(a) for a in k)
            c = int(c)
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        if clean:
            first = next(iter(clean))
            nv = len(first)
            deg = sum(first)
            for k in clean:
                if len(k) != nv:
                    raise ValueError("exponent vectors of different lengths")
                if sum(k) != deg:
                    raise NonHomogeneous(
                        f"term of degree {sum(k)} in a form of degree {deg}", term=k
                    )
            if nvars is not None and nvars != nv:
                raise ValueError(f"expected {nvars} variables, got {nv}")
            if degree is not None and degree != deg:
                raise NonHomogeneous(f"expected degree {degree}, got {deg}")
        else:
            if nvars is None:
                raise ValueError("zero polynomial needs an explicit variable count")
            nv, deg = nvars, degree or 0
        self.terms = clean
        self.nvars = nv
        self.degree = deg

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> HomogPoly:
        return cls({tuple(exps): coeff})

    @classmethod
    def var(cls, i: int, e: int) -> HomogPoly:
        exps = [0] * e
        exps[i] = 1
        return cls({tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> frozenset[int]:
        return frozenset(i for k in self.terms for i, a in enumerate(k) if a)

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return HomogPoly(out, self.nvars, self.degree if other.degree == self.degree else None)

    def __neg__(self):
        return HomogPoly({k: -c for k, c in self.terms.items()}, self.nvars, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HomogPoly({k: c * other for k, c in self.terms.items()}, self.nvars, self.degree)
        out: dict[tuple[int, ...], int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return HomogPoly(out, self.nvars, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> HomogPoly:
        out = HomogPoly({(0,) * self.nvars: 1})
        for _ in range(n):
            out = out * self
        return out

    def mod(self, p: int) -> HomogPoly:
        """Coefficients reduced to the symmetric range around 0."""
        half = p // 2
        out = {}
        for k, c in self.terms.items():
            c %= p
            if c > half:
                c -= p
            if c:
                out[k] = c
        return HomogPoly(out, self.nvars, self.degree)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms and (
            self.terms or self.degree == other.degree
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0][::-1])

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or default_var_names(self.nvars)
        if not self.terms:
            return "0"
        out = ""
        for i, (k, c) in enumerate(self.sorted_terms()):
            mono = monomial_text(k, names)
            mag = abs(c)
            body = mono if (mag == 1 and mono != "1") else (str(mag) if mono == "1" else f"{mag}*{mono}")
            if i == 0:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out

    def __repr__(self):
        return f"HomogPoly({self.to_text()!r})"

    def vector(self, p: int) -> np.ndarray:
        """Coefficient vector over the degree-d monomials (degrevlex order)."""
        idx = monomial_index(self.nvars, self.degree)
        v = np.zeros(len(idx), dtype=np.int64)
        for k, c in self.terms.items():
            v[idx[k]] = c % p
        return v

    @classmethod
    def from_vector(cls, vec: np.ndarray, e: int, degree: int, p: int) -> HomogPoly:
        half = p // 2
        terms = {}
        for m, c in zip(monomials(e, degree), vec):
            c = int(c) % p
            if c:
                terms[m] = c - p if c > half else c
        return cls(terms, e, degree)


def substitute(f: HomogPoly, images: Sequence[HomogPoly], p: int) -> HomogPoly:
    """Replace x_i by the linear form images[i] (all in the same new variable count)."""
    nv = images[0].nvars if images else 0
    out: dict[tuple[int, ...], int] = {}
    powers: dict[tuple[int, int], HomogPoly] = {}

    def power(i, a):
        key = (i, a)
        if key not in powers:
            if a == 0:
                powers[key] = HomogPoly({(0,) * nv: 1})
            else:
                powers[key] = (power(i, a - 1) * images[i]).mod(p)
        return powers[key]

    for k, c in f.terms.items():
        term = HomogPoly({(0,) * nv: c})
        for i, a in enumerate(k):
            if a:
                term = (term * power(i, a)).mod(p)
        for kk, cc in term.terms.items():
            out[kk] = out.get(kk, 0) + cc
    return HomogPoly(out, nv, f.degree).mod(p)


# ---------------------------------------------------------------------------
# ring specifications and graded pieces


@dataclass
class Piece:
    degree: int
    basis: np.ndarray  # positions (in the degree-j monomial list) of standard monomials
    nf: np.ndarray  # monomials x basis, coordinates of each monomial in A_j
    ideal: np.ndarray | None  # RREF rows spanning I_j, or None when I_j is everything
    pivots: list[int] | None
    div_var: np.ndarray  # for basis monomial b: a variable x_v dividing it
    div_idx: np.ndarray  # basis position of b / x_v in degree j-1

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True, eq=False)
class RingSpec:
    """F_p[vars]/(gens) with homogeneous generators."""

    p: int
    var_names: tuple[str, ...]
    gens: tuple[HomogPoly, ...] = ()
    name: str = "R"
    _state: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("duplicate variable names")
        gens = []
        for g in self.gens:
            if g.nvars != len(self.var_names):
                raise ValueError(f"generator {g} has {g.nvars} variables, ring has {len(self.var_names)}")
            g = g.mod(self.p)
            if not g.is_zero():
                if g.degree < 1:
                    raise ValueError("constant generators give the unit ideal")
                gens.append(g)
        object.__setattr__(self, "gens", tuple(gens))
        self._state["lock"] = threading.RLock()
        self._state["pieces"] = {}
        self._state["mult"] = {}

    # constructors -----------------------------------------------------

    @classmethod
    def polynomial_ring(cls, e: int, p: int = DEFAULT_PRIME, names: Sequence[str] | None = None, name: str = "B"):
        return cls(p, tuple(names or default_var_names(e)), (), name)

    def with_gens(self, gens: Iterable[HomogPoly], name: str | None = None) -> RingSpec:
        return RingSpec(self.p, self.var_names, tuple(gens), name or self.name)

    def ambient(self) -> RingSpec:
        return RingSpec(self.p, self.var_names, (), self.name + "_ambient")

    # basic data -------------------------------------------------------

    @property
    def e(self) -> int:
        return len(self.var_names)

    def gen_degrees(self) -> list[int]:
        return [g.degree for g in self.gens]

    def max_gen_degree(self) -> int:
        return max(self.gen_degrees(), default=0)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_polynomial_ring(self) -> bool:
        return not self.gens

    def var(self, name_or_index) -> HomogPoly:
        i = name_or_index if isinstance(name_or_index, int) else self.var_names.index(name_or_index)
        return HomogPoly.var(i, self.e)

    def __repr__(self):
        return f"RingSpec({self.name!r}, p={self.p}, vars={self.var_names}, {len(self.gens)} gens)"

    # graded pieces ----------------------------------------------------

    def piece(self, j: int) -> Piece:
        pieces = self._state["pieces"]
        if j in pieces:
            return pieces[j]
        with self._state["lock"]:
            start = max((k for k in pieces if k <= j), default=-1) + 1
            for k in range(start, j + 1):
                if k not in pieces:
                    pieces[k] = self._compute_piece(k)
            return pieces[j]

    def dim(self, j: int) -> int:
        return self.piece(j).dim if j >= 0 else 0

    def _compute_piece(self, j: int) -> Piece:
        e, p = self.e, self.p
        monos = monomials(e, j)
        n = len(monos)
        empty = np.zeros(0, dtype=np.int64)
        prev = self._state["pieces"].get(j - 1)
        if j > 0 and prev is not None and prev.dim == 0 and self.max_gen_degree() < j:
            return Piece(j, empty, np.zeros((n, 0), dtype=np.int64), None, None, empty, empty)
        if self.is_monomial():
            in_ideal = np.zeros(n, dtype=bool)
            marks = self._state.setdefault("in_ideal", {})
            if j > 0:
                prev_in = marks.get(j - 1)
                if prev_in is not None:
                    for v in range(e):
                        in_ideal[up_map(e, j - 1, v)] |= prev_in
            idx = monomial_index(e, j)
            for g in self.gens:
                if g.degree == j:
                    in_ideal[idx[next(iter(g.terms))]] = True
            marks[j] = in_ideal
            basis = np.flatnonzero(~in_ideal)
            pivots = list(np.flatnonzero(in_ideal))
            ideal = np.zeros((len(pivots), n), dtype=np.int64)
            ideal[np.arange(len(pivots)), pivots] = 1
            nf = np.zeros((n, len(basis)), dtype=np.int64)
            nf[basis, np.arange(len(basis))] = 1
        else:
            rows = []
            if j > 0 and prev is not None and prev.ideal is not None and len(prev.ideal):
                for v in range(e):
                    r = np.zeros((len(prev.ideal), n), dtype=np.int64)
                    r[:, up_map(e, j - 1, v)] = prev.ideal
                    rows.append(r)
            for g in self.gens:
                if g.degree == j:
                    rows.append(g.vector(p)[None, :])
            if rows:
                ideal, pivots = rref(np.vstack(rows), p)
            else:
                ideal, pivots = np.zeros((0, n), dtype=np.int64), []
            pivset = set(pivots)
            basis = np.array([c for c in range(n) if c not in pivset], dtype=np.int64)
            nf = np.zeros((n, len(basis)), dtype=np.int64)
            nf[basis, np.arange(len(basis))] = 1
            if len(pivots) and len(basis):
                nf[pivots] = (-ideal[:, basis]) % p
        div_var = np.zeros(len(basis), dtype=np.int64)
        div_idx = np.zeros(len(basis), dtype=np.int64)
        if j > 0 and len(basis):
            pos_prev = {int(c): i for i, c in enumerate(prev.basis)}
            idx_prev = monomial_index(e, j - 1)
            for i, c in enumerate(basis):
                m = monos[c]
                v = next(k for k, a in enumerate(m) if a)
                q = list(m)
                q[v] -= 1
                div_var[i] = v
                # standard monomials are closed under division
                div_idx[i] = pos_prev[idx_prev[tuple(q)]]
        return Piece(j, basis, nf, ideal, list(pivots), div_var, div_idx)

    def ideal_rows(self, j: int) -> tuple[np.ndarray, list[int]]:
        """RREF basis of I_j inside the degree-j monomials."""
        pc = self.piece(j)
        if pc.ideal is None:
            n = len(monomials(self.e, j))
            return np.eye(n, dtype=np.int64), list(range(n))
        return pc.ideal, pc.pivots

    def mult(self, v: int, t: int) -> np.ndarray:
        """Matrix of multiplication by x_v from A_t to A_{t+1} (row-vector convention)."""
        key = (v, t)
        cache = self._state["mult"]
        if key not in cache:
            src = self.piece(t)
            dst = self.piece(t + 1)
            if src.dim == 0 or dst.dim == 0:
                x = np.zeros((src.dim, dst.dim), dtype=np.int64)
            else:
                x = dst.nf[up_map(self.e, t, v)[src.basis]]
            cache[key] = x
        return cache[key]

    def basis_monomials(self, j: int) -> list[tuple[int, ...]]:
        monos = monomials(self.e, j)
        return [monos[c] for c in self.piece(j).basis]

    def hilbert_values(self, jmax: int) -> list[int]:
        return [self.dim(j) for j in range(jmax + 1)]

    def top_degree(self, limit: int) -> int | None:
        """Largest j with A_j != 0 when A_{j+1} = 0 is reached by degree ``limit``."""
        for j in range(limit + 1):
            if self.dim(j) == 0:
                return j - 1
        return None

    def normal_form(self, f: HomogPoly) -> np.ndarray:
        """Coordinates of f in the standard basis of A_deg(f)."""
        return (f.vector(self.p) @ self.piece(f.degree).nf) % self.p


class DegreeBasis(NamedTuple):
    monomials: list[tuple[int, ...]]
    reduction: np.ndarray


def degree_basis(A: RingSpec, j: int) -> DegreeBasis:
    """Standard monomials of A_j and the reduction map from all degree-j monomials."""
    return DegreeBasis(A.basis_monomials(j), A.piece(j).nf)


# ---------------------------------------------------------------------------
# subspace helpers


def span_dim(p: int, *blocks: np.ndarray) -> int:
    rows = [b for b in blocks if b is not None and len(b)]
    if not rows:
        return 0
    return len(rref(np.vstack(rows), p)[1])


def times_linear(rows: np.ndarray, e: int, j: int, linear: Sequence[HomogPoly] | None = None) -> np.ndarray:
    """Rows of degree j (over monomials) multiplied by every variable, or by given linear forms."""
    n = len(monomials(e, j + 1))
    if rows is None or len(rows) == 0:
        return np.zeros((0, n), dtype=np.int64)
    out = []
    if linear is None:
        for v in range(e):
            r = np.zeros((len(rows), n), dtype=np.int64)
            r[:, up_map(e, j, v)] = rows
            out.append(r)
    else:
        for ell in linear:
            acc = np.zeros((len(rows), n), dtype=np.int64)
            for k, c in ell.terms.items():
                v = k.index(1)
                acc[:, up_map(e, j, v)] += rows * c
            out.append(acc)
    return np.vstack(out)


def ideal_generated(ring: RingSpec, forms: Sequence[HomogPoly], j: int) -> np.ndarray:
    """Rows spanning the degree-j piece of the ideal generated by ``forms`` in the polynomial ring."""
    return ring.with_gens(forms, "tmp").ideal_rows(j)[0]


# ---------------------------------------------------------------------------
# Hilbert data and dimension


@dataclass(frozen=True)
class HilbertData:
    values: tuple[int, ...]
    krull_dim: int | None
    numerator: BiPoly | None
    multiplicity: int | None
    exact: bool

    def series(self) -> RationalSeries | None:
        if self.numerator is None or self.krull_dim is None:
            return None
        return RationalSeries(self.numerator, univariate(1, -1) ** self.krull_dim)


def monomial_krull_dimension(A: RingSpec) -> int:
    supports = [g.support() for g in A.gens]
    for size in range(A.e, -1, -1):
        for s in combinations(range(A.e), size):
            ss = set(s)
            if all(not sup <= ss for sup in supports):
                return size
    return 0


def default_cap(A: RingSpec) -> int:
    return sum(A.gen_degrees()) + A.e + 4


def random_linear_forms(e: int, count: int, p: int, rng: SplitMix64) -> list[HomogPoly]:
    out = []
    for _ in range(count):
        coeffs = rng.residues(e, p)
        terms = {}
        for v, c in enumerate(coeffs):
            if c:
                exps = [0] * e
                exps[v] = 1
                terms[tuple(exps)] = c
        out.append(HomogPoly(terms, e, 1))
    return out


def krull_dimension(A: RingSpec, trials: int = 5, cap: int | None = None, seed: int = 0) -> Tagged:
    """Krull dimension: exact for monomial ideals, random linear sections otherwise.

    For non-monomial input the answer is the least number of random linear
    forms that make the quotient vanish by degree ``cap``, majority over trials.
    It is reported as exact when it meets the lower bound e - #generators.
    """
    if A.is_monomial():
        return Exact(monomial_krull_dimension(A))
    cap = default_cap(A) if cap is None else cap
    if A.top_degree(cap) is not None:
        return Exact(0)
    votes: dict[int, int] = {}
    for t in range(trials):
        forms = random_linear_forms(A.e, A.e, A.p, trial_rng(seed, t))
        found = None
        for s in range(1, A.e + 1):
            B = A.with_gens(A.gens + tuple(forms[:s]), "section")
            if B.top_degree(cap) is not None:
                found = s
                break
        if found is not None:
            votes[found] = votes.get(found, 0) + 1
    if not votes:
        raise CapExceeded(f"no linear section of {A.name} became Artinian by degree {cap}")
    best = max(sorted(votes), key=lambda k: votes[k])
    lower = max(0, A.e - len(A.gens))
    return Exact(best) if best == lower else Heuristic(best)


def hilbert(A: RingSpec, jmax: int, cap_hint: int | None = None, trials: int = 5, seed: int = 0) -> HilbertData:
    values = tuple(A.hilbert_values(jmax))
    try:
        kd = krull_dimension(A, trials=trials, cap=cap_hint, seed=seed)
    except CapExceeded:
        return HilbertData(values, None, None, None, False)
    dim = kd.value
    # the numerator is read from a window that may reach past jmax
    track = max(jmax, default_cap(A) + A.e + 2)
    # multiply by (1 - t)^dim and truncate
    coeffs = A.hilbert_values(track)
    for _ in range(dim):
        coeffs = [coeffs[0]] + [coeffs[i] - coeffs[i - 1] for i in range(1, len(coeffs))]
    tail = A.e + 2
    if len(coeffs) <= tail or any(coeffs[-tail:]):
        return HilbertData(values, dim, None, None, False)
    num = BiPoly.from_z_coeffs(coeffs)
    return HilbertData(values, dim, num, sum(coeffs), kd.exact)


def ci_prediction(e: int, degrees: Sequence[int], jmax: int) -> list[int]:
    num = BiPoly.const(1)
    for n in degrees:
        num = num * (BiPoly.const(1) - BiPoly.monomial(0, n))
    s = RationalSeries(num, univariate(1, -1) ** e)
    return [int(c.constant_term()) for c in expand(s, jmax)]


def is_regular_sequence(e: int, forms: Sequence[HomogPoly], trials: int = 5, p: int = DEFAULT_PRIME,
                        seed: int = 0, cap: int | None = None) -> Tagged:
    """Decide whether homogeneous forms are a regular sequence in F_p[x_1..x_e]."""
    forms = [f.mod(p) for f in forms]
    s = len(forms)
    if s == 0:
        return Exact(True)
    if any(f.is_zero() or f.degree < 1 for f in forms):
        return Exact(False)
    if s > e:
        return Exact(False)
    names = default_var_names(e)
    target = sum(f.degree - 1 for f in forms) + 1
    if s == e:
        B = RingSpec(p, names, tuple(forms), "seq")
        return Exact(B.dim(target) == 0)
    passed = 0
    for t in range(trials):
        extra = random_linear_forms(e, e - s, p, trial_rng(seed, t))
        B = RingSpec(p, names, tuple(forms) + tuple(extra), "seq")
        if B.dim(target) == 0:
            passed += 1
    if passed == trials:
        return Probabilistic(True)
    cap = sum(f.degree for f in forms) + e + 4 if cap is None else cap
    B = RingSpec(p, names, tuple(forms), "seq")
    pred = ci_prediction(e, [f.degree for f in forms], cap)
    if any(B.dim(j) > pred[j] for j in range(cap + 1)):
        return Exact(False)
    return Probabilistic(False)


def quadratic_part(A: RingSpec) -> RingSpec:
    """F_p[x]/(I_2): the ring cut out by the degree-2 piece of the ideal."""
    rows, _ = A.ideal_rows(2) if A.gens else (np.zeros((0, 0), dtype=np.int64), [])
    gens = [HomogPoly.from_vector(r, A.e, 2, A.p) for r in rows]
    return A.with_gens(gens, A.name + "_quad")


def min_multiplicity_check(e: int, quadrics: Sequence[HomogPoly], trials: int = 5,
                           p: int = DEFAULT_PRIME, seed: int = 0) -> bool:
    """Quadrics are linearly independent and form a regular sequence."""
    if any(f.degree != 2 for f in quadrics):
        raise ValueError("min_multiplicity_check expects quadrics")
    if not quadrics:
        return True
    vecs = np.vstack([f.vector(p) for f in quadrics])
    if span_dim(p, vecs) < len(quadrics):
        return False
    return bool(is_regular_sequence(e, quadrics, trials, p, seed).value)


def minimal_generator_count(A: RingSpec) -> int:
    """Number of minimal generators of I (rel of the presentation)."""
    total = 0
    for j in range(1, A.max_gen_degree() + 1):
        rows, _ = A.ideal_rows(j)
        prev, _ = A.ideal_rows(j - 1)
        total += len(rows) - span_dim(A.p, times_linear(prev, A.e, j - 1))
    return total
