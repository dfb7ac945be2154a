"""Independent reference computations for the tests.

Nothing here imports the package under test: linear algebra is plain Python
lists mod p, monomials are enumerated with itertools, and Betti numbers over
a polynomial ring come from Koszul homology rather than from a resolution.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement


def rank_mod(rows, p):
    m = [[x % p for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rref_mod(rows, p):
    m = [[x % p for x in r] for r in rows]
    pivots, rank = [], 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    return m[:rank], pivots


def monos(e, d):
    out = []
    for combo in combinations_with_replacement(range(e), d):
        x = [0] * e
        for v in combo:
            x[v] += 1
        out.append(tuple(x))
    return out


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Quotient:
    """B/J for B = F_p[x_1..x_e], generators given as {exponent tuple: coeff} dicts."""

    def __init__(self, e, gens, p):
        self.e, self.gens, self.p = e, gens, p
        self.cache = {}

    def piece(self, d):
        if d in self.cache:
            return self.cache[d]
        ms = monos(self.e, d)
        idx = {m: i for i, m in enumerate(ms)}
        rows = []
        for g in self.gens:
            gd = sum(next(iter(g)))
            if gd > d:
                continue
            for m in monos(self.e, d - gd):
                r = [0] * len(ms)
                for k, c in g.items():
                    r[idx[add(k, m)]] += c
                rows.append(r)
        red, piv = rref_mod(rows, self.p) if rows else ([], [])
        basis = [c for c in range(len(ms)) if c not in set(piv)]
        self.cache[d] = (ms, idx, red, piv, basis)
        return self.cache[d]

    def dim(self, d):
        return len(self.piece(d)[4]) if d >= 0 else 0

    def nf(self, mono):
        """Coordinates of a monomial in the standard basis of its degree."""
        ms, idx, red, piv, basis = self.piece(sum(mono))
        c = idx[mono]
        pos = {b: i for i, b in enumerate(basis)}
        out = [0] * len(basis)
        if c in pos:
            out[pos[c]] = 1
            return out
        row = red[piv.index(c)]
        for b, i in pos.items():
            out[i] = (-row[b]) % self.p
        return out

    def hilbert(self, jmax):
        return [self.dim(d) for d in range(jmax + 1)]


def koszul_betti(e, gens, p, imax, jmax):
    """beta^B_{i,j}(B/J) = dim H_i(x; B/J)_j for i <= imax, j <= jmax."""
    Q = Quotient(e, gens, p)

    def basis(i, j):
        d = j - i
        if d < 0 or i < 0 or i > e:
            return []
        ms, idx, red, piv, bas = Q.piece(d)
        return [(S, ms[b]) for S in combinations(range(e), i) for b in bas]

    def diff(i, j):
        src, dst = basis(i, j), basis(i - 1, j)
        if not src or not dst:
            return 0
        dpos = {}
        for n, (S, m) in enumerate(dst):
            dpos.setdefault(S, {})[m] = n
        d = j - i + 1
        ms, idx, red, piv, bas = Q.piece(d)
        bas_monos = [ms[b] for b in bas]
        rows = []
        for S, m in src:
            r = [0] * len(dst)
            for k, v in enumerate(S):
                T = S[:k] + S[k + 1:]
                sign = -1 if k % 2 else 1
                x = list(m)
                x[v] += 1
                coords = Q.nf(tuple(x))
                for c, bm in zip(coords, bas_monos):
                    if c:
                        r[dpos[T][bm]] += sign * c
            rows.append(r)
        return rank_mod(rows, p)

    out = {}
    for i in range(imax + 1):
        for j in range(jmax + 1):
            n = len(basis(i, j)) - diff(i, j) - diff(i + 1, j)
            if n:
                out[(i, j)] = n
    return out


def series_coeffs(num, den, n):
    """Power-series coefficients of num/den (lists of ints, z^0 first), den[0] = +-1."""
    out = []
    for i in range(n + 1):
        c = num[i] if i < len(num) else 0
        for k in range(1, min(i, len(den) - 1) + 1):
            c -= den[k] * out[i - k]
        out.append(c // den[0])
    return out


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_pow(a, n):
    out = [1]
    for _ in range(n):
        out = poly_mul(out, a)
    return out
