"""Exact linear algebra over a prime field F_p on numpy int64 arrays.

Residues are kept in [0, p).  With p < 2^31 every product of two residues fits
in a signed 64-bit integer, so elimination never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import NotPrime

DEFAULT_PRIME = 32003
_MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if p >= _MAX_PRIME:
        raise NotPrime(f"modulus {p} must be below 2^31")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def inverse(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` without int64 overflow (inner dimension is chunked)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = a.shape[1]
    if n == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (2**63 - 1) // ((p - 1) ** 2 or 1))
    if n <= step:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, n, step):
        out = (out + a[:, s:s + step] @ b[s:s + step]) % p
    return out


def rref(a: np.ndarray, p: int, copy: bool = True) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the echelon form and the list of pivot columns.
    Pivots are chosen as the first row with a nonzero entry in each column, so
    the result is deterministic.
    """
    m = np.array(a, dtype=np.int64, copy=copy) % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r, c:] = (m[r, c:] * inverse(piv, p)) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            f = m[others, c][:, None]
            m[others, c:] = (m[others, c:] - f * m[r, c:]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def reduce_rows(rows: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Reduce ``rows`` modulo the row space of an RREF ``basis`` (pivot entries cleared)."""
    rows = np.array(rows, dtype=np.int64) % p
    if not pivots or rows.shape[0] == 0:
        return rows
    coeff = rows[:, pivots]
    return (rows - matmul_mod(coeff, basis, p)) % p


def kernel_from_rref(r: np.ndarray, pivots: list[int], ncols: int, p: int) -> np.ndarray:
    """Kernel basis as rows (one per free column, identity on free columns)."""
    free = [c for c in range(ncols) if c not in set(pivots)]
    k = np.zeros((len(free), ncols), dtype=np.int64)
    if not free:
        return k
    k[np.arange(len(free)), free] = 1
    if pivots:
        k[:, pivots] = (-r[:, free].T) % p
    return k


@dataclass(frozen=True, eq=False)
class MatrixFp:
    """A matrix over F_p with residues in [0, p)."""

    p: int
    data: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        arr = np.array(self.data, dtype=np.int64) % self.p
        if arr.ndim != 2:
            raise ValueError("MatrixFp needs a two-dimensional array")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = DEFAULT_PRIME) -> MatrixFp:
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> MatrixFp:
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __matmul__(self, other: MatrixFp) -> MatrixFp:
        if self.p != other.p:
            raise ValueError("matrices over different primes")
        return MatrixFp(self.p, matmul_mod(self.data, other.data, self.p))

    def __eq__(self, other):
        if not isinstance(other, MatrixFp):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def transpose(self) -> MatrixFp:
        return MatrixFp(self.p, self.data.T)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self):
        return f"MatrixFp(p={self.p}, {self.tolist()})"


def rank(m: MatrixFp) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    a = m.data if m.rows <= m.cols else m.data.T
    return len(rref(a, m.p)[1])


def kernel_basis(m: MatrixFp) -> MatrixFp:
    """Columns spanning the right kernel, in reduced column echelon form.

    Free variables are taken in increasing column order and each kernel vector
    has a 1 in its own free column and 0 in the other free columns.
    """
    if m.rows == 0:
        return MatrixFp.identity(m.cols, m.p)
    r, piv = rref(m.data, m.p)
    k = kernel_from_rref(r, piv, m.cols, m.p)
    return MatrixFp(m.p, k.T.reshape(m.cols, k.shape[0]))


def row_space(m: MatrixFp) -> MatrixFp:
    r, _ = rref(m.data, m.p)
    return MatrixFp(m.p, r.reshape(len(r), m.cols))
