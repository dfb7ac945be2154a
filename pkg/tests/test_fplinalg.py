import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettilab.errors import NotPrime
from bettilab.fplinalg import MatrixFp, is_prime, kernel_basis, matmul_mod, rank, rref, row_space
from oracles import rank_mod


def M(rows, p=101):
    return MatrixFp(p, np.array(rows, dtype=np.int64).reshape(len(rows), -1))


class TestRank:
    def test_identity(self):
        assert rank(MatrixFp.identity(2, 101)) == 2

    def test_proportional(self):
        assert rank(M([[1, 2], [2, 4]])) == 1

    def test_small_prime(self):
        # det [[1,1],[1,2]] = 1, a unit mod 3
        assert rank(M([[1, 1], [1, 2]], 3)) == 2
        assert rank(M([[1, 1], [2, 2]], 3)) == 1

    def test_empty(self):
        assert rank(MatrixFp.zeros(0, 4, 7)) == 0
        assert rank(MatrixFp.zeros(3, 0, 7)) == 0


class TestKernel:
    def test_zero_matrix(self):
        k = kernel_basis(MatrixFp.zeros(2, 3, 101))
        assert k.shape == (3, 3)
        assert k == MatrixFp.identity(3, 101)

    def test_rank_nullity(self):
        k = kernel_basis(M([[1, 1, 0]]))
        assert k.shape == (3, 2)
        assert (M([[1, 1, 0]]) @ k).is_zero()

    def test_trivial(self):
        assert kernel_basis(MatrixFp.identity(2, 101)).shape == (2, 0)

    def test_free_columns_in_order(self):
        k = kernel_basis(M([[1, 2, 3, 4]], 7))
        # identity on free columns 1, 2, 3
        assert k.tolist()[1:] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([101, 32003]), st.integers(1, 12), st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
def test_rank_against_plain_python(p, r, c, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(r, c))
    # force some dependence
    if r > 2:
        a[-1] = (a[0] * 3 + a[1]) % p
    m = MatrixFp(p, a)
    assert rank(m) == rank_mod(a.tolist(), p)
    k = kernel_basis(m)
    assert rank(m) + k.cols == c
    assert (m @ k).is_zero()


@pytest.mark.parametrize("p", [101, 32003])
def test_large_kernel_and_shuffle(p):
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, size=(200, 150)) @ rng.integers(0, 3, size=(150, 200)) % p
    m = MatrixFp(p, a)
    r = rank(m)
    k = kernel_basis(m)
    assert r + k.cols == 200
    assert (m @ k).is_zero()
    perm = rng.permutation(200)
    assert rank(MatrixFp(p, a[perm])) == r


def test_matmul_no_overflow():
    p = 32003
    a = np.full((3, 5000), p - 1, dtype=np.int64)
    b = np.full((5000, 2), p - 1, dtype=np.int64)
    assert (matmul_mod(a, b, p) == (5000 % p)).all()


def test_rref_is_reduced():
    r, piv = rref(np.array([[2, 4, 1], [1, 2, 0], [0, 0, 3]]), 7)
    assert piv == [0, 2]
    assert r.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_row_space_and_entries_reduced():
    m = MatrixFp(7, np.array([[8, -1], [1, 6]]))
    assert m.tolist() == [[1, 6], [1, 6]]
    assert row_space(m).rows == 1


def test_prime_checks():
    assert is_prime(32003) and not is_prime(91)
    with pytest.raises(NotPrime):
        MatrixFp.zeros(1, 1, 91)
    with pytest.raises(NotPrime):
        MatrixFp.zeros(1, 1, 2 ** 31 + 11)


def test_matrix_is_immutable():
    m = M([[1, 2]])
    with pytest.raises((ValueError, AttributeError)):
        m.data[0, 0] = 5
