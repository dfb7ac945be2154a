from concurrent.futures import ThreadPoolExecutor
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettilab.algebra import (
    HomogPoly,
    RingSpec,
    degree_basis,
    hilbert,
    is_regular_sequence,
    krull_dimension,
    min_multiplicity_check,
    minimal_generator_count,
    monomials,
    quadratic_part,
)
from bettilab.constructions import golod_quotient_ideal, minors_ideal, staircase
from bettilab.errors import NotPrime
from bettilab.series import BiPoly, univariate
from conftest import as_dicts, ring
from oracles import Quotient


class TestHomogPoly:
    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            HomogPoly({(2, 0): 1, (0, 3): 1})

    def test_arithmetic(self):
        x, y = HomogPoly.var(0, 2), HomogPoly.var(1, 2)
        assert (x + y) * (x - y) == x ** 2 - y ** 2
        assert (x * y).degree == 2
        assert (x - x).is_zero()

    def test_text(self):
        A = ring("u1,u2", "u1^2 - 3*u1*u2")
        assert A.gens[0].to_text(A.var_names) == "u1^2 - 3*u1*u2"

    def test_degrevlex_order(self):
        assert monomials(3, 2) == ((2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2))


class TestRingSpec:
    def test_bad_prime(self):
        with pytest.raises(NotPrime):
            RingSpec.polynomial_ring(2, p=91)

    def test_wrong_variable_count(self):
        with pytest.raises(ValueError):
            RingSpec(101, ("x", "y"), (HomogPoly.var(0, 3),))

    def test_zero_generators_dropped(self):
        A = RingSpec(7, ("x",), (HomogPoly({(2,): 7}),))
        assert A.gens == ()


class TestDegreeBasis:
    def test_ci(self):
        assert degree_basis(ring("x,y", "x^2, y^2"), 2).monomials == [(1, 1)]

    def test_x2_xy(self):
        assert degree_basis(ring("x,y", "x^2, x*y"), 3).monomials == [(0, 3)]

    def test_degree_zero(self):
        assert degree_basis(ring("x,y,z", "x*y"), 0).monomials == [(0, 0, 0)]

    def test_reduction_map(self):
        A = ring("x,y", "x^2 - y^2")
        b = degree_basis(A, 2)
        # x^2 reduces onto y^2
        assert b.monomials == [(1, 1), (0, 2)]
        assert A.normal_form(A.var("x") ** 2).tolist() == [0, 1]


class TestHilbert:
    def test_ci(self):
        h = hilbert(ring("x,y", "x^2, y^2"), 6)
        assert h.values == (1, 2, 1, 0, 0, 0, 0)
        assert h.krull_dim == 0
        assert h.numerator == univariate(1, 1) ** 2
        assert h.multiplicity == 4 and h.exact

    def test_polynomial_ring(self):
        h = hilbert(RingSpec.polynomial_ring(3), 8)
        assert h.values == tuple(comb(j + 2, 2) for j in range(9))
        assert h.krull_dim == 3 and h.numerator == BiPoly.const(1)

    def test_adequate_minors(self):
        A = golod_quotient_ideal(staircase(2, 2, 3))
        A = A.with_gens(minors_ideal(staircase(2, 2, 3)))
        h = hilbert(A, 8)
        assert (h.krull_dim, h.numerator) == (1, univariate(1, 2))

    def test_small_jmax_still_has_numerator(self):
        h = hilbert(ring("x,y,z", "x^2, y^2, z^2"), 1)
        assert h.values == (1, 3)
        assert h.multiplicity == 8

    def test_series_reproduces_values(self):
        A = ring("x,y,z", "x^2, x*y, y^3")
        h = hilbert(A, 12)
        from bettilab.series import expand
        got = [c.constant_term() for c in expand(h.series(), 12)]
        assert tuple(got) == h.values

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 3), st.data())
    def test_against_oracle(self, e, data):
        gens = data.draw(st.lists(
            st.dictionaries(st.sampled_from(monomials(e, 2)), st.integers(1, 100), min_size=1, max_size=3),
            min_size=0, max_size=3))
        A = RingSpec(101, tuple(f"x{i}" for i in range(e)), tuple(HomogPoly(g, e, 2) for g in gens))
        assert list(A.hilbert_values(6)) == Quotient(e, as_dicts(A.gens), 101).hilbert(6)

    def test_additivity_on_multiplication_by_x(self):
        # 0 -> A/(0:x)(-1) -> A -> A/xA -> 0 gives H_A(j) = H_{A/x}(j) + H_A(j-1) - H_{(0:x)}(j-1)
        # for a nonzerodivisor the last term vanishes
        A = ring("x,y,z", "y^2 - x*z, z^3 - x^2*y")
        B = ring("x,y,z", "y^2 - x*z, z^3 - x^2*y, x")
        assert is_regular_sequence(3, list(A.gens) + [A.var("x")]).value
        ha, hb = A.hilbert_values(10), B.hilbert_values(10)
        assert all(ha[j] == hb[j] + ha[j - 1] for j in range(1, 11))


class TestRegularSequence:
    def test_ci(self):
        assert is_regular_sequence(2, list(ring("x,y", "x^2, y^2").gens)) == (True, "exact")

    def test_not_regular(self):
        assert is_regular_sequence(2, list(ring("x,y", "x^2, x*y").gens)) == (False, "exact")

    def test_too_many(self):
        assert is_regular_sequence(1, list(ring("x", "x^2, x^3").gens)).value is False

    def test_partial_sequence_probabilistic(self):
        A = ring("a,b,c,d", "a*c - b^2, b*d - c^2")
        assert is_regular_sequence(4, list(A.gens)) == (True, "probabilistic")

    def test_partial_failure_exact(self):
        A = ring("a,b,c", "a*b, a*c")
        assert is_regular_sequence(3, list(A.gens)) == (False, "exact")


class TestKrull:
    def test_monomial(self):
        assert krull_dimension(ring("x,y,z", "x^2, y^2")) == (1, "exact")

    def test_zero_ideal(self):
        assert krull_dimension(RingSpec.polynomial_ring(4)) == (4, "exact")

    def test_artinian(self):
        assert krull_dimension(golod_quotient_ideal(staircase(2, 2, 3))).value == 0

    def test_twisted_cubic(self):
        A = ring("a,b,c,d", "a*c - b^2, b*d - c^2, a*d - b*c")
        assert krull_dimension(A).value == 2


class TestQuadraticPart:
    def test_drops_cubics(self):
        Q = quadratic_part(ring("x,y", "x^2, y^3"))
        assert [g.terms for g in Q.gens] == [{(2, 0): 1}]

    def test_minors_plus_cube(self):
        U = staircase(2, 2, 3)
        A = golod_quotient_ideal(U)
        Q = quadratic_part(A)
        span = lambda gens: np.vstack([g.vector(A.p) for g in gens])
        from bettilab.algebra import span_dim
        m = minors_ideal(U)
        assert len(Q.gens) == len(m)
        assert span_dim(A.p, span(Q.gens), span(m)) == len(m)


class TestMinMultiplicity:
    def test_ci(self):
        assert min_multiplicity_check(2, list(ring("x,y", "x^2, y^2").gens))

    def test_dependent(self):
        A = ring("x,y", "x^2, x^2 + x*y, x*y")
        assert not min_multiplicity_check(2, list(A.gens))

    def test_non_quadric(self):
        with pytest.raises(ValueError):
            min_multiplicity_check(1, list(ring("x", "x^3").gens))


def test_minimal_generator_count():
    assert minimal_generator_count(ring("x,y", "x^2, x*y, x^3, x^2*y")) == 2
    assert minimal_generator_count(RingSpec.polynomial_ring(2)) == 0


def test_concurrent_piece_access():
    A = ring("x,y,z,w", "x^2 - y*z, z^2 - w*x, x*y*w")
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda j: A.dim(j), [7, 3, 7, 5, 7, 2, 6, 7] * 4))
    fresh = ring("x,y,z,w", "x^2 - y*z, z^2 - w*x, x*y*w")
    assert results == [fresh.dim(j) for j in [7, 3, 7, 5, 7, 2, 6, 7] * 4]
