from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettilab.algebra import HomogPoly, RingSpec, monomials
from bettilab.constructions import minors_ideal, staircase
from bettilab.errors import TruncationTooTight
from bettilab.resolution import (
    BettiTable,
    first_nonlinear_entry,
    ideal_betti_table,
    is_golod_truncated,
    is_koszul_truncated,
    minimal_betti_table,
    poincare_truncated,
)
from conftest import as_dicts, ring
from oracles import Quotient, koszul_betti


def over_polynomial_ring(A: RingSpec, imax=None, jmax=None):
    B = A.ambient()
    return minimal_betti_table(B, A.gens, imax if imax is not None else A.e + 1, jmax)


class TestAgainstKoszulOracle:
    @pytest.mark.parametrize("vars,ideal", [
        ("x,y", "x^2, y^2"),
        ("x,y", "x^2, x*y"),
        ("x,y,z", "x^2, x*y, y*z, z^3"),
        ("a,b,c,d", "a*c - b^2, b*d - c^2, a*d - b*c"),
        ("x,y,z", "x^2 - y*z, y^2 - x*z, z^2 - x*y"),
    ])
    def test_fixtures(self, vars, ideal):
        A = ring(vars, ideal)
        t = over_polynomial_ring(A, jmax=10)
        assert t.all_complete()
        assert t.entries == koszul_betti(A.e, as_dicts(A.gens), A.p, A.e, 10)

    def test_staircase_minors(self):
        U = staircase(2, 2, 4)
        B = RingSpec.polynomial_ring(4)
        t = ideal_betti_table(B, minors_ideal(U), imax=4, jmax=9)
        oracle = koszul_betti(4, as_dicts(minors_ideal(U)), B.p, 5, 9)
        assert t.entries == {(i - 1, j): c for (i, j), c in oracle.items() if i >= 1}

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 3), st.data())
    def test_random_quadrics(self, e, data):
        gens = data.draw(st.lists(
            st.dictionaries(st.sampled_from(monomials(e, 2)), st.integers(1, 100), min_size=1, max_size=3),
            min_size=1, max_size=3))
        B = RingSpec.polynomial_ring(e, p=101)
        forms = [HomogPoly(g, e, 2) for g in gens]
        t = minimal_betti_table(B, forms, e + 1, 9)
        A = B.with_gens(forms)
        assert t.entries == koszul_betti(e, as_dicts(A.gens), 101, e, 9)


class TestResidueField:
    def test_tate_for_quadric_ci(self):
        t = minimal_betti_table(ring("x,y,z", "x^2, y^2, z^2"), imax=6)
        assert t.totals() == [comb(i + 2, 2) for i in range(7)]
        assert t.all_complete()

    def test_golod_m_squared(self):
        A = RingSpec.polynomial_ring(2).with_gens([HomogPoly({m: 1}, 2, 2) for m in monomials(2, 2)])
        t = minimal_betti_table(A, imax=6)
        assert t.totals() == [2 ** i for i in range(7)]
        assert is_golod_truncated(A, imax=5)

    def test_koszul_flags(self):
        assert is_koszul_truncated(ring("x,y", "x^2, y^2"), imax=5)
        A = ring("x", "x^3")
        assert not is_koszul_truncated(A, imax=4)
        # k over k[x]/(x^3): 1, 1, 1 with generators in degrees 0, 1, 3
        assert first_nonlinear_entry(A, imax=4) == (2, 3)

    def test_polynomial_ring_stops(self):
        t = minimal_betti_table(RingSpec.polynomial_ring(3), imax=6)
        assert t.totals() == [1, 3, 3, 1, 0, 0, 0]
        assert t.all_complete()


class TestConsistency:
    def test_euler_characteristic(self):
        # sum_i (-1)^i beta_{i,j} t^j = H_M(t) / H_B(t) over the polynomial ring
        A = ring("x,y,z", "x^2, x*y, y*z, z^3")
        t = over_polynomial_ring(A, jmax=10)
        hm = Quotient(3, as_dicts(A.gens), A.p).hilbert(10)
        hb = [comb(j + 2, 2) for j in range(11)]
        alt = [sum((-1) ** i * t[(i, j)] for i in range(4)) for j in range(11)]
        conv = [sum(alt[k] * hb[j - k] for k in range(j + 1)) for j in range(11)]
        assert conv == hm

    def test_strict_raises(self):
        A = ring("x,y", "x^2 - y^2")
        with pytest.raises(TruncationTooTight):
            minimal_betti_table(A, imax=4, jmax=2, strict=True)

    def test_incomplete_flagged(self):
        t = minimal_betti_table(ring("x,y", "x^2, y^3"), imax=5, jmax=4)
        assert not t.all_complete()

    def test_unit_module_rejected(self):
        A = ring("x", "x^2")
        with pytest.raises(ValueError):
            minimal_betti_table(A, [HomogPoly({(0,): 1}, 1, 0)])


class TestTableForms:
    def test_shift(self):
        A = ring("x,y", "x^2, y^2")
        t = over_polynomial_ring(A)
        s = t.shifted()
        assert s.entries == {(0, 2): 2, (1, 4): 1}

    def test_json_round_trip(self):
        t = minimal_betti_table(ring("x,y", "x^2, x*y"), imax=4)
        assert BettiTable.from_json(t.to_json()) == BettiTable(t.entries, t.imax, t.jmax, t.complete, t.certified)

    def test_macaulay(self):
        t = over_polynomial_ring(ring("x,y", "x^2, y^2"))
        assert t.macaulay().splitlines() == [
            "       0 1 2 3",
            "total: 1 2 1 0",
            "    0: 1 . . .",
            "    1: . 2 . .",
            "    2: . . 1 .",
        ]

    def test_poincare_poly(self):
        t = minimal_betti_table(ring("x,y", "x^2, y^2"), imax=3)
        p = poincare_truncated(t).poly
        # y^j z^i with j = i on a Koszul ring
        assert p.terms == {(0, 0): 1, (1, 1): 2, (2, 2): 3, (3, 3): 4}
