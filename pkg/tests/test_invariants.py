import pytest

from bettilab.algebra import HomogPoly, RingSpec
from bettilab.constructions import golod_quotient_ideal, minors_ideal, optimal_family, power_of_maximal_ideal, staircase
from bettilab.errors import BadParameters, NotASubideal
from bettilab.formulas import adequate_ideal_series, det_power_series
from bettilab.invariants import (
    componentwise_series,
    eliminate_linear_part,
    hilbert_series,
    invariants,
    loewy_bound_check,
    m_invariant,
    regular_poincare,
)
from bettilab.series import ONE, Y, Z, BiPoly, RationalSeries, univariate
from conftest import as_dicts, ring
from oracles import koszul_betti


def m_squared_pair():
    R = ring("u1,u2", "u1^2, u2^2")
    S = ring("u1,u2", "u1^2, u1*u2, u2^2")
    return R, S


class TestInvariants:
    def test_ci_pair(self):
        R, S = m_squared_pair()
        rep = invariants(R, S)
        assert rep.values() == (2, 2, 2, 2, 2, 2, 2)
        assert rep.tag() == "exact"
        assert rep.pqj == univariate(3, 2)
        assert rep.series == RationalSeries(univariate(1, -1, 1), univariate(1, -1) ** 2).reduced()
        assert (rep.cx, rep.gn) == (2, 0)

    def test_without_s(self):
        rep = invariants(ring("x,y,z", "x^2, y^3"))
        assert rep.values() == (3, 2, 1, 2, None, None, None)
        assert rep.series is None

    def test_not_subideal(self):
        with pytest.raises(NotASubideal):
            invariants(ring("x,y", "x^2"), ring("x,y", "y^2"))

    def test_mismatched_rings(self):
        with pytest.raises(BadParameters):
            invariants(ring("x,y", "x^2"), ring("x,z", "x"))

    @pytest.mark.parametrize("params", [(2, 2, 1, 1), (3, 3, 1, 0), (3, 2, 2, 2), (3, 3, 3, 0), (3, 3, 2, 1)])
    def test_optimal_families(self, params):
        f = optimal_family(*params)
        rep = invariants(f.R, f.Stilde)
        d, c, q, a = params
        v = rep.values()
        assert (v[0], v[1], v[2], v[6]) == (d, c, q, a)
        assert v[4] == f.e
        assert all(getattr(rep, k).exact for k in ("d", "c", "q", "aPhi"))
        assert rep.gn == f.predicted_gn

    def test_json(self):
        R, S = m_squared_pair()
        js = invariants(R, S).to_json()
        assert js["aPhi"] == {"value": 2, "tag": "exact"}
        assert js["pQJ"] == "3 + 2*z" and js["gn"] == 0


class TestRegularPresentation:
    def test_linear_elimination(self):
        S = ring("t,u", "t - u, u^2")
        Sq = eliminate_linear_part(S)
        assert Sq.e == 1
        assert [g.terms for g in Sq.gens] == [{(2,): 1}]

    def test_all_linear(self):
        assert regular_poincare(ring("x,y", "x, y")).value == BiPoly()

    def test_m_invariant_against_oracle(self):
        # J = (x)^2 in two variables: P = 3 + 2z, z^2 P - 1 = (1+z)^2 (2z - 1)
        S = RingSpec.polynomial_ring(2).with_gens(power_of_maximal_ideal(2, 2))
        pq = regular_poincare(S)
        oracle = koszul_betti(2, as_dicts(S.gens), S.p, 3, 6)
        total = {}
        for (i, _), c in oracle.items():
            if i >= 1:
                total[(0, i - 1)] = total.get((0, i - 1), 0) + c
        assert pq.value == BiPoly(total) == univariate(3, 2)
        assert m_invariant(pq.value) == 2


class TestLoewy:
    def test_ci(self):
        R, _ = m_squared_pair()
        assert loewy_bound_check(R) == (1, 2, True)

    def test_codim_one(self):
        R = ring("x,y", "x^3")
        lhs, rhs, ok = loewy_bound_check(R, [HomogPoly.var(1, 2)])
        assert lhs == 0 and ok

    def test_with_linear_forms(self):
        R = ring("x,y,z", "x^2, y^2, z^2")
        # L_1 = (x): rank 1, and x*x already lies in I_2 so only y^2, z^2 survive
        assert loewy_bound_check(R, [HomogPoly.var(0, 3)]) == (2, 3, True)


class TestHilbertSeries:
    def test_artinian_exact(self):
        h = hilbert_series(ring("x,y", "x^2, y^2"))
        assert h == (RationalSeries(univariate(1, 2, 1)), "exact")

    def test_polynomial_ring(self):
        assert hilbert_series(RingSpec.polynomial_ring(2)).value == RationalSeries(ONE, univariate(1, -1) ** 2)

    def test_positive_dimension(self):
        h = hilbert_series(ring("x,y", "x^2"))
        assert h.tag == "heuristic"
        assert h.value == RationalSeries(univariate(1, 1), univariate(1, -1)).reduced()


class TestComponentwise:
    def test_m_squared(self):
        B = RingSpec.polynomial_ring(2)
        assert componentwise_series(B, power_of_maximal_ideal(2, 2)).value == 3 * Y ** 2 + 2 * Y ** 3 * Z

    @pytest.mark.parametrize("h,e", [(1, 2), (2, 3), (3, 3)])
    def test_staircase(self, h, e):
        B = RingSpec.polynomial_ring(e)
        assert componentwise_series(B, minors_ideal(staircase(2, h, e))).value == adequate_ideal_series(2, h, e)

    def test_minors_plus_cubes(self):
        e = 2
        B = RingSpec.polynomial_ring(e)
        J = golod_quotient_ideal(staircase(2, 1, e))
        got = componentwise_series(B, list(J.gens)).value
        oracle = koszul_betti(e, as_dicts(J.gens), J.p, e + 1, 8)
        assert got == BiPoly({(j, i - 1): c for (i, j), c in oracle.items() if i >= 1})
        assert got.subs_y(1).shift_z(2) == det_power_series(2, 1, e)
