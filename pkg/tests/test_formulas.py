from math import comb

import pytest

from bettilab.constructions import golod_quotient_ideal, minors_ideal, power_of_maximal_ideal, staircase
from bettilab.errors import NotPolynomial
from bettilab.formulas import (
    GringParams,
    adequate_ideal_series,
    det_power_series,
    golod_pk,
    golod_residue_series,
    graded_ci_pk,
    granularity_bound,
    gring_granularity,
    linear_ideal_series,
    m_invariant_from_series,
    tate_series,
)
from bettilab.series import ONE, Y, Z, BiPoly, RationalSeries, expand, pole_orders, specialize_y, univariate
from conftest import as_dicts
from oracles import koszul_betti, poly_mul, poly_pow, series_coeffs


def consts(s, n):
    return [c.constant_term() for c in expand(s, n)]


def ideal_oracle(e, gens, imax):
    """P^B_J(y, z) for the ideal J from Koszul homology of B/J."""
    top = max(g.degree for g in gens) + imax + e
    b = koszul_betti(e, as_dicts(gens), 32003, imax + 1, top)
    return BiPoly({(j, i - 1): c for (i, j), c in b.items() if i >= 1})


class TestClassical:
    def test_tate(self):
        assert consts(tate_series(0, 3), 10) == [comb(i + 2, 2) for i in range(11)]
        assert consts(tate_series(2, 0), 4) == [1, 2, 1, 0, 0]
        with pytest.raises(ValueError):
            tate_series(-1, 2)

    def test_ci_specializes_to_tate(self):
        s = graded_ci_pk(3, [2, 2, 2])
        assert specialize_y(s) == tate_series(0, 3).reduced()
        assert expand(s, 2)[2] == 6 * Y ** 2
        with pytest.raises(ValueError):
            graded_ci_pk(2, [1])

    def test_golod_m_squared(self):
        pbi = ideal_oracle(2, power_of_maximal_ideal(2, 2), 2)
        assert pbi == 3 * Y ** 2 + 2 * Y ** 3 * Z
        s = golod_pk(2, pbi)
        want = series_coeffs([1, 2, 1], [1, 0, -3, -2], 12)
        assert consts(specialize_y(s), 12) == want == [2 ** i for i in range(13)]


class TestDeterminantal:
    @pytest.mark.parametrize("h,e", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)])
    def test_adequate_against_oracle(self, h, e):
        U = staircase(2, h, e)
        assert adequate_ideal_series(2, h, e) == ideal_oracle(e, minors_ideal(U), e)

    @pytest.mark.parametrize("h,e", [(1, 2), (2, 2), (2, 3)])
    def test_det_power_against_oracle(self, h, e):
        J = golod_quotient_ideal(staircase(2, h, e))
        assert det_power_series(2, h, e) == Z * Z * specialize(ideal_oracle(e, J.gens, e))

    def test_h_equals_e_is_m_squared(self):
        e = 3
        # I(U) = (x)^2 already contains (x)^3
        assert det_power_series(2, e, e) == Z * Z * specialize(ideal_oracle(e, power_of_maximal_ideal(e, 2), e))

    def test_bad_args(self):
        with pytest.raises(ValueError):
            adequate_ideal_series(2, 3, 2)
        with pytest.raises(ValueError):
            det_power_series(1, 1, 1)


def specialize(p: BiPoly) -> BiPoly:
    return specialize_y(RationalSeries(p)).num


class TestResidue:
    def test_m_squared_residue(self):
        # R = k[u1,u2]/(u1^2,u2^2), S = R/m^2
        s = golod_residue_series(2, 2, 2, 2, univariate(3, 2))
        assert s == RationalSeries(univariate(1, -1, 1), univariate(1, -1) ** 2).reduced()
        assert pole_orders(s) == (2, 0)

    def test_bad_inputs(self):
        # the numerator's constant term is 1 - 1 for any polynomial P, so only
        # non-polynomial or bivariate P can be rejected
        assert golod_residue_series(0, 1, 1, 1, BiPoly()).num.min_z() >= 0
        with pytest.raises(NotPolynomial):
            golod_residue_series(0, 1, 1, 1, RationalSeries(ONE, univariate(1, -1)))
        with pytest.raises(ValueError):
            golod_residue_series(0, 1, 1, 1, Y)

    def test_negative_shift_moves_to_numerator(self):
        s = golod_residue_series(0, 1, 3, 1, univariate(1))
        assert s.den == univariate(1, -1)


class TestLinear:
    @pytest.mark.parametrize("e", [1, 2, 3, 4])
    def test_maximal_ideal(self, e):
        h_i = RationalSeries(ONE, univariate(1, -1) ** e) - RationalSeries(ONE)
        want = BiPoly({(i + 1, i): comb(e, i + 1) for i in range(e)})
        assert linear_ideal_series(1, e, h_i) == want

    def test_quadric_power(self):
        e = 2
        hb = RationalSeries(ONE, univariate(1, -1) ** e)
        # H of m^2 is H_B - 1 - e t
        h_i = hb - RationalSeries(univariate(1, e))
        assert linear_ideal_series(2, e, h_i) == 3 * Y ** 2 + 2 * Y ** 3 * Z


class TestGranularity:
    def test_bound(self):
        assert granularity_bound(5, 2) == 2
        assert granularity_bound(3, 3) == 0
        with pytest.raises(ValueError):
            granularity_bound(1, 2)

    def test_case_tag(self):
        assert GringParams(2, 2, 3, 0, 3).case_tag == "HEqualsE"
        assert GringParams(2, 2, 3, 0, 2).case_tag == "HAtMostEMinus1"
        with pytest.raises(ValueError):
            GringParams(3, 2, 2, 0, 1)

    @pytest.mark.parametrize("c,d,e,a,h", [(2, 2, 2, 0, 2), (3, 3, 3, 1, 2), (5, 5, 4, 0, 1), (4, 5, 5, 6, 3)])
    def test_matches_pole_order(self, c, d, e, a, h):
        s = golod_residue_series(a, c, d, e, specialize(det_power_series(2, h, e)).shift_z(-2))
        assert pole_orders(s)[1] == gring_granularity(GringParams(c, d, e, a, h))

    @pytest.mark.parametrize("h,e,m", [(2, 2, 2), (3, 3, 3), (1, 3, 2), (2, 4, 3)])
    def test_m_invariant(self, h, e, m):
        assert m_invariant_from_series(det_power_series(2, h, e)) == m


def test_not_polynomial_error():
    from bettilab.formulas import _divide_by_minus_z

    with pytest.raises(NotPolynomial):
        _divide_by_minus_z(univariate(1, 1), 1)


def test_oracle_helpers_agree():
    # (1+z)^2 / (1-z)^3 by hand
    assert series_coeffs(poly_pow([1, 1], 2), poly_pow([1, -1], 3), 3) == [1, 5, 13, 25]
    assert poly_mul([1, 1], [1, -1]) == [1, 0, -1]
