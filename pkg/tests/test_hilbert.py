from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multcheck.errors import DomainError, InconsistencyError
from multcheck.hilbert import (
    HilbertData,
    hilbert_function,
    hilbert_numerator,
    multiplicity_from_betti,
    poly_mul,
    power_sums,
)
from multcheck.monomial import MonomialIdeal
from multcheck.resolution import BettiTable, betti_koszul
from oracles import artinian_length, complete_intersection_table, series_from_numerator, standard_counts
from strategies import ideals


def test_plane_power_has_binomial_colength():
    for t in range(1, 8):
        I = MonomialIdeal(2, [(1, 0), (0, 1)]) ** t
        H = hilbert_numerator(I)
        assert (H.codim, H.dim, H.multiplicity) == (2, 0, t * (t + 1) // 2)


def test_skew_lines():
    I = MonomialIdeal(4, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])
    H = hilbert_numerator(I)
    assert (H.dim, H.codim, H.multiplicity) == (2, 2, 2)
    assert H.series(4) == [1, 4, 6, 8, 10]


def test_artinian_complete_intersection_length():
    I = MonomialIdeal(3, [(2, 0, 0), (0, 9, 0), (0, 0, 6)])
    H = hilbert_numerator(I)
    assert H.multiplicity == 108 == artinian_length(I.exponents, 3, 9)
    assert sum(H.h_vector) == 108


def test_zero_ideal_is_the_whole_ring():
    H = hilbert_numerator(MonomialIdeal.zero(3))
    assert H.numerator == (1,)
    assert (H.codim, H.dim, H.multiplicity) == (0, 3, 1)


def test_unit_ideal_is_the_zero_module():
    H = hilbert_numerator(MonomialIdeal.unit(3))
    assert H.is_zero_module
    assert H.multiplicity == 0
    assert H.series(3) == [0, 0, 0, 0]


def test_numerator_that_vanishes_too_often_is_rejected():
    with pytest.raises(InconsistencyError):
        HilbertData.from_numerator((1, -3, 3, -1), 2)


def test_hilbert_function_of_negative_degree():
    assert hilbert_function(MonomialIdeal(2, [(1, 1)]), -1) == 0


class TestMultiplicityFromBetti:
    def test_complete_intersection(self):
        table = BettiTable(complete_intersection_table((2, 3, 9)))
        assert multiplicity_from_betti(table, 3) == (3, Fraction(54))

    def test_complete_intersection_in_more_variables(self):
        table = BettiTable(complete_intersection_table((9, 6)))
        assert multiplicity_from_betti(table, 4) == (2, 54)

    def test_free_module_has_rank_one(self):
        with pytest.raises(DomainError):
            multiplicity_from_betti(BettiTable({(0, 0): 1}), 3)

    @pytest.mark.parametrize("a", [1, 2, 5])
    def test_quadratic_pattern(self, a):
        table = BettiTable({(0, 0): 1, (1, a): 2, (2, 2 * a): 1})
        assert multiplicity_from_betti(table, 3) == (2, a * a)

    def test_negative_multiplicity_is_inconsistent(self):
        with pytest.raises(InconsistencyError):
            multiplicity_from_betti(BettiTable({(0, 2): 1, (1, 1): 1}), 2)

    def test_power_sums_of_a_line(self):
        table = BettiTable(complete_intersection_table((1,)))
        assert power_sums(table, 2) == [0, -1, -1]


class TestProperties:
    @given(ideals())
    def test_series_counts_standard_monomials(self, I):
        H = hilbert_numerator(I)
        assert H.series(6) == standard_counts(I.exponents, I.n, 6)
        assert H.series(6) == series_from_numerator(H.numerator, I.n, 6)
        assert [hilbert_function(I, d) for d in range(7)] == H.series(6)

    @given(ideals())
    def test_numerator_factors_through_h_vector(self, I):
        H = hilbert_numerator(I)
        one_minus_t_power = (1,)
        for _ in range(H.codim):
            one_minus_t_power = poly_mul(one_minus_t_power, (1, -1))
        assert poly_mul(H.h_vector, one_minus_t_power) == H.numerator
        assert sum(H.h_vector) == H.multiplicity > 0

    @given(ideals(max_vars=3), st.data())
    def test_variable_permutation_invariance(self, I, data):
        order = data.draw(st.sampled_from(list(permutations(range(I.n)))))
        J = I.reindex(order, I.n)
        assert hilbert_numerator(J) == hilbert_numerator(I)

    @given(ideals())
    def test_numerator_is_euler_characteristic(self, I):
        assert betti_koszul(I).euler_polynomial() == hilbert_numerator(I).numerator

    @given(ideals(max_vars=3, max_exp=3))
    def test_artinian_length_when_zero_dimensional(self, I):
        H = hilbert_numerator(I)
        if H.dim == 0:
            assert H.multiplicity == artinian_length(I.exponents, I.n, 4)
