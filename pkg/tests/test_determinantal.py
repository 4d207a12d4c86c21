import pytest
from hypothesis import given
from hypothesis import strategies as st

from multcheck.determinantal import (
    DegreeMatrix,
    band_minors_ideal,
    degree_nested,
    degree_recursive,
    det_check_conjecture,
    en_betti_table,
    en_extremal_shifts,
    en_rank,
    load_degree_matrix,
)
from multcheck.errors import CapacityError, DomainError, InputError
from multcheck.hilbert import hilbert_numerator, multiplicity_from_betti
from multcheck.monomial import MonomialIdeal
from multcheck.resolution import BettiTable, betti_koszul
from oracles import artinian_length, complete_intersection_table, porteous
from strategies import degree_matrices


def two_column_minors(D):
    """Exponents of the maximal minors of the x/y band, written out by hand.

    Deleting column k leaves x on the diagonal above row k and y below it.
    """
    a = D.a
    return [
        (sum(a[i][0] for i in range(k)), sum(a[i][1] for i in range(k, D.t)))
        for k in range(D.t + 1)
    ]


class TestExamples:
    def test_porteous_grid(self):
        for t in range(1, 9):
            for c in range(1, 9):
                assert degree_nested(DegreeMatrix.ones(t, c)) == porteous(t, c)

    def test_uniform_grid_scales_by_q_to_the_c(self):
        for t, c, q in [(2, 2, 3), (3, 2, 2), (2, 3, 2)]:
            assert degree_nested(DegreeMatrix.ones(t, c, q)) == q**c * porteous(t, c)

    def test_single_column_sums_entries(self):
        D = DegreeMatrix((0, 0, 0), (2, 3, 4))
        assert (D.t, D.c) == (3, 1)
        assert degree_nested(D) == degree_recursive(D) == 9

    def test_two_by_two(self):
        D = DegreeMatrix.from_grid([[1, 2], [2, 3]])
        assert degree_nested(D) == degree_recursive(D) == 11
        assert en_extremal_shifts(D) == ((3, 6), (5, 6))
        report = det_check_conjecture(D)
        assert (report.lower, report.upper) == (9, 15)
        assert report.lower_holds and report.upper_holds and report.equivalence_holds
        assert not (report.pure or report.uniform)

    def test_ones_four_by_three(self):
        D = load_degree_matrix('{"a": [[1, 1, 1], [1, 1, 1], [1, 1, 1], [1, 1, 1]]}')
        assert (D.t, D.c) == (4, 3)
        assert degree_nested(D) == 20
        report = det_check_conjecture(D)
        assert report.lower_sharp and report.upper_sharp and report.pure and report.uniform

    def test_one_row_is_a_complete_intersection(self):
        D = DegreeMatrix((0,), (1, 2, 4))
        assert en_betti_table(D) == BettiTable(complete_intersection_table((1, 2, 4)))
        assert degree_nested(D) == 8

    def test_twisted_rows(self):
        D = DegreeMatrix((0, 1), (2, 3, 4))
        assert D.a == ((2, 3), (2, 3))
        assert degree_nested(D) == degree_recursive(D)

    def test_en_ranks(self):
        assert [en_rank(2, 3, i) for i in (1, 2, 3)] == [6, 8, 3]
        table = en_betti_table(DegreeMatrix.ones(2, 3))
        assert [table.total(i) for i in range(4)] == [1, 6, 8, 3]


class TestValidation:
    def test_bad_shapes(self):
        with pytest.raises(DomainError):
            DegreeMatrix((), (1,))
        with pytest.raises(DomainError):
            DegreeMatrix((0, 0), (1,))
        with pytest.raises(DomainError):
            DegreeMatrix((0, 2), (1, 2))

    def test_bad_grids(self):
        with pytest.raises(DomainError):
            DegreeMatrix.from_grid([[1, 2], [3, 3]])
        with pytest.raises(InputError):
            DegreeMatrix.from_grid([[1, 2], [2]])
        with pytest.raises(DomainError):
            DegreeMatrix.from_grid([])

    @pytest.mark.parametrize("text", ["[1, 2]", "{not json", '{"b": [0]}', '{"b": 3, "d": [1]}'])
    def test_bad_json(self, text):
        with pytest.raises(InputError):
            load_degree_matrix(text)

    def test_band_needs_two_columns_at_most(self):
        with pytest.raises(DomainError):
            band_minors_ideal(DegreeMatrix.ones(2, 3))

    def test_en_guard(self, monkeypatch):
        with pytest.raises(CapacityError):
            en_betti_table(DegreeMatrix.ones(10, 10))
        monkeypatch.setenv("MULTCHECK_GUARD", "1000")
        assert en_betti_table(DegreeMatrix.ones(6, 6)).pd == 6


class TestProperties:
    @given(degree_matrices())
    def test_three_routes_agree(self, D):
        nested = degree_nested(D)
        assert nested == degree_recursive(D)
        assert multiplicity_from_betti(en_betti_table(D), D.c + 2) == (D.c, nested)

    @given(degree_matrices())
    def test_extremal_shifts_match_table(self, D):
        st = en_betti_table(D).stats()
        m, M = en_extremal_shifts(D)
        assert st.m == (0,) + m and st.M == (0,) + M
        assert st.pd == D.c

    @given(degree_matrices())
    def test_bounds_and_sharpness(self, D):
        report = det_check_conjecture(D)
        assert report.lower_holds and report.upper_holds
        assert report.equivalence_holds
        assert report.lower_sharp == report.upper_sharp == report.pure
        if D.c >= 2:
            assert report.pure == report.uniform

    @given(degree_matrices(), st.data())
    def test_raising_the_last_twist_never_lowers_the_degree(self, D, data):
        # bumping the largest d keeps the grid valid and raises a[t][c] only
        bump = data.draw(st.integers(1, 3))
        raised = DegreeMatrix(D.b, D.d[:-1] + (D.d[-1] + bump,))
        assert degree_nested(raised) >= degree_nested(D)

    @given(degree_matrices(), st.randoms())
    def test_twist_order_does_not_matter(self, D, rng):
        b, d = list(D.b), list(D.d)
        rng.shuffle(b)
        rng.shuffle(d)
        assert degree_nested(DegreeMatrix(tuple(b), tuple(d))) == degree_nested(D)

    @given(degree_matrices(max_c=2, max_t=4))
    def test_band_model(self, D):
        band = band_minors_ideal(D)
        if D.c == 2:
            assert band == MonomialIdeal(2, two_column_minors(D))
            box = max(max(e) for e in two_column_minors(D)) + 1
            assert artinian_length(band.exponents, 2, box) == degree_nested(D)
        else:
            assert band == MonomialIdeal(1, [(sum(row[0] for row in D.a),)])
        assert hilbert_numerator(band).multiplicity == degree_nested(D)
        assert betti_koszul(band) == en_betti_table(D)
