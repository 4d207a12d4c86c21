import json
from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multcheck.errors import CapacityError, DomainError, InputError, ParseError
from multcheck.monomial import MonomialIdeal
from multcheck.resolution import (
    BettiTable,
    betti_koszul,
    betti_taylor,
    load_betti_json,
    multigraded_betti,
    parse_betti,
    reduced_homology_ranks,
    resolve,
    tor_map_ranks,
)
from oracles import complete_intersection_table
from strategies import ideals

SKEW_LINES = MonomialIdeal(4, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])


def closure(*facets):
    return sorted({S for F in facets for k in range(len(F) + 1) for S in combinations(F, k)})


class TestReducedHomology:
    def test_point_is_acyclic(self):
        assert reduced_homology_ranks(closure((0,))) == {}

    def test_empty_complex_has_h_minus_one(self):
        assert reduced_homology_ranks([()]) == {-1: 1}

    def test_void_complex_has_nothing(self):
        assert reduced_homology_ranks([]) == {}

    def test_two_points(self):
        assert reduced_homology_ranks(closure((0,), (1,))) == {0: 1}

    def test_circle_and_sphere(self):
        assert reduced_homology_ranks(closure((0, 1), (1, 2), (0, 2))) == {1: 1}
        sphere = closure(*combinations(range(4), 3))
        assert reduced_homology_ranks(sphere) == {2: 1}


class TestExamples:
    def test_skew_lines_table(self):
        B = betti_koszul(SKEW_LINES)
        assert B.as_dict() == {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}
        st_ = B.stats()
        assert (st_.m, st_.M, st_.is_pure, st_.regularity) == ((0, 2, 3, 4), (0, 2, 3, 4), True, 1)

    def test_link_tables(self):
        J1 = MonomialIdeal(3, [(2, 0, 0), (0, 9, 0), (0, 0, 6)])
        assert betti_koszul(J1) == BettiTable(complete_intersection_table((2, 9, 6)))

    def test_plane_power(self):
        for t in range(1, 6):
            B = betti_koszul(MonomialIdeal(2, [(1, 0), (0, 1)]) ** t)
            assert B.as_dict() == {(0, 0): 1, (1, t): t + 1, (2, t + 1): t}

    def test_multigraded_support(self):
        I = MonomialIdeal(2, [(1, 0), (0, 1)])
        assert multigraded_betti(I) == {(1, (1, 0)): 1, (1, (0, 1)): 1, (2, (1, 1)): 1}

    def test_zero_and_unit_ideals_are_rejected(self):
        for I in (MonomialIdeal.zero(2), MonomialIdeal.unit(2)):
            with pytest.raises(DomainError):
                betti_koszul(I)
            with pytest.raises(DomainError):
                betti_taylor(I)

    def test_taylor_guard(self, monkeypatch):
        many = MonomialIdeal(2, [(k, 14 - k) for k in range(15)])
        with pytest.raises(CapacityError):
            betti_taylor(many)
        monkeypatch.setenv("MULTCHECK_GUARD", "0")
        with pytest.raises(InputError):
            betti_taylor(many)

    def test_resolve_dispatch(self):
        assert resolve(SKEW_LINES, "taylor") == resolve(SKEW_LINES)
        with pytest.raises(InputError):
            resolve(SKEW_LINES, "cellular")

    def test_tor_map_of_identity_is_full_rank(self):
        ranks = tor_map_ranks(SKEW_LINES, SKEW_LINES)
        table = betti_koszul(SKEW_LINES)
        for (i, j), b in table.items():
            if i >= 1:
                assert ranks[(i, j)] == b


class TestTable:
    def test_validation(self):
        with pytest.raises(InputError):
            BettiTable({})
        with pytest.raises(InputError):
            BettiTable({(0, 0): 1, (2, 3): 1})
        with pytest.raises(InputError):
            BettiTable({(0, 0): -1})
        with pytest.raises(InputError):
            BettiTable({(-1, 0): 1})
        with pytest.raises(AttributeError):
            BettiTable({(0, 0): 1}).foo = 1

    def test_view_drops_the_ring(self):
        B = betti_koszul(SKEW_LINES)
        assert B.view(-1).as_dict() == {(0, 2): 4, (1, 3): 4, (2, 4): 1}

    def test_format(self):
        text = betti_koszul(SKEW_LINES).format().splitlines()
        assert text[0].split() == ["0", "1", "2", "3"]
        assert text[1].split() == ["total:", "1", "4", "4", "1"]
        assert text[2].split() == ["0:", "1", ".", ".", "."]
        assert text[3].split() == ["1:", ".", "4", "4", "1"]

    def test_text_and_json_round_trip(self):
        B = betti_koszul(SKEW_LINES)
        assert parse_betti(B.to_text(4)) == (B, 4)
        assert load_betti_json(json.dumps(B.to_json(4))) == (B, 4)

    def test_text_file_with_comments(self):
        table, n = parse_betti("# ci\npd 2 vars 2\n0 0 1\n1 2 1 # quadric\n1 3 1\n2 5 1\n")
        assert n == 2
        assert table == BettiTable(complete_intersection_table((2, 3)))

    @pytest.mark.parametrize(
        "text, line",
        [
            ("0 0 1\n", 1),
            ("pd x vars 2\n", 1),
            ("pd 1 vars 2\n0 0\n", 2),
            ("pd 1 vars 2\n0 0 1\n1 a 1\n", 3),
            ("pd 1 vars 2\n0 0 1\n1 2 -1\n", 3),
            ("", 1),
            ("pd 2 vars 2\n0 0 1\n1 1 1\n", 1),
        ],
    )
    def test_parse_errors(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_betti(text, "t.betti")
        assert info.value.line == line

    def test_malformed_json(self):
        with pytest.raises(InputError):
            load_betti_json('{"pd": 1}')


class TestProperties:
    @given(ideals())
    def test_two_algorithms_agree(self, I):
        assert betti_koszul(I) == betti_taylor(I)

    @given(ideals())
    def test_euler_characteristic_and_shape(self, I):
        B = betti_koszul(I)
        assert B.is_cyclic()
        assert B.rank() == 0
        assert B.pd <= I.n
        assert B.total(1) == len(I)
        st_ = B.stats()
        assert all(st_.m[i] < st_.m[i + 1] and st_.M[i] < st_.M[i + 1] for i in range(B.pd))

    @given(ideals(max_vars=3), st.data())
    def test_permutation_invariance(self, I, data):
        order = data.draw(st.sampled_from(list(permutations(range(I.n)))))
        assert betti_koszul(I.reindex(order, I.n)) == betti_koszul(I)

    @given(ideals(max_vars=3, max_gens=3))
    def test_adding_a_new_variable_is_a_tensor_product(self, I):
        # R/(I + x_new) = R/I tensor k[x]/(x): shift every entry by 0 and by 1
        n = I.n
        bigger = I.reindex(list(range(n)), n + 1) + MonomialIdeal(n + 1, [tuple([0] * n + [1])])
        expected = {}
        for (i, j), b in betti_koszul(I).items():
            expected[(i, j)] = expected.get((i, j), 0) + b
            expected[(i + 1, j + 1)] = expected.get((i + 1, j + 1), 0) + b
        assert betti_koszul(bigger).as_dict() == expected
