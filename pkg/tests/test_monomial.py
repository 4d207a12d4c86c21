import pytest
from hypothesis import given
from hypothesis import strategies as st

from multcheck.errors import InputError, ParseError
from multcheck.monomial import (
    Monomial,
    MonomialIdeal,
    format_ideal,
    minimalize,
    parse_ideal,
    parse_monomial,
)
from oracles import brute_colon_members, member, monomials_of_degree
from strategies import ideal_pairs, ideals

X, Y, Z = (Monomial.var(i, 3) for i in range(3))


def ideal(*rows):
    return MonomialIdeal(len(rows[0]), rows)


class TestExamples:
    def test_minimalize_drops_multiples(self):
        I = minimalize([X**2, X**3, Y])
        assert I.generators == (X**2, Y) or set(I.generators) == {X**2, Y}
        assert len(I) == 2

    def test_minimalize_empty_is_zero(self):
        assert MonomialIdeal(3).is_zero()
        assert MonomialIdeal(3, []).format() == "(0)"

    def test_skew_lines_already_minimal(self):
        gens = [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)]
        assert set(MonomialIdeal(4, gens).exponents) == set(gens)

    def test_sum_of_link_pieces(self):
        I = ideal((0, 9, 0), (0, 0, 6))
        assert I + ideal((2, 0, 0)) == ideal((2, 0, 0), (0, 9, 0), (0, 0, 6))
        assert I + MonomialIdeal.zero(3) == I
        assert ideal((1, 0, 0)) + ideal((2, 0, 0)) == ideal((1, 0, 0))

    def test_power_of_maximal_ideal_in_two_variables(self):
        m = ideal((1, 0), (0, 1))
        assert m**2 == ideal((2, 0), (1, 1), (0, 2))
        twelfth = m**12
        assert len(twelfth) == 13
        assert all(g.total_degree == 12 for g in twelfth)
        assert m * MonomialIdeal.unit(2) == m

    def test_colon(self):
        I = ideal((0, 9, 0), (0, 0, 6))
        assert I.colon(X**2) == I
        assert ideal((2, 0)).colon(Monomial.var(0, 2)) == ideal((1, 0))
        assert ideal((1, 1, 0), (0, 0, 1)).colon(Y) == ideal((1, 0, 0), (0, 0, 1))

    def test_intersection(self):
        a = MonomialIdeal(4, [(1, 0, 0, 0), (0, 0, 1, 0)])
        b = MonomialIdeal(4, [(0, 1, 0, 0), (0, 0, 0, 1)])
        skew = MonomialIdeal(4, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])
        assert a & b == skew
        assert skew & MonomialIdeal.unit(4) == skew
        assert ideal((1, 0)) & ideal((0, 1)) == ideal((1, 1))

    def test_contains(self):
        I = ideal((2, 0), (0, 1))
        assert Monomial((3, 0)) in I
        assert Monomial((1, 0)) not in I
        assert Monomial((5, 0)) not in MonomialIdeal.zero(2)

    def test_ambient_mismatch(self):
        with pytest.raises(InputError):
            ideal((1, 0)) + ideal((1, 0, 0))
        with pytest.raises(InputError):
            ideal((1, 0)).colon(X)
        with pytest.raises(InputError):
            minimalize([X, Monomial.var(0, 2)])

    def test_generators_are_graded_lex_sorted(self):
        I = ideal((0, 0, 1), (2, 0, 0), (0, 1, 0), (1, 1, 0))
        assert [g.format() for g in I.generators] == ["x1", "x2", "x0^2"]

    def test_overflow_rejected(self):
        with pytest.raises(OverflowError):
            Monomial((2**31,))

    def test_negative_exponent_rejected(self):
        with pytest.raises(InputError):
            Monomial((-1, 0))

    def test_ring_changes(self):
        I = MonomialIdeal(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 3)])
        assert I.modulo_variables([2, 3]) == ideal((1, 0), (0, 1))
        assert ideal((1, 1)).reindex([3, 0], 4) == MonomialIdeal(4, [(1, 0, 0, 1)])


class TestTextFormat:
    def test_round_trip(self):
        text = "ring x y z\n# comment\nx^2*y\n\nz^3  # trailing\n"
        I, names = parse_ideal(text, "a.ideal")
        assert names == ["x", "y", "z"]
        assert I == ideal((2, 1, 0), (0, 0, 3))
        assert parse_ideal(format_ideal(I, names))[0] == I

    def test_unit_monomial(self):
        I, _ = parse_ideal("ring x y\n1\n")
        assert I.is_unit()

    def test_repeated_variables_multiply(self):
        assert parse_monomial("x*x^2", ["x"]) == Monomial((3,))

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("x^2\n", 1, 1),
            ("ring x y\nx^2*w\n", 2, 5),
            ("ring x y\nx^\n", 2, 3),
            ("ring x y\n\nx y\n", 3, 3),
            ("ring x y\nx*\n", 2, 3),
            ("# only a comment\n", 1, 1),
        ],
    )
    def test_errors_name_line_and_column(self, text, line, column):
        with pytest.raises(ParseError) as info:
            parse_ideal(text, "f.ideal")
        assert (info.value.line, info.value.column) == (line, column)
        assert str(info.value).startswith(f"f.ideal:{line}:{column}:")


class TestProperties:
    @given(ideals())
    def test_minimalize_idempotent(self, I):
        assert MonomialIdeal(I.n, I.generators) == I
        gens = I.exponents
        assert not any(a != b and all(x <= y for x, y in zip(a, b)) for a in gens for b in gens)

    @given(ideal_pairs())
    def test_sum_product_intersection_commute(self, pair):
        I, J = pair
        assert I + J == J + I
        assert I * J == J * I
        assert I & J == J & I

    @given(ideal_pairs(), ideals(max_vars=1))
    def test_associativity(self, pair, _):
        I, J = pair
        K = I * J + J
        assert (I + J) + K == I + (J + K)
        assert (I * J) * K == I * (J * K)
        assert (I & J) & K == I & (J & K)

    @given(ideals(max_gens=3, max_exp=2), st.integers(1, 2), st.integers(1, 2))
    def test_power_law(self, I, s, t):
        assert I ** (s + t) == (I**s) * (I**t)

    @given(ideal_pairs(max_gens=3, max_exp=3))
    def test_membership_agrees_with_brute_force(self, pair):
        I, J = pair
        for d in range(7):
            for e in monomials_of_degree(I.n, d):
                m = Monomial(e)
                assert ((m in I) and (m in J)) == (m in (I & J))
                assert ((m in I) or (m in J)) == (m in (I + J))

    @given(ideals(max_gens=4, max_exp=3), st.data())
    def test_colon_matches_brute_force(self, I, data):
        m = data.draw(st.tuples(*[st.integers(0, 3)] * I.n))
        colon = I.colon(Monomial(m))
        assert I.is_subset(colon)
        members = brute_colon_members(I.exponents, m, I.n, 6)
        for d in range(7):
            for u in monomials_of_degree(I.n, d):
                assert member(colon.exponents, u) == (u in members)
