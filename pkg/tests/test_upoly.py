from hypothesis import given, strategies as st

from floerkit.algebra.upoly import ONE, U, UPoly, ZERO

terms = st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 4)), max_size=5)
polys = terms.map(UPoly)


def test_normal_form_drops_zero_terms_and_sorts():
    p = UPoly([(2, 3), (0, 1), (-1, 0), (1, 3)])
    assert p.terms == ((-1, 0), (3, 3))
    assert UPoly([(1, 2), (-1, 2)]) == ZERO
    assert not ZERO


def test_units_and_monomials():
    assert ONE.is_unit() and (-ONE).is_unit()
    assert not U.is_unit() and U.is_monomial()
    assert UPoly.const(2).constant_term() == 2
    assert (U ** 3).degree == 3


def test_negative_exponent_rejected():
    import pytest

    with pytest.raises(ValueError):
        UPoly([(1, -1)])


def test_evaluation_and_truncation():
    p = UPoly([(1, 0), (2, 1), (3, 2)])
    assert p(2) == 1 + 4 + 12
    assert p.truncate(2) == UPoly([(1, 0), (2, 1)])
    assert p.shift(1) == UPoly([(1, 1), (2, 2), (3, 3)])


def test_json_round_trip():
    p = UPoly([(4, 0), (-2, 5)])
    assert UPoly(p.to_json()) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, st.integers(-3, 3))
def test_evaluation_is_a_ring_map(a, u):
    b = a * a + ONE
    assert b(u) == a(u) * a(u) + 1


@given(polys)
def test_hash_matches_equality(a):
    assert hash(a) == hash(UPoly(list(a.terms)))
