from hypothesis import given, strategies as st

from heckelab.fields import FieldSpec
from heckelab.perms import (all_perms, compose, from_word, inverse, length, reduced_word, s)
from heckelab.poly import Poly, divided_difference, sym_act

Q = FieldSpec.degenerate(0)


def t(k, n=3):
    return Poly.var(Q, n, k)


def test_divided_difference_examples():
    assert divided_difference(1, t(1, 2)) == Poly.const(Q, 2)
    assert divided_difference(1, t(1, 2) * t(2, 2)).is_zero()
    # (t2^2 - t1^2) / (t2 - t1); the same sign convention that sends t1 to 1
    assert divided_difference(1, t(1, 2) ** 2) == t(1, 2) + t(2, 2)


def test_sym_act_swaps_variables():
    assert sym_act(s(1, 2), t(1, 2)) == t(2, 2)


perm3 = st.sampled_from(all_perms(3))
perm4 = st.sampled_from(all_perms(4))


@given(perm4)
def test_reduced_word_has_length_of_permutation(w):
    word = reduced_word(w)
    assert len(word) == length(w)
    assert from_word(word, 4) == w


@given(perm4, perm4)
def test_length_subadditive_and_inverse(w, v):
    assert length(compose(w, v)) <= length(w) + length(v)
    assert length(inverse(w)) == length(w)


monomial = st.tuples(st.integers(-2, 3), st.integers(-2, 3), st.integers(-2, 3))
polys = st.lists(st.tuples(monomial, st.integers(-3, 3)), max_size=4).map(
    lambda terms: sum((Poly.monomial(Q, a, c) for a, c in terms), Poly(Q, 3)))


@given(polys, st.integers(1, 2))
def test_divided_difference_kills_symmetric_and_squares_to_zero(f, r):
    sym = f + f.swap(r)
    assert divided_difference(r, sym).is_zero()
    assert divided_difference(r, divided_difference(r, f)).is_zero()


@given(polys, polys, st.integers(1, 2))
def test_twisted_leibniz_rule(f, g, r):
    lhs = divided_difference(r, f * g)
    rhs = divided_difference(r, f) * g + f.swap(r) * divided_difference(r, g)
    assert lhs == rhs


@given(polys, st.integers(1, 2))
def test_divided_difference_inverts_multiplication(f, r):
    # (s_r f - f) = (t_{r+1} - t_r) * dd(f)
    assert f.swap(r) - f == (t(r + 1) - t(r)) * divided_difference(r, f)


@given(polys, perm3, perm3)
def test_symmetric_group_action_is_an_action(f, w, v):
    assert sym_act(compose(w, v), f) == sym_act(w, sym_act(v, f))
