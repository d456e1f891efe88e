import pytest
from hypothesis import given
from hypothesis import strategies as st

from derivkit.errors import ParseError, PreconditionError
from derivkit.freealg import (
    FreePoly,
    FreeTensor,
    abelianize,
    contains_adjacent,
    f2_refutation,
    f2_sandwich,
    free_tensor_multiply,
    verify_lemma_identities,
)
from derivkit.poly import parse_poly
from derivkit.poly.membership import doubled_variables

AB = ("a", "b")
P2 = doubled_variables(2)


def pure(left, right, c=1, alphabet=AB):
    return FreeTensor.pure(alphabet, left, right, c)


def test_left_factors_concatenate():
    assert free_tensor_multiply(pure("a", "1"), pure("b", "1")) == pure("a.b", "1")


def test_right_factors_reverse():
    assert free_tensor_multiply(pure("1", "a"), pure("1", "b")) == pure("1", "b.a")


def test_square_of_difference():
    d = FreeTensor.difference(AB, "a")
    assert d * d == pure("a.a", "1") - pure("a", "a", 2) + pure("1", "a.a")


def test_alphabet_mismatch_rejected():
    with pytest.raises(PreconditionError):
        pure("a", "1") * FreeTensor.pure(("a",), "a", "1")


def test_text_round_trip():
    z = f2_sandwich()
    assert FreeTensor.parse(z.to_text(), AB) == z
    p = FreePoly.parse("2*a.b - 1/2*b + 1", AB)
    assert FreePoly.parse(p.to_text(), AB) == p


def test_bad_word_rejected():
    with pytest.raises(ParseError):
        FreeTensor.parse("a.c|1", AB)


def test_abelianize_examples():
    assert abelianize(FreeTensor.difference(AB, "a"), {"a": 0, "b": 1}) == parse_poly("x1 - y1", P2)
    assert abelianize(f2_sandwich(), {"a": 0, "b": 1}) == parse_poly("(x1 - y1)^2*x2", P2)


def test_abelianize_needs_total_map():
    with pytest.raises(PreconditionError):
        abelianize(pure("a", "b"), {"a": 0})


words = st.lists(st.integers(0, 1), max_size=2).map(tuple)
tensors = st.dictionaries(st.tuples(words, words), st.integers(-2, 2), max_size=3).map(
    lambda d: FreeTensor(AB, d)
)


@given(tensors, tensors, tensors)
def test_multiplication_associative_and_unital(s, t, u):
    assert (s * t) * u == s * (t * u)
    one = FreeTensor.one(AB)
    assert one * s == s == s * one


@given(tensors, tensors)
def test_abelianize_is_multiplicative(s, t):
    m = {"a": 0, "b": 1}
    assert abelianize(s * t, m, 2) == abelianize(s, m, 2) * abelianize(t, m, 2)


# -- lemma identities ------------------------------------------------------------

def test_identity_one_exact():
    assert verify_lemma_identities().residual_i.is_zero()


def test_identity_two_holds_up_to_sign():
    r = verify_lemma_identities()
    ax3 = FreeTensor.pure(("a", "x"), "a", "x.x.x")
    # the expansion equals -a⊗x³, not a⊗x³
    assert r.residual_ii == ax3 * -2
    assert r.residual_ii_negated.is_zero()
    assert r.membership_ok
    assert not r.ok


def test_identity_two_needs_the_relations():
    assert not verify_lemma_identities().residual_ii_unreduced.is_zero()


def test_rewriting_is_order_independent():
    alpha = ("a", "x")
    w = FreeTensor.pure(alpha, "1", "x.x") - FreeTensor.pure(alpha, "x", "x")
    e = w * FreeTensor.difference(alpha, "a") * FreeTensor.difference(alpha, "x")
    ax, xa = {(0, 1)}, {(1, 0)}
    one_way = e.filter_words(lambda w: not contains_adjacent(w, ax)).filter_words(
        lambda w: not contains_adjacent(w, xa))
    other = e.filter_words(lambda w: not contains_adjacent(w, xa)).filter_words(
        lambda w: not contains_adjacent(w, ax))
    assert one_way == other


# -- F2 -------------------------------------------------------------------------

def test_sandwich_lies_in_nlie():
    r = f2_refutation()
    assert r.in_nlie
    assert r.m_value.is_zero() and r.m_op_value.is_zero()


def test_abelianization_does_not_refute_sandwich():
    r = f2_refutation()
    assert r.image == parse_poly("(x1 - y1)^2*x2", P2)
    assert r.verdict.member and not r.refutes


def test_unit_middle_gives_a_square():
    r = f2_refutation(FreeTensor.one(AB))
    assert r.image == parse_poly("(x1 - y1)^2", P2)
    assert r.verdict.member
