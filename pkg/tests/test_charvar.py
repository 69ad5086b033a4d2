import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.charvar import (GroupWord, LengthMismatch, NotCoprime, SingularMatrix, SL2Rep,
                              bullock_value, christoffel_word, cocycle_degree,
                              fricke_polynomial_value, fricke_trace, random_rep, random_sl2,
                              same_character, trace_identity_check, trace_word, twist_rep,
                              word_corpus, word_matrix)

U = np.array([[1, 1], [0, 1]])
L = np.array([[1, 0], [1, 1]])
UL = SL2Rep((U, L))

seeds = st.integers(0, 2 ** 32 - 1)
words = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=10).map(
    lambda ls: GroupWord(tuple(ls)))


def test_trace_word_examples():
    assert trace_word("", UL) == 2
    assert trace_word("a", UL) == 2
    assert trace_word("ab", UL) == 3


def test_trace_identity_examples(rng):
    eye = np.eye(2)
    assert trace_identity_check(eye, eye) == 0
    assert trace_identity_check(U, L) == 0
    worst = max(trace_identity_check(random_sl2(rng), random_sl2(rng)) for _ in range(1000))
    assert worst < 1e-9


def test_trace_identity_rejects_singular():
    with pytest.raises(SingularMatrix):
        trace_identity_check(np.eye(2), np.zeros((2, 2)))


def test_bullock_examples():
    assert bullock_value([], UL) == 1
    ident = SL2Rep((np.eye(2),))
    assert bullock_value(["a"], ident) == -2
    assert bullock_value(["a", "b"], UL) == 4


def test_one_crossing_skein_at_minus_one(rng):
    # (1,0) and (0,1) cross once; the two smoothings are ab and ab^-1
    worst = 0.0
    for _ in range(1000):
        r = random_rep(rng, 2)
        lhs = bullock_value(["a", "b"], r)
        rhs = -bullock_value(["ab"], r) - bullock_value(["aB"], r)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    assert worst < 1e-9


def test_word_parsing_and_inverse():
    w = GroupWord.parse("aBb")
    assert str(w) == "aBb"
    assert str(w.reduced()) == "a"
    assert str(w.inverse()) == "BbA"
    with pytest.raises(ValueError):
        GroupWord.parse("a1")
    with pytest.raises(IndexError):
        trace_word("c", UL)


def test_rep_validation_and_json(rng):
    with pytest.raises(ValueError):
        SL2Rep((2 * np.eye(2),))
    r = random_rep(rng, 3)
    back = SL2Rep.from_json(r.to_json())
    assert same_character(r, back, max_len=4)


@settings(max_examples=50)
@given(seeds, words)
def test_conjugation_invariance(seed, w):
    rng = np.random.default_rng(seed)
    r = random_rep(rng, 2)
    g = random_sl2(rng)
    t1, t2 = trace_word(w, r), trace_word(w, r.conjugate(g))
    assert abs(t1 - t2) < 1e-9 * max(1.0, abs(t1)) * 100


@settings(max_examples=50)
@given(seeds, words, st.tuples(st.integers(0, 1), st.integers(0, 1)))
def test_twist_signs(seed, w, alpha):
    r = random_rep(np.random.default_rng(seed), 2)
    t = trace_word(w, r)
    tw = trace_word(w, twist_rep(r, alpha))
    assert abs(tw - (-1) ** cocycle_degree(w, alpha) * t) < 1e-9 * max(1.0, abs(t))
    again = twist_rep(twist_rep(r, alpha), alpha)
    assert all(np.array_equal(m, n) for m, n in zip(again.matrices, r.matrices))


def test_twist_zero_is_identity(rng):
    r = random_rep(rng, 2)
    assert all(np.array_equal(m, n) for m, n in zip(twist_rep(r, (0, 0)).matrices, r.matrices))
    with pytest.raises(LengthMismatch):
        twist_rep(r, (1,))


def test_fricke_seeds_and_example():
    assert fricke_trace(1, 0, UL) == trace_word("a", UL)
    assert fricke_trace(1, 1, UL) == trace_word("ab", UL)
    assert fricke_trace(2, 1, UL) == trace_word("aab", UL) == 4


def test_fricke_matches_matrix_products(rng):
    for _ in range(5):
        r = random_rep(rng, 2)
        for p in range(-8, 9):
            for q in range(-8, 9):
                if math.gcd(p, q) != 1:
                    continue
                ref = trace_word(christoffel_word(p, q), r)
                assert abs(fricke_trace(p, q, r) - ref) < 1e-7 * max(1.0, abs(ref))


def test_christoffel_words_are_primitive_classes():
    for p in range(0, 7):
        for q in range(-6, 7):
            if math.gcd(p, q) != 1:
                continue
            w = christoffel_word(p, q)
            assert (w.degree(0), w.degree(1)) == (p, q)
    with pytest.raises(NotCoprime):
        christoffel_word(2, 4)
    with pytest.raises(NotCoprime):
        fricke_polynomial_value(0, 0, 1, 1, 1)


def test_fricke_polynomial_is_integral():
    # with integer seeds the recursion stays in Z[x, y, z]
    assert fricke_polynomial_value(3, 2, 2, 3, 5) == int(fricke_polynomial_value(3, 2, 2, 3, 5))


def test_word_matrix_of_word_times_inverse(rng):
    r = random_rep(rng, 2)
    for w in word_corpus(2, 3):
        m = word_matrix(w, r) @ word_matrix(w.inverse(), r)
        assert np.allclose(m, np.eye(2))


def test_same_character_detects_difference(rng):
    r1, r2 = random_rep(rng, 2), random_rep(rng, 2)
    assert not same_character(r1, r2)
    assert not same_character(r1, random_rep(rng, 3))
    assert len(word_corpus(2, 2)) == 1 + 4 + 12
