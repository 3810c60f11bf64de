from math import comb

import pytest
from hypothesis import given, strategies as st

from subword_lab.words import (
    BraidMoveContext,
    abelian_vector,
    alternating_word,
    braid_move_sign_ratio,
    flip_alphabet,
    format_word,
    inversion_number,
    lexicographic_normal_form,
    occurrence_partition,
    parse_word,
    permutation_sign,
    reverse_word,
    s_sign,
    standardization,
)

words_st = st.lists(st.integers(1, 4), max_size=10).map(tuple)


def test_inversion_number_examples():
    assert inversion_number((1, 2, 3, 2, 1, 2)) == 5
    assert inversion_number((2, 1, 2)) == 1
    assert inversion_number((1, 1, 1, 2, 2, 3)) == 0
    assert inversion_number(()) == 0


def test_s_sign_examples():
    assert s_sign((1, 2, 3, 1, 2, 1)) == 1
    assert s_sign((1, 2, 1, 3, 2, 1)) == -1
    assert s_sign(()) == 1


def test_abelian_vector_examples():
    assert abelian_vector((1, 2, 1), 2) == (2, 1)
    assert abelian_vector((), 3) == (0, 0, 0)
    assert abelian_vector((1, 2, 3, 1, 2, 1), 3) == (3, 2, 1)
    with pytest.raises(ValueError):
        abelian_vector((1, 5), 4)


@given(words_st, words_st)
def test_abelian_vector_is_additive(u, v):
    au = abelian_vector(u, 4)
    av = abelian_vector(v, 4)
    assert abelian_vector(u + v, 4) == tuple(a + b for a, b in zip(au, av))


def test_occurrence_partition():
    assert occurrence_partition((1, 2, 1, 2), 2) == ((1, 3), (2, 4))
    assert occurrence_partition((2, 1, 3, 2, 3, 1), 3) == ((2, 6), (1, 4), (3, 5))
    assert occurrence_partition((), 2) == ((), ())


def test_standardization_examples():
    assert standardization((2, 1, 2)) == (2, 1, 3)
    assert standardization((1, 2, 1, 2)) == (1, 3, 2, 4)
    assert standardization((1, 1, 2, 3)) == (1, 2, 3, 4)


def _apply(perm, word):
    return tuple(word[perm[i] - 1] for i in range(len(word)))


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return tuple(inv)


@given(words_st)
def test_standardization_inverse_sorts(word):
    std = standardization(word)
    assert _apply(_inverse(std), word) == lexicographic_normal_form(word)
    assert inversion_number(std) == inversion_number(word)


def test_standardization_is_minimal_sorter():
    # brute force over all permutations of small symmetric groups
    from itertools import permutations

    for word in [(2, 1, 2), (1, 2, 1, 2), (3, 1, 2), (2, 2, 1)]:
        std = standardization(word)
        sorters = [
            p
            for p in permutations(range(1, len(word) + 1))
            if _apply(_inverse(p), word) == lexicographic_normal_form(word)
        ]
        best = min(sorters, key=inversion_number)
        assert inversion_number(std) == inversion_number(best)
        assert std in sorters


@given(words_st)
def test_inversions_of_word_and_reverse(word):
    m = len(word)
    counts = abelian_vector(word, 4)
    total = comb(m, 2) - sum(comb(c, 2) for c in counts)
    assert inversion_number(word) + inversion_number(reverse_word(word)) == total


@given(words_st)
def test_reversed_alphabet_inversions(word):
    rev_inv = inversion_number(reverse_word(word))
    assert rev_inv == inversion_number(flip_alphabet(word, 4))
    # counting pairs in the reversed letter order directly
    direct = sum(
        1
        for i in range(len(word))
        for j in range(i + 1, len(word))
        if word[j] > word[i]
    )
    assert direct == rev_inv


@given(st.permutations(list(range(1, 7))))
def test_s_sign_extends_permutation_sign(perm):
    # parity from an explicit transposition decomposition
    p = list(perm)
    swaps = 0
    for i in range(len(p)):
        while p[i] != i + 1:
            j = p[i] - 1
            p[i], p[j] = p[j], p[i]
            swaps += 1
    assert permutation_sign(perm) == (-1) ** swaps


def test_alternating_word():
    assert alternating_word(1, 2, 3) == (1, 2, 1)
    assert alternating_word(2, 1, 4) == (2, 1, 2, 1)


class TestBraidMoveSignRatio:
    def test_odd_move_with_suffix(self):
        ctx = BraidMoveContext(u=(), i=1, j=2, v=(3, 2, 1))
        assert ctx.kappa == 0
        assert ctx.mu == 1
        assert braid_move_sign_ratio(ctx, 3) == -1

    def test_commutation_always_flips(self):
        for u, v in [((), ()), ((2,), (1, 3)), ((1, 1), (2,))]:
            assert braid_move_sign_ratio(BraidMoveContext(u, 1, 3, v), 2) == -1

    def test_length_four_flips_squared(self):
        assert braid_move_sign_ratio(BraidMoveContext((), 1, 2, ()), 4) == 1
        assert braid_move_sign_ratio(BraidMoveContext((), 1, 2, ()), 6) == -1

    @given(words_st, words_st, st.integers(2, 6))
    def test_matches_direct_sign_computation(self, u, v, m):
        i, j = 1, 3
        ctx = BraidMoveContext(u, i, j, v)
        left = s_sign(u + alternating_word(i, j, m) + v)
        right = s_sign(u + alternating_word(j, i, m) + v)
        assert braid_move_sign_ratio(ctx, m) == left * right


def test_parse_and_format_round_trip():
    assert parse_word("121321", 3) == (1, 2, 1, 3, 2, 1)
    assert parse_word("1,2,10", 12) == (1, 2, 10)
    assert parse_word("e", 3) == ()
    assert format_word((1, 2, 10), 12) == "1,2,10"
    assert format_word((1, 2, 1), 3) == "121"
    assert format_word((), 3) == "e"
    with pytest.raises(ValueError):
        parse_word("14", 3)
