import time
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from subword_lab.coxeter import (
    Budget,
    BudgetExceededError,
    CoxeterSystem,
    abelian_spectrum,
    braid_move_targets,
    c_sorting_word,
    coxeter_system,
    demazure_product,
    is_reduced,
    longest_element_reduced_words,
    reduced_words,
)
from subword_lab.words import abelian_vector

from reference_data import ABELIAN_SUMMARY, ABELIAN_TABLE, REDUCED_WORD_COUNTS


class TestConstruction:
    def test_parse_names(self):
        assert coxeter_system("A3").name == "A3"
        assert coxeter_system("I2:7").name == "I2:7"
        assert coxeter_system("I2:7").m(1, 2) == 7
        assert coxeter_system("b3").m(1, 2) == 4
        assert coxeter_system("H3").m(1, 2) == 5

    def test_rejects_unsupported(self):
        for bad in ["D3", "H4", "E6", "I2", "A0", "F4"]:
            with pytest.raises(ValueError):
                coxeter_system(bad)

    def test_coxeter_matrix_shape(self):
        sys = coxeter_system("D4")
        m = sys.coxeter_matrix
        assert all(m[i][i] == 1 for i in range(4))
        assert m[0][2] == m[1][2] == m[2][3] == 3
        assert m[0][1] == 2
        assert m == tuple(zip(*m))

    @pytest.mark.parametrize(
        "name,length",
        [("A1", 1), ("A3", 6), ("A5", 15), ("B2", 4), ("B4", 16),
         ("D4", 12), ("D5", 20), ("H3", 15), ("I2:2", 2), ("I2:9", 9)],
    )
    def test_longest_length(self, name, length):
        assert coxeter_system(name).longest_length == length

    @pytest.mark.parametrize("name", ["A2", "B3", "D4", "H3", "I2:5"])
    def test_model_satisfies_relations(self, name):
        sys = coxeter_system(name)
        for i in sys.generators:
            assert sys.element_of((i, i)) == sys.identity
            for j in sys.generators:
                if i >= j:
                    continue
                m = sys.m(i, j)
                word = tuple(i if k % 2 == 0 else j for k in range(2 * m))
                assert sys.element_of(word) == sys.identity
                shorter = word[: 2 * (m - 1)]
                assert sys.element_of(shorter) != sys.identity


class TestBraidMoves:
    def test_simple_move(self):
        a2 = coxeter_system("A2")
        assert braid_move_targets(a2, (1, 2, 1)) == {((1, 3), (2, 1, 2))}

    def test_two_moves(self):
        a3 = coxeter_system("A3")
        got = braid_move_targets(a3, (1, 2, 3, 1, 2, 1))
        assert got == {
            ((3, 4), (1, 2, 1, 3, 2, 1)),
            ((4, 6), (1, 2, 3, 2, 1, 2)),
        }

    def test_empty_word(self):
        assert braid_move_targets(coxeter_system("B3"), ()) == set()

    def test_moves_flip_one_alternating_factor(self):
        b3 = coxeter_system("B3")
        w = (1, 2, 1, 2, 3, 2, 1, 2, 3)
        for (start, end), target in braid_move_targets(b3, w):
            assert len(target) == len(w)
            assert target[: start - 1] == w[: start - 1]
            assert target[end:] == w[end:]
            factor, swapped = w[start - 1 : end], target[start - 1 : end]
            assert swapped[0] == factor[1] and set(swapped) == set(factor)


class TestIsReduced:
    def test_examples(self):
        a3 = coxeter_system("A3")
        assert not is_reduced(a3, (1, 2, 3, 1, 2, 3))
        assert is_reduced(a3, (1, 2, 3, 1, 2, 1))
        assert not is_reduced(coxeter_system("A1"), (1, 1))
        assert is_reduced(a3, ())

    def test_agrees_with_braid_reduction(self):
        # a word is reduced iff no braid-move orbit member has a repeat
        a3 = coxeter_system("A3")
        for w in [(1, 2, 1, 2), (1, 3, 1), (2, 1, 3, 2), (1, 2, 3, 2, 1)]:
            seen = {w}
            frontier = [w]
            repeat = False
            while frontier:
                u = frontier.pop()
                if any(a == b for a, b in zip(u, u[1:])):
                    repeat = True
                    break
                for _, t in braid_move_targets(a3, u):
                    if t not in seen:
                        seen.add(t)
                        frontier.append(t)
            assert is_reduced(a3, w) == (not repeat)


class TestEnumeration:
    @pytest.mark.parametrize("name,count", sorted(REDUCED_WORD_COUNTS.items()))
    def test_longest_element_counts(self, name, count):
        sys = coxeter_system(name)
        assert sum(1 for _ in longest_element_reduced_words(sys)) == count

    @pytest.mark.parametrize("m", range(2, 10))
    def test_dihedral_counts(self, m):
        sys = coxeter_system(f"I2:{m}")
        words = list(longest_element_reduced_words(sys))
        assert len(words) == 2
        assert all(len(w) == m for w in words)

    def test_a2_words(self):
        assert list(longest_element_reduced_words(coxeter_system("A2"))) == [
            (1, 2, 1),
            (2, 1, 2),
        ]

    def test_a1(self):
        assert list(longest_element_reduced_words(coxeter_system("A1"))) == [(1,)]

    def test_lexicographic_order_no_duplicates(self):
        words = list(longest_element_reduced_words(coxeter_system("A3")))
        assert words == sorted(words)
        assert len(set(words)) == len(words) == 16

    def test_staircase_count_a4(self):
        # hook length formula for the staircase shape (4,3,2,1)
        hooks = [7, 5, 3, 1, 5, 3, 1, 3, 1, 1]
        expected = factorial(10)
        for h in hooks:
            expected //= h
        sys = coxeter_system("A4")
        assert sum(1 for _ in longest_element_reduced_words(sys)) == expected

    def test_all_reduced_and_full_length(self):
        sys = coxeter_system("B3")
        for w in longest_element_reduced_words(sys):
            assert len(w) == 9
            assert is_reduced(sys, w)

    def test_reduced_words_of_general_element(self):
        a3 = coxeter_system("A3")
        words = list(reduced_words(a3, (1, 2, 1)))
        assert words == [(1, 2, 1), (2, 1, 2)]
        assert list(reduced_words(a3, ())) == [()]

    def test_matsumoto_connectivity(self):
        # braid-move closure of one reduced word equals the full set
        for name in ["A2", "A3", "B2", "B3", "I2:6"]:
            sys = coxeter_system(name)
            words = set(longest_element_reduced_words(sys))
            start = next(iter(sorted(words)))
            seen = {start}
            frontier = [start]
            while frontier:
                u = frontier.pop()
                for _, t in braid_move_targets(sys, u):
                    if t not in seen:
                        seen.add(t)
                        frontier.append(t)
            assert seen == words

    def test_budget_exceeded(self):
        sys = coxeter_system("A3")
        budget = Budget(max_words=5)
        with pytest.raises(BudgetExceededError) as err:
            list(longest_element_reduced_words(sys, budget=budget))
        assert err.value.partial == 5


class TestCSortingWord:
    def test_a3_base_word(self):
        assert c_sorting_word(coxeter_system("A3")) == (1, 2, 3, 1, 2, 1)

    def test_b2_base_word(self):
        assert c_sorting_word(coxeter_system("B2")) == (1, 2, 1, 2)

    def test_custom_order(self):
        a3 = coxeter_system("A3")
        w = c_sorting_word(a3, (2, 1, 3))
        assert is_reduced(a3, w) and len(w) == 6
        assert w == (2, 1, 3, 2, 1, 3)


class TestSpectrum:
    @pytest.mark.parametrize("name", sorted(ABELIAN_TABLE))
    def test_reference_tables(self, name):
        spec = abelian_spectrum(coxeter_system(name))
        assert spec.vectors == frozenset(ABELIAN_TABLE[name])

    @pytest.mark.parametrize("name", sorted(ABELIAN_SUMMARY))
    def test_summary_rows(self, name):
        spec = abelian_spectrum(coxeter_system(name))
        row = ABELIAN_SUMMARY[name]
        assert len(spec.vectors) == row["count"]
        assert spec.mu == row["min"]
        assert tuple(max(v[i] for v in spec.vectors) for i in range(spec.rank)) == row["max"]

    def test_nu_values(self):
        assert abelian_spectrum(coxeter_system("A3")).nu == 3
        assert abelian_spectrum(coxeter_system("B3")).nu == 4
        assert abelian_spectrum(coxeter_system("A2")).nu == 2

    @pytest.mark.parametrize(
        "n,expected",
        [(1, (1,)), (2, (1, 1)), (3, (1, 2, 1)), (4, (1, 2, 2, 1)), (5, (1, 2, 3, 2, 1))],
    )
    def test_type_a_minimum_multiplicities(self, n, expected):
        assert abelian_spectrum(coxeter_system(f"A{n}")).mu == expected

    def test_streaming_agrees_with_aggregate(self):
        for name in ["A3", "B3", "I2:5"]:
            sys = coxeter_system(name)
            agg = abelian_spectrum(sys, aggregate=True)
            stream = abelian_spectrum(sys, aggregate=False)
            assert agg.vectors == stream.vectors
            assert agg.counts == stream.counts
            assert agg.word_count == stream.word_count

    def test_spectrum_of_general_element(self):
        a3 = coxeter_system("A3")
        spec = abelian_spectrum(a3, (1, 2, 1))
        assert spec.vectors == {(2, 1, 0), (1, 2, 0)}
        assert spec.word_count == 2

    def test_counts_agree_with_enumeration(self):
        sys = coxeter_system("B3")
        spec = abelian_spectrum(sys)
        direct = {}
        for w in longest_element_reduced_words(sys):
            vec = abelian_vector(w, 3)
            direct[vec] = direct.get(vec, 0) + 1
        assert spec.counts == direct


class TestDemazure:
    def test_absorbs_repeats(self):
        a2 = coxeter_system("A2")
        assert demazure_product(a2, (1, 1, 2, 2, 1, 1)) == a2.element_of((1, 2, 1))

    def test_reduced_word_is_fixed_point(self):
        a3 = coxeter_system("A3")
        w = (1, 2, 3, 1, 2, 1)
        assert demazure_product(a3, w) == a3.element_of(w)
