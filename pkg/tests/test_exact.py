from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import numpy as np
import pytest

from sortnet import exact
from sortnet.core import SortingNetwork, subnetwork
from sortnet.exact import (COROLLARY_NETWORKS, corollary2_probability, count_networks,
                           enumerate_networks, expected_subnet_swaps_bruteforce, falling_factorial,
                           first_swap_law, first_swap_pmf, hypergeometric_pmf, law_mean, lemma6_check,
                           location_pmf, network_array, restrict_all, subnet_first_vs_second_swap,
                           swap_count_law, theorem1_expectation)

F = Fraction


class TestEnumeration:
    def test_three(self):
        assert {w.swaps for w in enumerate_networks(3)} == {(1, 2, 1), (2, 1, 2)}

    def test_two(self):
        assert [w.swaps for w in enumerate_networks(2)] == [(1,)]

    def test_four_has_sixteen(self):
        nets = list(enumerate_networks(4))
        assert len(nets) == len(set(nets)) == 16

    def test_range_guard(self):
        with pytest.raises(ValueError):
            next(enumerate_networks(1))
        with pytest.raises(ValueError, match="allow_large"):
            next(enumerate_networks(7))
        with pytest.raises(ValueError):
            next(enumerate_networks(8, allow_large=True))

    def test_n7_allowed_with_override(self):
        first = next(enumerate_networks(7, allow_large=True))
        assert first.n == 7 and first.size == 21

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_permutation_filter(self, n):
        # independent oracle: all words over 1..n-1 of length N that validate
        from itertools import product
        from sortnet.core import validate
        N = n * (n - 1) // 2
        brute = {w for w in product(range(1, n), repeat=N) if validate(n, w)}
        assert {w.swaps for w in enumerate_networks(n)} == brute

    def test_array_rows_are_distinct_networks(self):
        arr = network_array(5)
        assert arr.shape == (768, 10)
        assert len({tuple(r) for r in arr.tolist()}) == 768


class TestCounting:
    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 2), (4, 16), (5, 768)])
    def test_small(self, n, expected):
        assert count_networks(n) == expected

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_enumeration(self, n):
        assert count_networks(n) == len(network_array(n))

    def test_six(self):
        assert count_networks(6) == 292864


class TestFallingFactorial:
    def test_values(self):
        assert falling_factorial(F(3, 2), 1) == F(3, 2)
        assert falling_factorial(F(5, 2), 2) == F(15, 4)
        assert falling_factorial(5, 5) == 120
        assert falling_factorial(F(7, 3), 0) == 1

    @pytest.mark.parametrize("r", range(8))
    def test_factorial(self, r):
        assert falling_factorial(r, r) == factorial(r)

    def test_negative_r(self):
        with pytest.raises(ValueError):
            falling_factorial(3, -1)


class TestFirstSwap:
    def test_three(self):
        assert first_swap_pmf(3, 1) == F(1, 2)

    def test_four(self):
        assert first_swap_law(4) == [F(5, 16), F(3, 8), F(5, 16)]

    def test_zero_outside(self):
        assert first_swap_pmf(5, 0) == 0 and first_swap_pmf(5, 5) == 0 and first_swap_pmf(5, -3) == 0

    @pytest.mark.parametrize("n", range(2, 21))
    def test_symmetric_and_normalised(self, n):
        law = first_swap_law(n)
        assert law == law[::-1]
        assert sum(law) == 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_enumeration(self, n):
        assert location_pmf(n, 1) == first_swap_law(n)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_stationary(self, n):
        law = first_swap_law(n)
        for t in range(1, n * (n - 1) // 2 + 1):
            assert location_pmf(n, t) == law


class TestTheorem1:
    def test_four_two(self):
        assert theorem1_expectation(4, 2) == F(9, 4)

    def test_three_one(self):
        # (count of 1s in 121 + count in 212) / 2
        assert theorem1_expectation(3, 1) == F(2 + 1, 2)

    def test_five_one(self):
        assert theorem1_expectation(5, 1) == F(7, 2) * F(5, 2) * F(3, 2) / 6 == F(35, 16)

    @pytest.mark.parametrize("m", range(2, 31))
    def test_sum_is_pairs(self, m):
        assert sum(theorem1_expectation(m, j) for j in range(1, m)) == comb(m, 2)

    @pytest.mark.parametrize("m", range(2, 31))
    def test_is_pairs_times_first_swap(self, m):
        for j in range(1, m):
            assert theorem1_expectation(m, j) == comb(m, 2) * first_swap_pmf(m, j)

    @pytest.mark.parametrize("m, j", [(1, 1), (4, 0), (4, 4)])
    def test_range(self, m, j):
        with pytest.raises(ValueError):
            theorem1_expectation(m, j)


class TestBruteForce:
    def test_five_four_two(self):
        assert expected_subnet_swaps_bruteforce(5, 4, 2) == F(9, 4)

    def test_six_three_one(self):
        assert expected_subnet_swaps_bruteforce(6, 3, 1) == F(3, 2)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_n_equals_m_is_plain_average(self, m):
        nets = list(enumerate_networks(m))
        for j in range(1, m):
            assert expected_subnet_swaps_bruteforce(m, m, j) == F(sum(w.count(j) for w in nets), len(nets))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_vectorised_restriction_matches_scalar(self, n):
        nets = list(enumerate_networks(n))
        for m in range(2, n + 1):
            for A in combinations(range(1, n + 1), m):
                arr = restrict_all(n, A)
                assert [tuple(r) for r in arr.tolist()] == [subnetwork(w, A).swaps for w in nets]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_theorem1_all_triples_small(self, n):
        for m in range(2, n + 1):
            for j in range(1, m):
                assert expected_subnet_swaps_bruteforce(n, m, j) == theorem1_expectation(m, j)

    def test_range(self):
        with pytest.raises(ValueError):
            expected_subnet_swaps_bruteforce(7, 3, 1)
        with pytest.raises(ValueError):
            expected_subnet_swaps_bruteforce(4, 5, 1)


class TestHypergeometric:
    def test_pair_drawn(self):
        assert hypergeometric_pmf(10, 4, 2, 2) == F(comb(4, 2), comb(10, 2)) == F(2, 15)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_symmetry(self, n):
        for m in range(n + 1):
            for k in range(n + 1):
                for i in range(-1, n + 2):
                    assert hypergeometric_pmf(n, m, k, i) == hypergeometric_pmf(n, k, m, i)

    def test_outside_support(self):
        assert hypergeometric_pmf(10, 4, 3, 4) == 0
        assert hypergeometric_pmf(10, 8, 8, 5) == 0  # below max(0, m + k - n) = 6
        assert hypergeometric_pmf(10, 4, 3, -1) == 0

    def test_sums_to_one(self):
        assert sum(hypergeometric_pmf(12, 5, 7, i) for i in range(6)) == 1

    def test_precondition(self):
        with pytest.raises(ValueError):
            hypergeometric_pmf(5, 6, 2, 1)


class TestLemma6:
    def test_four_three_one(self):
        ok, left, right = lemma6_check(4, 3, 1)
        assert ok and left == right == F(1, 2)
        assert F(5, 16) * 1 + F(6, 16) * F(1, 2) + F(5, 16) * 0 == F(1, 2)

    @pytest.mark.parametrize("m", range(2, 10))
    def test_n_equals_m(self, m):
        for j in range(1, m):
            assert lemma6_check(m, m, j)[0]

    def test_up_to_twenty(self):
        for n in range(2, 21):
            for m in range(2, n + 1):
                for j in range(1, m):
                    assert lemma6_check(n, m, j)[0]

    def test_precondition(self):
        with pytest.raises(ValueError):
            lemma6_check(3, 4, 1)


class TestCorollary2:
    def test_n4(self):
        assert corollary2_probability(4) == F(1, 4)

    def test_n5(self):
        assert corollary2_probability(5) == F(1, 4)

    def test_location_two_counts(self):
        for w in enumerate_networks(4):
            assert w.count(2) == (3 if w.swaps in COROLLARY_NETWORKS else 2)

    def test_targets_are_networks(self):
        for w in COROLLARY_NETWORKS:
            SortingNetwork(4, w)

    def test_range(self):
        with pytest.raises(ValueError):
            corollary2_probability(3)
        with pytest.raises(ValueError):
            corollary2_probability(7)


class TestLaws:
    @pytest.mark.parametrize("j", [1, 2])
    def test_m3_law_is_n_independent(self, j):
        base = swap_count_law(3, 3, j)
        for n in (4, 5, 6):
            assert swap_count_law(n, 3, j) == base

    def test_m4_law_changes(self):
        assert any(swap_count_law(4, 4, j) != swap_count_law(5, 4, j) for j in (1, 2, 3))

    @pytest.mark.parametrize("n, m", [(4, 3), (5, 4), (5, 5), (6, 4)])
    def test_law_mean_and_support(self, n, m):
        for j in range(1, m):
            law = swap_count_law(n, m, j)
            assert sum(law.values()) == 1
            assert min(law) >= 1
            assert law_mean(law) == theorem1_expectation(m, j)

    def test_n4_m4_law_from_enumeration(self):
        nets = list(enumerate_networks(4))
        for j in (1, 2, 3):
            hist = Counter(w.count(j) for w in nets)
            assert swap_count_law(4, 4, j) == {c: F(k, 16) for c, k in hist.items()}

    def test_subnet_law_five_four(self):
        law = exact.subnetwork_law(5, 4)
        assert len(law) == 16 and sum(law.values()) == 1
        assert sum(law[w] for w in COROLLARY_NETWORKS) == F(1, 4)


class TestNonStationarity:
    def test_five_four_differs(self):
        first, second = subnet_first_vs_second_swap(5, 4)
        assert first != second
        assert sum(first) == sum(second) == 1

    def test_four_four_agrees(self):
        first, second = subnet_first_vs_second_swap(4, 4)
        assert first == second == first_swap_law(4)

    def test_three_three(self):
        assert subnet_first_vs_second_swap(3, 3) == ([F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)])

    def test_second_swap_needs_three(self):
        with pytest.raises(ValueError):
            subnet_first_vs_second_swap(4, 2)


def test_configuration_array_matches_replay():
    cfg = exact.configuration_array(4)
    nets = network_array(4)
    for w, c in zip(nets, cfg):
        sigma = list(range(1, 5))
        for t, s in enumerate(w):
            assert list(c[t]) == sigma
            sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
    assert np.all(cfg[:, 0] == np.arange(1, 5))
