from fractions import Fraction
from random import Random

import pytest

from listvote import (
    ElectionParams,
    ParameterError,
    best_committees,
    brute_best,
    brute_minimax_grid,
    random_distribution,
    worst_case_concentric,
)
from conftest import dist_from, subset


class TestBruteBest:
    def test_example_election(self, example_distribution):
        result = brute_best(example_distribution)
        assert result.best_value == Fraction(8, 15)
        assert result.winners == (subset(4, 5, 6, 7),)

    def test_point_mass_winners_are_all_supersets(self):
        params = ElectionParams(6, 4, 3)
        dist = dist_from(params, {(1, 2, 3): Fraction(1)})
        result = brute_best(dist)
        assert result.best_value == 1
        assert result.winners == (
            subset(1, 2, 3, 4),
            subset(1, 2, 3, 5),
            subset(1, 2, 3, 6),
        )

    def test_size_guard(self):
        params = ElectionParams(21, 4, 3)
        dist = dist_from(params, {(1, 2, 3): Fraction(1)})
        with pytest.raises(ParameterError):
            brute_best(dist)

    def test_agrees_with_optimized_paths(self):
        rng = Random(211)
        for _ in range(60):
            n = rng.randint(4, 9)
            k = rng.randint(2, n - 1)
            j = rng.randint(1, k)
            dist = random_distribution(ElectionParams(n, k, j), rng)
            s = j if rng.random() < 0.5 else rng.randint(0, j)
            reference = brute_best(dist, s)
            fast = best_committees(dist, s=s)
            assert fast.best_value == reference.best_value
            assert fast.winners == reference.winners


class TestBruteMinimaxGrid:
    def test_radius_zero_is_one(self):
        assert brute_minimax_grid(ElectionParams(6, 4, 3), 0, 7) == 1

    def test_radius_one_grid_contains_optimum(self):
        assert brute_minimax_grid(ElectionParams(6, 4, 3), 1, 12) == Fraction(1, 3)

    def test_refinement_is_monotone_and_above_exact(self):
        params = ElectionParams(6, 4, 3)
        exact = worst_case_concentric(params, 2).value
        coarse = brute_minimax_grid(params, 2, 12)
        fine = brute_minimax_grid(params, 2, 24)
        assert coarse >= fine >= exact

    def test_equality_when_optimum_on_grid(self):
        params = ElectionParams(6, 4, 3)
        exact = worst_case_concentric(params, 2)
        denominators = {w.denominator for w in exact.weights}
        assert denominators <= {1, 2, 5, 10}
        assert brute_minimax_grid(params, 2, 10) == exact.value

    def test_guards(self):
        params = ElectionParams(12, 6, 5)
        with pytest.raises(ParameterError):
            brute_minimax_grid(params, 4, 10)
        with pytest.raises(ParameterError):
            brute_minimax_grid(params, 2, 61)
