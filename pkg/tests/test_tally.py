from fractions import Fraction
from itertools import combinations
from math import comb
from random import Random

import pytest

from listvote import (
    BallSpec,
    CandidateSubset,
    ElectionParams,
    ParameterError,
    TallyResult,
    approval,
    average_approval,
    ball,
    best_committees,
    global_floor,
    iter_committees,
    iter_lists,
    merge_partials,
    project_concentric,
    random_distribution,
    threshold_approval,
    uniform_on,
)
from listvote.tally import predicted_work
from conftest import dist_from, subset


class TestApproval:
    def test_example_best_committee(self, example_distribution):
        assert approval(example_distribution, subset(4, 5, 6, 7)) == Fraction(8, 15)

    def test_example_committee_with_popular_list(self, example_distribution):
        assert approval(example_distribution, subset(1, 2, 3, 4)) == Fraction(7, 15)

    def test_point_mass(self):
        params = ElectionParams(6, 4, 3)
        dist = dist_from(params, {(1, 2, 3): Fraction(1)})
        assert approval(dist, subset(1, 2, 3, 4)) == 1
        assert approval(dist, subset(1, 2, 4, 5)) == 0

    def test_wrong_size_rejected(self, example_distribution):
        with pytest.raises(ParameterError):
            approval(example_distribution, subset(1, 2, 3))


class TestThresholdApproval:
    def test_s_equals_j_reduces_to_approval(self):
        rng = Random(17)
        params = ElectionParams(7, 4, 3)
        committees = sorted(iter_committees(params))
        for _ in range(50):
            dist = random_distribution(params, rng)
            committee = rng.choice(committees)
            assert threshold_approval(dist, committee, 3) == approval(dist, committee)

    def test_s_zero_is_one(self, example_distribution):
        for committee in iter_committees(example_distribution.params):
            assert threshold_approval(example_distribution, committee, 0) == 1

    def test_example_s2_brute_count(self, example_distribution):
        # Direct enumeration over the 5 support lists.
        committee = subset(4, 5, 6, 7)
        expected = sum(
            (
                w
                for lst, w in example_distribution.items()
                if lst.intersection_size(committee) >= 2
            ),
            Fraction(0),
        )
        assert threshold_approval(example_distribution, committee, 2) == expected
        assert expected == Fraction(8, 15)

    def test_monotone_in_s_over_all_committees(self):
        rng = Random(29)
        params = ElectionParams(7, 4, 3)
        committees = sorted(iter_committees(params))
        for _ in range(10):
            dist = random_distribution(params, rng)
            for committee in committees:
                values = [threshold_approval(dist, committee, s) for s in range(4)]
                assert values == sorted(values, reverse=True)

    def test_out_of_range_rejected(self, example_distribution):
        with pytest.raises(ParameterError):
            threshold_approval(example_distribution, subset(1, 2, 3, 4), 4)
        with pytest.raises(ParameterError):
            threshold_approval(example_distribution, subset(1, 2, 3, 4), -1)


class TestBestCommittees:
    def test_example_election(self, example_distribution):
        result = best_committees(example_distribution)
        assert result.best_value == Fraction(8, 15)
        assert result.winners == (subset(4, 5, 6, 7),)

    def test_uniform_everything_ties(self):
        params = ElectionParams(6, 4, 3)
        result = best_committees(uniform_on(params, iter_lists(params)))
        assert result.best_value == Fraction(1, 5)
        assert len(result.winners) == comb(6, 4)

    def test_uniform_ball_radius_two(self):
        params = ElectionParams(6, 4, 3)
        dist = uniform_on(params, ball(BallSpec(subset(1, 2, 3), 2), params))
        result = best_committees(dist)
        assert result.best_value == Fraction(4, 19)

    def test_strategies_agree_on_100_random_instances(self):
        rng = Random(101)
        for _ in range(100):
            n = rng.randint(4, 9)
            k = rng.randint(2, n - 1)
            j = rng.randint(1, k)
            dist = random_distribution(ElectionParams(n, k, j), rng)
            sparse = best_committees(dist, strategy="sparse")
            dense = best_committees(dist, strategy="dense")
            assert sparse.best_value == dense.best_value
            assert sparse.winners == dense.winners

    def test_strategy_chosen_by_predicted_work(self):
        params = ElectionParams(7, 4, 3)
        small = dist_from(params, {(1, 2, 3): Fraction(1)})
        work = predicted_work(small)
        assert work["sparse"] < work["dense"]
        assert best_committees(small).strategy_used == "sparse"
        full = uniform_on(params, iter_lists(params))
        work = predicted_work(full)
        assert work["sparse"] >= work["dense"]
        assert best_committees(full).strategy_used == "dense"

    def test_threshold_always_dense(self, example_distribution):
        result = best_committees(example_distribution, s=2)
        assert result.strategy_used == "dense"
        with pytest.raises(ParameterError):
            best_committees(example_distribution, s=2, strategy="sparse")

    def test_dense_size_guard(self):
        params = ElectionParams(30, 4, 3)
        dist = dist_from(params, {(1, 2, 3): Fraction(1)})
        with pytest.raises(ParameterError, match="C\\(30,4\\)"):
            best_committees(dist, strategy="dense")
        # sparse has no cap
        assert best_committees(dist, strategy="sparse").best_value == 1

    def test_winners_sorted(self):
        params = ElectionParams(6, 4, 3)
        result = best_committees(uniform_on(params, iter_lists(params)))
        assert list(result.winners) == sorted(result.winners)


class TestAverageApproval:
    def test_closed_form_643(self, example_distribution):
        params = ElectionParams(6, 4, 3)
        dist = uniform_on(params, iter_lists(params))
        assert average_approval(dist) == Fraction(1, 5)
        assert average_approval(example_distribution) == Fraction(4, 35)

    def test_point_mass_by_enumeration(self):
        params = ElectionParams(5, 3, 2)
        dist = dist_from(params, {(1, 2): Fraction(1)})
        committees = list(iter_committees(params))
        mean = sum((approval(dist, c) for c in committees), Fraction(0)) / len(committees)
        assert mean == Fraction(3, 10)
        assert average_approval(dist) == mean

    def test_mean_equals_best_only_when_constant(self):
        params = ElectionParams(6, 4, 3)
        flat = uniform_on(params, iter_lists(params))
        assert best_committees(flat).best_value == average_approval(flat)
        spiked = dist_from(params, {(1, 2, 3): Fraction(1)})
        assert best_committees(spiked).best_value > average_approval(spiked)


class TestIdentitiesAndFloors:
    def test_best_at_least_average(self):
        rng = Random(53)
        for _ in range(40):
            n = rng.randint(4, 9)
            k = rng.randint(2, n - 1)
            j = rng.randint(1, k)
            params = ElectionParams(n, k, j)
            dist = random_distribution(params, rng)
            assert best_committees(dist).best_value >= global_floor(params)

    def test_total_approval_identity(self):
        rng = Random(59)
        for _ in range(25):
            n = rng.randint(4, 10)
            k = rng.randint(2, n - 1)
            j = rng.randint(1, k)
            params = ElectionParams(n, k, j)
            dist = random_distribution(params, rng)
            total = sum(
                (approval(dist, c) for c in iter_committees(params)), Fraction(0)
            )
            assert total == comb(n - j, k - j)

    def test_projection_can_only_lower_the_best(self):
        rng = Random(61)
        for _ in range(100):
            n = rng.randint(4, 9)
            k = rng.randint(2, n - 1)
            j = rng.randint(1, k)
            params = ElectionParams(n, k, j)
            dist = random_distribution(params, rng)
            center = rng.choice(sorted(iter_lists(params)))
            projected = project_concentric(dist, center)
            assert best_committees(dist).best_value >= best_committees(projected).best_value


class TestPartitionMerge:
    def test_split_scan_merges_bit_identical(self, example_distribution):
        params = example_distribution.params
        support = dict(example_distribution.items())

        def value(members):
            cmask = 0
            for c in members:
                cmask |= 1 << c
            return sum(
                (w for lst, w in support.items() if lst.mask & ~cmask == 0),
                Fraction(0),
            )

        committees = list(combinations(range(1, params.n + 1), params.k))
        parts = []
        for chunk_start in range(0, len(committees), 7):
            chunk = committees[chunk_start : chunk_start + 7]
            local_best, local_winners = None, []
            for members in chunk:
                v = value(members)
                if local_best is None or v > local_best:
                    local_best, local_winners = v, [CandidateSubset(members)]
                elif v == local_best:
                    local_winners.append(CandidateSubset(members))
            parts.append((local_best, local_winners))
        merged_value, merged_winners = merge_partials(parts)
        reference = best_committees(example_distribution)
        assert merged_value == reference.best_value
        assert tuple(sorted(merged_winners)) == reference.winners

    def test_merge_order_independent(self):
        a = (Fraction(1, 3), [subset(1, 2, 3, 4)])
        b = (Fraction(1, 3), [subset(1, 2, 3, 5)])
        c = (Fraction(1, 4), [subset(2, 3, 4, 5)])
        v1, w1 = merge_partials([a, b, c])
        v2, w2 = merge_partials([c, b, a])
        assert v1 == v2
        assert sorted(w1) == sorted(w2)


class TestTallyResult:
    def test_serialization(self, example_distribution):
        doc = best_committees(example_distribution).to_dict()
        assert doc == {
            "best_value": "8/15",
            "winners": [[4, 5, 6, 7]],
            "strategy": "sparse",
        }

    def test_invariants(self):
        with pytest.raises(ParameterError):
            TallyResult(Fraction(1), (), "dense")
        with pytest.raises(ParameterError):
            TallyResult(
                Fraction(1), (subset(2, 3, 4, 5), subset(1, 2, 3, 4)), "dense"
            )
