"""Deliberately naive reference implementations for cross-checking.

These share only the basic value types with the optimized code paths, never
their internals: no ranking tables, no sparse scatter, no coverage table.
Single-threaded, guarded to small sizes, determinism over speed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .ballots import VoterDistribution
from .errors import ParameterError
from .johnson import CandidateSubset, ElectionParams
from .tally import TallyResult

BRUTE_MAX_N = 20


def brute_best(dist: VoterDistribution, s: int | None = None) -> TallyResult:
    """Best committee by double loop: every committee against every support list."""
    p = dist.params
    if p.n > BRUTE_MAX_N:
        raise ParameterError(f"brute force guarded to n <= {BRUTE_MAX_N}, got n={p.n}")
    if s is None:
        s = p.j
    if not 0 <= s <= p.j:
        raise ParameterError(f"threshold {s} outside 0..{p.j}")
    support = [(lst.mask, w) for lst, w in dist.items()]
    best: Fraction | None = None
    winners: list[tuple[int, ...]] = []
    for members in combinations(range(1, p.n + 1), p.k):
        cmask = 0
        for c in members:
            cmask |= 1 << c
        value = sum(
            (w for mask, w in support if (mask & cmask).bit_count() >= s),
            Fraction(0),
        )
        if best is None or value > best:
            best, winners = value, [members]
        elif value == best:
            winners.append(members)
    assert best is not None
    return TallyResult(best, tuple(CandidateSubset(m) for m in winners), "dense")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def brute_minimax_grid(
    params: ElectionParams,
    radius: int,
    grid_denominator: int,
) -> Fraction:
    """Grid search for the worst concentric distribution on a ball.

    Evaluates every ring-weight vector with entries i/grid_denominator
    summing to 1 and returns the smallest best-committee approval seen.
    Ring containment counts are recomputed here by raw enumeration, so
    the value upper-bounds the true minimax and must never fall below the
    exact solver's answer; the two agree whenever the optimizer's weights
    land on the grid.
    """
    if radius > 3:
        raise ParameterError(f"grid search guarded to radius <= 3, got {radius}")
    if grid_denominator > 60 or grid_denominator < 1:
        raise ParameterError(f"grid denominator must be 1..60, got {grid_denominator}")
    if not 0 <= radius <= params.diameter:
        raise ParameterError(f"radius {radius} outside 0..{params.diameter}")
    n, k, j = params.n, params.k, params.j
    center = tuple(range(1, j + 1))
    cset = set(center)

    rings: list[list[set[int]]] = [[] for _ in range(radius + 1)]
    for members in combinations(range(1, n + 1), j):
        d = j - len(cset.intersection(members))
        if d <= radius:
            rings[d].append(set(members))

    # Per committee: the fraction of each ring it contains, found by
    # direct subset tests. Identical profiles collapse to one.
    profiles: set[tuple[Fraction, ...]] = set()
    for members in combinations(range(1, n + 1), k):
        cs = set(members)
        profiles.add(
            tuple(
                Fraction(sum(1 for lst in rings[r] if lst <= cs), len(rings[r]))
                for r in range(radius + 1)
            )
        )

    best_min: Fraction | None = None
    d = grid_denominator
    for numerators in _compositions(d, radius + 1):
        weights = [Fraction(i, d) for i in numerators]
        top = max(
            sum((w * f for w, f in zip(weights, profile)), Fraction(0))
            for profile in profiles
        )
        if best_min is None or top < best_min:
            best_min = top
    assert best_min is not None
    return best_min
