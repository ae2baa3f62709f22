"""Approval tallying and exhaustive most-popular-committee search.

A voter approves a committee when it contains her whole list, or, under
the threshold variant, at least s of its members. The search is always
exhaustive and exact: the full argmax set is returned and ties are never
broken. Two interchangeable strategies cover the two practical regimes,
sparse ballot data versus dense distributions over many lists.

The committee space may be partitioned across workers: partial (max,
argmax) results merge associatively via :func:`merge_partials` and the
merged result is bit-identical to a single-worker run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

from .ballots import VoterDistribution
from .errors import ParameterError
from .exactnum import format_rational, rank_subset, unrank_subset
from .johnson import CandidateSubset, validate_committee

log = logging.getLogger(__name__)

# Dense enumeration walks all C(n, k) committees; refuse clearly rather
# than grind forever.
DENSE_MAX_N = 28


@dataclass(frozen=True)
class TallyResult:
    """Best approval value with the complete set of committees achieving it."""

    best_value: Fraction
    winners: tuple[CandidateSubset, ...]
    strategy_used: str

    def __post_init__(self):
        if not self.winners:
            raise ParameterError("a tally result needs at least one winner")
        if list(self.winners) != sorted(self.winners):
            raise ParameterError("winners must be sorted lexicographically")

    def to_dict(self) -> dict:
        return {
            "best_value": format_rational(self.best_value),
            "winners": [list(w.members) for w in self.winners],
            "strategy": self.strategy_used,
        }


def approval(dist: VoterDistribution, committee: CandidateSubset) -> Fraction:
    """Total weight of lists entirely contained in ``committee``."""
    validate_committee(committee, dist.params)
    cmask = committee.mask
    return sum(
        (w for lst, w in dist.items() if lst.mask & ~cmask == 0),
        Fraction(0),
    )


def threshold_approval(dist: VoterDistribution, committee: CandidateSubset, s: int) -> Fraction:
    """Total weight of lists sharing at least ``s`` members with ``committee``.

    ``s = j`` reduces exactly to :func:`approval`; ``s = 0`` is 1.
    """
    validate_committee(committee, dist.params)
    if not 0 <= s <= dist.params.j:
        raise ParameterError(f"threshold {s} outside 0..{dist.params.j}")
    cmask = committee.mask
    return sum(
        (w for lst, w in dist.items() if (lst.mask & cmask).bit_count() >= s),
        Fraction(0),
    )


def average_approval(dist: VoterDistribution) -> Fraction:
    """Mean approval over all committees: C(k, j) / C(n, j) for any distribution.

    Each list is contained in exactly C(n-j, k-j) committees, so the sum
    of approvals over all C(n, k) committees is C(n-j, k-j) regardless of
    the weights, and the mean collapses to this closed form.
    """
    p = dist.params
    return Fraction(comb(p.k, p.j), comb(p.n, p.j))


def merge_partials(
    parts: Iterable[tuple[Fraction, list[CandidateSubset]]],
) -> tuple[Fraction, list[CandidateSubset]]:
    """Merge per-partition (max, argmax-list) pairs exactly."""
    best: Fraction | None = None
    winners: list[CandidateSubset] = []
    for value, arg in parts:
        if best is None or value > best:
            best, winners = value, list(arg)
        elif value == best:
            winners.extend(arg)
    if best is None:
        raise ParameterError("no partial results to merge")
    return best, winners


def predicted_work(dist: VoterDistribution) -> dict[str, int]:
    """Operation counts steering the sparse/dense choice."""
    p = dist.params
    return {
        "sparse": len(dist) * comb(p.n - p.j, p.k - p.j),
        "dense": comb(p.n, p.k) * comb(p.k, p.j),
    }


def best_committees(
    dist: VoterDistribution,
    s: int | None = None,
    strategy: str | None = None,
) -> TallyResult:
    """Exact maximum approval over all committees, with every argmax.

    ``s`` relaxes the rule to threshold approval (default: full
    containment, s = j). Strategy is chosen by predicted operation count
    unless forced; the threshold variant always enumerates densely.
    """
    p = dist.params
    if s is None:
        s = p.j
    if not 0 <= s <= p.j:
        raise ParameterError(f"threshold {s} outside 0..{p.j}")
    if strategy not in (None, "sparse", "dense"):
        raise ParameterError(f"unknown strategy {strategy!r}")

    if s < p.j:
        if strategy == "sparse":
            raise ParameterError("threshold tallying below j has no sparse strategy")
        return _dense_threshold(dist, s)

    if strategy is None:
        work = predicted_work(dist)
        strategy = "sparse" if work["sparse"] < work["dense"] else "dense"
    if strategy == "sparse":
        return _sparse_scatter(dist)
    return _dense_scan(dist)


def _check_dense_size(n: int, k: int) -> None:
    if n > DENSE_MAX_N:
        raise ParameterError(
            f"dense enumeration of C({n},{k}) committees refused for n > {DENSE_MAX_N}; "
            "use sparse tallying or reduce n"
        )


def _sparse_scatter(dist: VoterDistribution) -> TallyResult:
    """Scatter each support list's weight onto its superset committees."""
    p = dist.params
    ops = predicted_work(dist)["sparse"]
    # No size cap here, but say what is coming on instances too big for dense.
    log.log(
        logging.INFO if p.n > DENSE_MAX_N else logging.DEBUG,
        "sparse tally: %d scatter ops predicted", ops,
    )
    acc: dict[int, Fraction] = {}
    all_candidates = range(1, p.n + 1)
    for lst, weight in dist.items():
        others = [c for c in all_candidates if c not in lst]
        for extra in combinations(others, p.k - p.j):
            members = tuple(sorted(lst.members + extra))
            r = rank_subset(members, p.n)
            acc[r] = acc.get(r, Fraction(0)) + weight
    best = max(acc.values())
    winners = sorted(
        CandidateSubset(unrank_subset(r, p.n, p.k)) for r, v in acc.items() if v == best
    )
    return TallyResult(best, tuple(winners), "sparse")


def _dense_scan(dist: VoterDistribution) -> TallyResult:
    """Walk every committee, summing its j-sublists via ranked lookup."""
    p = dist.params
    _check_dense_size(p.n, p.k)
    weight_by_rank = [Fraction(0)] * comb(p.n, p.j)
    for lst, weight in dist.items():
        weight_by_rank[rank_subset(lst.members, p.n)] = weight

    def committee_value(members: tuple[int, ...]) -> Fraction:
        return sum(
            (weight_by_rank[rank_subset(sub, p.n)] for sub in combinations(members, p.j)),
            Fraction(0),
        )

    value, winners = merge_partials(
        [_scan_committees(combinations(range(1, p.n + 1), p.k), committee_value)]
    )
    return TallyResult(value, tuple(sorted(winners)), "dense")


def _dense_threshold(dist: VoterDistribution, s: int) -> TallyResult:
    p = dist.params
    _check_dense_size(p.n, p.k)
    support = [(lst.mask, w) for lst, w in dist.items()]

    def committee_value(members: tuple[int, ...]) -> Fraction:
        cmask = 0
        for c in members:
            cmask |= 1 << c
        return sum(
            (w for mask, w in support if (mask & cmask).bit_count() >= s),
            Fraction(0),
        )

    value, winners = merge_partials(
        [_scan_committees(combinations(range(1, p.n + 1), p.k), committee_value)]
    )
    return TallyResult(value, tuple(sorted(winners)), "dense")


def _scan_committees(members_iter, committee_value) -> tuple[Fraction, list[CandidateSubset]]:
    """One partition's (max, argmax) scan; exact, order-independent."""
    best: Fraction | None = None
    winners: list[tuple[int, ...]] = []
    for members in members_iter:
        value = committee_value(members)
        if best is None or value > best:
            best, winners = value, [members]
        elif value == best:
            winners.append(members)
    assert best is not None
    return best, [CandidateSubset(m) for m in winners]
