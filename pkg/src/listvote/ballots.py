"""Voter distributions: ingestion, generators, ring weights, projection.

A voter distribution assigns each submitted list an exact positive weight,
with weights summing to 1. Ballot files carry raw multiplicities (integer
counts or exact shares) and are normalized on the way in. Distributions
are immutable once built.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Iterable, Mapping, Sequence

from .errors import BallotFormatError, ParameterError
from .exactnum import format_rational, parse_rational
from .johnson import (
    BallSpec,
    CandidateSubset,
    ElectionParams,
    ball,
    distance,
    iter_lists,
    ring,
    ring_size,
    validate_list,
)


@dataclass(frozen=True)
class VoterDistribution:
    """Probability distribution over j-element lists.

    Only lists with positive weight are stored; weights sum to exactly 1.
    """

    params: ElectionParams
    support: Mapping[CandidateSubset, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "support", dict(self.support))
        total = Fraction(0)
        for lst, weight in self.support.items():
            validate_list(lst, self.params)
            if weight <= 0:
                raise ParameterError(f"non-positive weight {weight} on {lst}")
            total += weight
        if total != 1:
            raise ParameterError(f"weights sum to {total}, expected 1")

    def weight(self, lst: CandidateSubset) -> Fraction:
        return self.support.get(lst, Fraction(0))

    def items(self):
        return self.support.items()

    def __len__(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class RingWeights:
    """Per-ring mass of a distribution about a center list."""

    center: CandidateSubset
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if any(w < 0 for w in self.weights):
            raise ParameterError("ring weights must be non-negative")
        if sum(self.weights) != 1:
            raise ParameterError(f"ring weights sum to {sum(self.weights)}, expected 1")


@dataclass(frozen=True)
class BallotEntry:
    """One ballot-file record: a candidate set plus its multiplicity.

    An ``int`` multiplicity is a raw voter count; a ``Fraction`` is an
    exact pre-normalized share. The distinction is preserved on write.
    """

    subset: CandidateSubset
    multiplicity: int | Fraction

    def __post_init__(self):
        if self.multiplicity <= 0:
            raise ParameterError(f"multiplicity must be positive, got {self.multiplicity}")


@dataclass(frozen=True)
class RawBallotFile:
    """Parsed ballot file: election parameters plus raw entries.

    Entry lists may be shorter than j (between 1 and j members); short
    entries must pass through :func:`complete_short_lists` before
    normalization.
    """

    params: ElectionParams
    entries: tuple[BallotEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for entry in self.entries:
            size = len(entry.subset)
            if not 1 <= size <= self.params.j:
                raise ParameterError(
                    f"entry {entry.subset} has size {size}, expected 1..{self.params.j}"
                )
            if entry.subset.members[-1] > self.params.n:
                raise ParameterError(f"entry {entry.subset} outside candidates 1..{self.params.n}")


def normalize(raw: RawBallotFile) -> VoterDistribution:
    """Turn raw multiplicities into a distribution summing to exactly 1.

    Duplicate lists are merged by addition. Entries shorter than j are
    rejected; complete them first.
    """
    if not raw.entries:
        raise BallotFormatError("ballot file has no entries")
    short = [e.subset for e in raw.entries if len(e.subset) < raw.params.j]
    if short:
        raise BallotFormatError(
            f"{len(short)} entries shorter than j={raw.params.j} "
            f"(first: {short[0]}); run complete_short_lists first"
        )
    totals: dict[CandidateSubset, Fraction] = {}
    for entry in raw.entries:
        totals[entry.subset] = totals.get(entry.subset, Fraction(0)) + Fraction(entry.multiplicity)
    grand = sum(totals.values())
    if grand <= 0:
        raise BallotFormatError("total multiplicity must be positive")
    return VoterDistribution(raw.params, {lst: m / grand for lst, m in totals.items()})


def uniform_on(params: ElectionParams, lists: Iterable[CandidateSubset]) -> VoterDistribution:
    """Uniform distribution on the given nonempty set of lists."""
    unique = set(lists)
    if not unique:
        raise ParameterError("uniform_on requires a nonempty set of lists")
    share = Fraction(1, len(unique))
    return VoterDistribution(params, {lst: share for lst in unique})


def ring_weights(dist: VoterDistribution, center: CandidateSubset) -> RingWeights:
    """Total mass on each ring about ``center``, indices 0..diameter."""
    validate_list(center, dist.params)
    weights = [Fraction(0)] * (dist.params.diameter + 1)
    for lst, weight in dist.items():
        weights[distance(lst, center)] += weight
    return RingWeights(center, tuple(weights))


def concentric(
    center: CandidateSubset,
    weights: RingWeights | Sequence[Fraction],
    params: ElectionParams,
) -> VoterDistribution:
    """Distribution with the given ring masses, uniform within each ring.

    Rings with zero mass contribute no support. Mass on a ring index
    beyond the diameter is rejected.
    """
    validate_list(center, params)
    vec = tuple(weights.weights if isinstance(weights, RingWeights) else weights)
    if any(w < 0 for w in vec):
        raise ParameterError("ring weights must be non-negative")
    if sum(vec) != 1:
        raise ParameterError(f"ring weights sum to {sum(vec)}, expected 1")
    for r, w in enumerate(vec):
        if r > params.diameter and w != 0:
            raise ParameterError(f"weight {w} on ring {r} beyond diameter {params.diameter}")
    support: dict[CandidateSubset, Fraction] = {}
    for r, w in enumerate(vec):
        if w == 0 or r > params.diameter:
            continue
        share = w / ring_size(params, r)
        for lst in ring(center, r, params):
            support[lst] = share
    return VoterDistribution(params, support)


def project_concentric(dist: VoterDistribution, center: CandidateSubset) -> VoterDistribution:
    """Redistribute each ring's mass uniformly over that ring.

    Keeps the ring weights of ``dist`` about ``center``; idempotent. The
    projection can only lower the best committee's approval, which is what
    makes it useful for worst-case analysis.
    """
    return concentric(center, ring_weights(dist, center), dist.params)


def complete_short_lists(raw: RawBallotFile, spec: BallSpec) -> RawBallotFile:
    """Extend short entries to full j-lists inside the given ball.

    Deterministic rule: fill with the smallest-index members of the center
    not already present, then smallest-index outsiders. Every entry
    (including full-length ones) must end up inside the ball; an entry
    with no valid completion is rejected with a diagnostic naming it.
    Multiplicities and entry order are preserved.
    """
    params = raw.params
    validate_list(spec.center, params)
    if spec.radius > params.diameter:
        raise ParameterError(f"radius {spec.radius} exceeds diameter {params.diameter}")
    center_members = spec.center.members
    out: list[BallotEntry] = []
    for entry in raw.entries:
        members = set(entry.subset.members)
        needed = params.j - len(members)
        if needed > 0:
            from_center = [c for c in center_members if c not in members][:needed]
            members.update(from_center)
            if len(members) < params.j:
                outsiders = (
                    c for c in range(1, params.n + 1)
                    if c not in members and c not in spec.center
                )
                for c in outsiders:
                    members.add(c)
                    if len(members) == params.j:
                        break
        completed = CandidateSubset(tuple(members))
        if distance(completed, spec.center) > spec.radius:
            raise ParameterError(
                f"entry {entry.subset} has no size-{params.j} superset within "
                f"distance {spec.radius} of {spec.center}"
            )
        out.append(BallotEntry(completed, entry.multiplicity))
    return RawBallotFile(params, tuple(out))


# ---------------------------------------------------------------------------
# Ballot file format (JSON)
#
# {"n": 7, "k": 4, "j": 3, "ballots": [
#     {"list": [1, 2, 3], "weight": "7/15"},
#     {"list": [4, 5, 6], "count": 2}, ...]}
#
# Exactly one of "weight" (a "p/q" string) or "count" (a positive integer)
# per record. Files written here round-trip byte-identically.
# ---------------------------------------------------------------------------

_TOP_KEYS = {"n", "k", "j", "ballots"}
_ENTRY_KEYS = {"list", "weight", "count"}


def loads_ballot_file(text: str) -> RawBallotFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BallotFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise BallotFormatError("top level must be an object")
    if set(doc) != _TOP_KEYS:
        raise BallotFormatError(f"top-level keys must be {sorted(_TOP_KEYS)}, got {sorted(doc)}")
    for key in ("n", "k", "j"):
        if not isinstance(doc[key], int):
            raise BallotFormatError(f"header field {key!r} must be an integer")
    try:
        params = ElectionParams(doc["n"], doc["k"], doc["j"])
    except ParameterError as exc:
        raise BallotFormatError(str(exc)) from exc
    if not isinstance(doc["ballots"], list):
        raise BallotFormatError('"ballots" must be an array')
    entries = []
    for i, rec in enumerate(doc["ballots"]):
        if not isinstance(rec, dict) or not set(rec) <= _ENTRY_KEYS:
            raise BallotFormatError(f"ballot {i}: keys must be among {sorted(_ENTRY_KEYS)}")
        if "list" not in rec or not isinstance(rec["list"], list):
            raise BallotFormatError(f'ballot {i}: missing "list" array')
        if ("weight" in rec) == ("count" in rec):
            raise BallotFormatError(f'ballot {i}: exactly one of "weight"/"count" required')
        try:
            subset = CandidateSubset(tuple(rec["list"]))
        except (ParameterError, TypeError) as exc:
            raise BallotFormatError(f"ballot {i}: bad list {rec['list']}: {exc}") from exc
        if "count" in rec:
            if not isinstance(rec["count"], int) or rec["count"] <= 0:
                raise BallotFormatError(f"ballot {i}: count must be a positive integer")
            multiplicity: int | Fraction = rec["count"]
        else:
            if not isinstance(rec["weight"], str):
                raise BallotFormatError(f"ballot {i}: weight must be a string like \"7/15\"")
            try:
                multiplicity = parse_rational(rec["weight"])
            except ValueError as exc:
                raise BallotFormatError(f"ballot {i}: {exc}") from exc
            if multiplicity <= 0:
                raise BallotFormatError(f"ballot {i}: weight must be positive")
        try:
            entries.append(BallotEntry(subset, multiplicity))
        except ParameterError as exc:
            raise BallotFormatError(f"ballot {i}: {exc}") from exc
    try:
        return RawBallotFile(params, tuple(entries))
    except ParameterError as exc:
        raise BallotFormatError(str(exc)) from exc


def dumps_ballot_file(raw: RawBallotFile) -> str:
    # One record per line keeps files diffable and the round trip
    # byte-identical.
    records = []
    for entry in raw.entries:
        members = ", ".join(str(c) for c in entry.subset.members)
        if isinstance(entry.multiplicity, int):
            tail = f'"count": {entry.multiplicity}'
        else:
            tail = f'"weight": "{format_rational(entry.multiplicity)}"'
        records.append(f'    {{"list": [{members}], {tail}}}')
    body = ",\n".join(records)
    header = f'  "n": {raw.params.n},\n  "k": {raw.params.k},\n  "j": {raw.params.j},'
    return "{\n" + header + '\n  "ballots": [\n' + body + "\n  ]\n}\n"


def read_ballot_file(path: str | Path) -> RawBallotFile:
    return loads_ballot_file(Path(path).read_text())


def write_ballot_file(raw: RawBallotFile, path: str | Path) -> None:
    Path(path).write_text(dumps_ballot_file(raw))


def distribution_to_raw(dist: VoterDistribution) -> RawBallotFile:
    """Ballot file carrying a distribution's exact weights, sorted by list."""
    entries = tuple(
        BallotEntry(lst, weight) for lst, weight in sorted(dist.items())
    )
    return RawBallotFile(dist.params, entries)


# ---------------------------------------------------------------------------
# Generators used by randomized checks and the CLI.
# ---------------------------------------------------------------------------

def random_distribution(
    params: ElectionParams,
    rng: Random,
    pool: Sequence[CandidateSubset] | None = None,
    max_support: int = 10,
) -> VoterDistribution:
    """Random sparse distribution, deterministic given the rng state.

    Picks a support of up to ``max_support`` lists from ``pool`` (default:
    all lists) and gives them random positive weights normalized to 1.
    """
    lists = list(pool) if pool is not None else list(iter_lists(params))
    size = rng.randint(1, min(len(lists), max_support))
    chosen = rng.sample(lists, size)
    raw = [rng.randint(1, 99) for _ in chosen]
    total = sum(raw)
    return VoterDistribution(params, {l: Fraction(w, total) for l, w in zip(chosen, raw)})


def sample_ball_counts(
    params: ElectionParams,
    spec: BallSpec,
    voters: int,
    rng: Random,
) -> RawBallotFile:
    """Draw ``voters`` ballots uniformly from a ball, as integer counts."""
    if voters <= 0:
        raise ParameterError(f"voters must be positive, got {voters}")
    lists = sorted(ball(spec, params))
    counts = Counter(rng.choices(lists, k=voters))
    entries = tuple(BallotEntry(lst, counts[lst]) for lst in sorted(counts))
    return RawBallotFile(params, entries)
