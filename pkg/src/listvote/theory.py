"""Closed-form guarantees and the exact worst case over concentric voters.

The central object is the ring-coverage table: entry [r][m] is the
fraction of the lists on ring r (about a center list v) contained in any
committee missing exactly m members of v. Committees with the same m form
a class and share that fraction, so a concentric distribution's best
committee is read off the table, and the worst case over all concentric
distributions on a ball is a tiny exact linear program.

Everything is pure computation over immutable tables; results are exact
Fractions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import HypothesisViolation, ParameterError
from .exactnum import binomial, format_rational
from .johnson import CandidateSubset, ElectionParams, ring_monotone_threshold, ring_size


@dataclass(frozen=True)
class RingCoverageTable:
    """entries[r][m]: fraction of ring-r lists inside a class-m committee.

    Rows run over ring indices 0..diameter, columns over class indices
    0..min(j, n-k). Entries lie in [0, 1]; entry [r][m] is 0 when r < m,
    since a committee missing m members of the center cannot contain a
    list that differs from the center in fewer than m places.
    """

    params: ElectionParams
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def max_class(self) -> int:
        return min(self.params.j, self.params.n - self.params.k)

    def get(self, r: int, m: int) -> Fraction:
        if not 0 <= r <= self.params.diameter:
            raise ParameterError(f"ring index {r} outside 0..{self.params.diameter}")
        if not 0 <= m <= self.max_class:
            raise ParameterError(f"class index {m} outside 0..{self.max_class}")
        return self.entries[r][m]


@dataclass(frozen=True)
class WorstCaseResult:
    """Exact minimax over concentric distributions on a ball.

    ``value`` is the smallest achievable best-committee approval,
    ``weights`` the minimizing ring masses (indices 0..radius), and
    ``achieving_class`` the smallest class index attaining the maximum.
    """

    value: Fraction
    weights: tuple[Fraction, ...]
    achieving_class: int

    def to_dict(self) -> dict:
        return {
            "value": format_rational(self.value),
            "weights": [format_rational(w) for w in self.weights],
            "achieving_class": self.achieving_class,
        }


@dataclass(frozen=True)
class CheckedCell:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a validator sweep: one line per checked cell."""

    name: str
    cells: tuple[CheckedCell, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def failures(self) -> tuple[CheckedCell, ...]:
        return tuple(c for c in self.cells if not c.ok)

    def render(self) -> str:
        lines = [f"[{self.name}] {'PASS' if self.passed else 'FAIL'} ({len(self.cells)} cells)"]
        for cell in self.cells:
            status = "ok" if cell.ok else "FAIL"
            suffix = f" {cell.detail}" if cell.detail else ""
            lines.append(f"  {cell.label}: {status}{suffix}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cells": [
                {"label": c.label, "ok": c.ok, "detail": c.detail} for c in self.cells
            ],
        }


def global_floor(params: ElectionParams) -> Fraction:
    """Guaranteed best-committee approval for any distribution: C(k,j)/C(n,j).

    This is the mean approval over all committees, so some committee
    always reaches it; the uniform distribution over all lists shows it
    is tight.
    """
    return Fraction(binomial(params.k, params.j), binomial(params.n, params.j))


def class_of(committee: CandidateSubset, center: CandidateSubset) -> int:
    """Number of members of ``center`` missing from ``committee``."""
    return len(center) - committee.intersection_size(center)


def class_size(params: ElectionParams, m: int) -> int:
    """Number of committees missing exactly m members of a fixed list.

    Choose which j-m center members stay, then fill the remaining
    k+m-j seats outside the center: C(j, j-m) * C(n-j, k+m-j). The
    classes m = 0..min(j, n-k) partition the committee space.
    """
    if not 0 <= m <= min(params.j, params.n - params.k):
        raise ParameterError(
            f"class index {m} outside 0..{min(params.j, params.n - params.k)}"
        )
    return binomial(params.j, params.j - m) * binomial(params.n - params.j, params.k + m - params.j)


def committees_in_class_containing(params: ElectionParams, r: int, m: int) -> int:
    """Class-m committees containing one fixed list at distance r from the center.

    Such a committee keeps r-m of the r center members the list dropped
    and fills its remaining seats away from both sets:
    C(r, r-m) * C(n-j-r, k-j+m-r). Zero when no such committee exists
    (in particular whenever r < m).
    """
    if not 0 <= r <= params.diameter:
        raise ParameterError(f"ring index {r} outside 0..{params.diameter}")
    if not 0 <= m <= min(params.j, params.n - params.k):
        raise ParameterError(
            f"class index {m} outside 0..{min(params.j, params.n - params.k)}"
        )
    n, k, j = params.n, params.k, params.j
    return binomial(r, r - m) * binomial(n - j - r, k - j + m - r)


def ring_coverage(params: ElectionParams) -> RingCoverageTable:
    """Build the full coverage table for the given parameters.

    entry[r][m] = C(j-m, j-r) * C(k+m-j, r) / (C(j, j-r) * C(n-j, r)):
    a class-m committee keeps j-m center members and k+m-j outsiders, and
    a ring-r list inside it must take j-r of the former and r of the
    latter. The equivalent factorial form breaks down at degenerate
    indices; the binomial form with zero extension is total.
    """
    n, k, j = params.n, params.k, params.j
    m_max = min(j, n - k)
    rows = []
    for r in range(params.diameter + 1):
        den = binomial(j, j - r) * binomial(n - j, r)
        rows.append(
            tuple(
                Fraction(binomial(j - m, j - r) * binomial(k + m - j, r), den)
                for m in range(m_max + 1)
            )
        )
    return RingCoverageTable(params, tuple(rows))


def coverage_factorial_form(params: ElectionParams, r: int, m: int) -> Fraction:
    """Factorial form of the coverage entry, defined only for m <= r <= k+m-j."""
    n, k, j = params.n, params.k, params.j
    if not (m <= r <= k + m - j):
        raise ParameterError(f"factorial form undefined at r={r}, m={m}")
    num = (
        factorial(r)
        * factorial(k + m - j)
        * factorial(j - m)
        * factorial(n - j - r)
    )
    den = (
        factorial(r - m)
        * factorial(k + m - j - r)
        * factorial(j)
        * factorial(n - j)
    )
    return Fraction(num, den)


def concentric_approval(
    weights: Sequence[Fraction],
    m: int,
    table: RingCoverageTable,
) -> Fraction:
    """Approval proportion of any class-m committee under a concentric distribution.

    With ring masses w_r, every committee in class m is approved by
    exactly sum_r w_r * entry[r][m] of the voters.
    """
    d = table.params.diameter
    if not 0 <= m <= table.max_class:
        raise ParameterError(f"class index {m} outside 0..{table.max_class}")
    for r, w in enumerate(weights):
        if r > d and w != 0:
            raise ParameterError(f"weight {w} on ring {r} beyond diameter {d}")
    return sum(
        (w * table.entries[r][m] for r, w in enumerate(weights) if r <= d),
        Fraction(0),
    )


def ring_monotonicity_check(params: ElectionParams) -> VerificationReport:
    """Verify: |ring r| <= |ring r+1| exactly when r <= the growth threshold."""
    threshold = ring_monotone_threshold(params)
    cells = []
    for r in range(params.diameter):
        grows = ring_size(params, r) <= ring_size(params, r + 1)
        predicted = r <= threshold
        cells.append(
            CheckedCell(
                label=f"n={params.n} j={params.j} r={r}",
                ok=grows == predicted,
                detail=f"|R_{r}|={ring_size(params, r)} |R_{r + 1}|={ring_size(params, r + 1)} "
                f"threshold={format_rational(threshold)}",
            )
        )
    return VerificationReport("ring-monotonicity", tuple(cells))


def coverage_monotonicity_check(
    params: ElectionParams,
    table: RingCoverageTable | None = None,
) -> VerificationReport:
    """Verify the class-monotonicity iff of the coverage table.

    For each non-vacuous cell, entry[r][m] >= entry[r][m+1] holds exactly
    when r <= j * (1 - (j-m)/(k+1)). Cells with m <= r <= min(D, k+m+1-j)
    are the valid ones: outside that range neither class m nor class m+1
    can contain any ring-r list and the comparison is vacuous.
    """
    if table is None:
        table = ring_coverage(params)
    n, k, j = params.n, params.k, params.j
    cells = []
    for m in range(table.max_class):
        for r in range(m, min(params.diameter, k + m + 1 - j) + 1):
            holds = table.entries[r][m] >= table.entries[r][m + 1]
            predicted = r * (k + 1) <= j * (k + 1 + m - j)
            cells.append(
                CheckedCell(
                    label=f"n={n} k={k} j={j} r={r} m={m}",
                    ok=holds == predicted,
                    detail=f"entry[r][m]={format_rational(table.entries[r][m])} "
                    f"entry[r][m+1]={format_rational(table.entries[r][m + 1])}",
                )
            )
    return VerificationReport("coverage-monotonicity", tuple(cells))


def corrupt_table(table: RingCoverageTable, r: int, m: int) -> RingCoverageTable:
    """Zero out one entry; a failure-injection hook for validator tests."""
    rows = [list(row) for row in table.entries]
    rows[r][m] = Fraction(0)
    return replace(table, entries=tuple(tuple(row) for row in rows))


def ball_floor_radius_limit(params: ElectionParams) -> Fraction:
    """Largest radius (exact) for which the ball floor is guaranteed."""
    j, k = params.j, params.k
    return Fraction(j * (k + 1 - j), k + 1)


def ball_floor(params: ElectionParams, radius: int) -> Fraction:
    """Guaranteed approval when all lists lie within ``radius`` of some list.

    Returns C(k-j, radius) / C(n-j, radius), valid for radius up to
    j * (1 - j/(k+1)); beyond that the guarantee is not claimed and a
    HypothesisViolation is raised (use :func:`worst_case_concentric`
    there instead). The extreme case is all mass on the outermost ring.
    """
    if params.j <= 1:
        raise ParameterError("ball floor requires lists of size at least 2")
    if not 0 <= radius <= params.diameter:
        raise ParameterError(f"radius {radius} outside 0..{params.diameter}")
    limit = ball_floor_radius_limit(params)
    if radius > limit:
        raise HypothesisViolation(
            f"radius {radius} exceeds the guaranteed regime "
            f"(limit {format_rational(limit)})"
        )
    return Fraction(
        binomial(params.k - params.j, radius),
        binomial(params.n - params.j, radius),
    )


def alpha_ball_floor(params: ElectionParams, radius: int, alpha: Fraction) -> Fraction:
    """Floor when only an alpha-fraction of voters lies inside the ball."""
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must be in [0, 1], got {alpha}")
    return ball_floor(params, radius) * alpha


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact Gauss-Jordan solve; None when the system is singular."""
    size = len(rows)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def worst_case_concentric(params: ElectionParams, radius: int) -> WorstCaseResult:
    """Exact minimax best-committee approval over concentric ball distributions.

    Minimizes, over ring-weight vectors (w_0..w_radius >= 0 summing
    to 1), the maximum over classes m of sum_r w_r * entry[r][m]. Solved
    by enumerating the basic feasible points of the small linear program
    in exact arithmetic: each candidate vertex fixes some weights at zero
    and makes some class constraints tight. Within the guaranteed-radius
    regime the optimum is all mass on the outermost ring and the value
    equals :func:`ball_floor`; beyond it this is the sanctioned tool.

    The radius must stay below the diameter; a ball of full diameter is
    the whole list space, where the global floor already answers the
    question.
    """
    if params.j <= 1:
        raise ParameterError("worst-case search requires lists of size at least 2")
    if not 0 <= radius < params.diameter:
        raise ParameterError(
            f"radius must satisfy 0 <= radius < diameter={params.diameter}, got {radius}"
        )
    table = ring_coverage(params)
    # every class in 0..max_class is nonempty, but the max must only ever
    # range over committees that exist
    classes = [m for m in range(table.max_class + 1) if class_size(params, m) > 0]
    cover = {m: [table.entries[r][m] for r in range(radius + 1)] for m in classes}
    width = radius + 2  # ring weights plus the max level t

    best: tuple[Fraction, tuple[Fraction, ...], int] | None = None
    indices = list(range(radius + 1))
    for zero_count in range(radius + 1):
        for zero_set in combinations(indices, zero_count):
            tight_count = radius + 1 - zero_count
            if tight_count > len(classes):
                continue
            for tight in combinations(classes, tight_count):
                rows: list[list[Fraction]] = []
                rhs: list[Fraction] = []
                for r in zero_set:
                    row = [Fraction(0)] * width
                    row[r] = Fraction(1)
                    rows.append(row)
                    rhs.append(Fraction(0))
                rows.append([Fraction(1)] * (radius + 1) + [Fraction(0)])
                rhs.append(Fraction(1))
                for m in tight:
                    rows.append(list(cover[m]) + [Fraction(-1)])
                    rhs.append(Fraction(0))
                sol = _solve_square(rows, rhs)
                if sol is None:
                    continue
                weights, t = sol[: radius + 1], sol[-1]
                if any(w < 0 for w in weights):
                    continue
                values = {
                    m: sum(c * w for c, w in zip(cover[m], weights)) for m in classes
                }
                if any(v > t for v in values.values()):
                    continue
                key = (t, tuple(weights))
                if best is None or key < best[:2]:
                    achieving = min(m for m, v in values.items() if v == t)
                    best = (t, tuple(weights), achieving)
    assert best is not None  # all mass on ring 0 is always a feasible vertex
    return WorstCaseResult(value=best[0], weights=best[1], achieving_class=best[2])
