"""Finite incidence models and the minimal stable-set construction.

A model is a finite point set with a family of "lines" (subsets of size >= 2),
the discrete stand-in for a variety swept by a family of rational curves.
Fixing a basepoint x, the lines through x play the role of the curves of the
family through x, and a subset V is stable (for x) when every line through x
that meets V *away from x* is entirely contained in V.  Meeting at x alone
does not count: the basepoint lies on every line of the pencil, so it carries
no incidence information (in the geometric picture, the evaluation map away
from the basepoint is what defines stability).

stable_closure grows the minimal stable superset of a seed point by absorbing,
in rounds, every line through the basepoint that meets the current set away
from the basepoint.  Absorbing all applicable lines per round (instead of one
component at a time) changes nothing about the result -- stable sets are
closed under intersection, so the minimal one is unique -- and makes the
construction independent of line order.  The recorded chain V0 c V1 c ... is
strictly increasing until the fixpoint.

On a finite model, two leaves through the same basepoint x either coincide or
meet only in x (every non-basepoint member of a leaf regenerates that same
leaf as its closure).  For a pair of points the two leaves F_{x,y} and F_{y,x}
can therefore relate in exactly three ways: equal, nested (one strictly
contains the other -- a discrete degeneracy with no equal-rank geometric
counterpart), or split (each contains a point the other misses).  Split pairs
are the genuine symmetry failures and are what assumption_check reports.

"General point" has no meaning on a finite model; every operation here is
per-pair or reports a full distribution, and adversarial fixtures can break
statements that hold for general points in the geometric setting.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import DegenerateQueryError, DomainError, ModelError, UnknownPointError


@dataclass(frozen=True)
class IncidenceModel:
    """Finite point set with a family of lines (subsets of size >= 2).

    Points and lines are canonicalized to sorted order on construction, so
    models built from differently-ordered input compare and print identically.
    """

    points: tuple[str, ...]
    lines: tuple[frozenset[str], ...]

    def __post_init__(self):
        points = tuple(self.points)
        seen = set()
        for p in points:
            if not isinstance(p, str) or not p:
                raise ModelError(f"point ids must be non-empty strings, got {p!r}")
            if p in seen:
                raise ModelError(f"duplicate point id {p!r}")
            seen.add(p)
        lines = tuple(frozenset(line) for line in self.lines)
        for line in lines:
            if len(line) < 2:
                raise ModelError(f"line {sorted(line)} has fewer than two points")
            dangling = line - seen
            if dangling:
                raise ModelError(f"line {sorted(line)} mentions unknown point ids {sorted(dangling)}")
        if len(set(lines)) != len(lines):
            dupes = sorted(sorted(line) for line, cnt in Counter(lines).items() if cnt > 1)
            raise ModelError(f"duplicate lines: {dupes}")
        object.__setattr__(self, "points", tuple(sorted(points)))
        object.__setattr__(self, "lines", tuple(sorted(lines, key=sorted)))

    def to_dict(self) -> dict:
        return {"points": list(self.points), "lines": [sorted(line) for line in self.lines]}

    @classmethod
    def from_dict(cls, data) -> "IncidenceModel":
        if not isinstance(data, dict) or "points" not in data or "lines" not in data:
            raise ModelError('model JSON must be {"points": [...], "lines": [[...], ...]}')
        points = data["points"]
        lines = data["lines"]
        if not isinstance(points, list) or not isinstance(lines, list):
            raise ModelError('"points" and "lines" must both be arrays')
        for line in lines:
            if not isinstance(line, list):
                raise ModelError(f"each line must be an array of point ids, got {line!r}")
            if len(set(line)) != len(line):
                raise ModelError(f"line {line} repeats a point id")
        return cls(tuple(points), tuple(frozenset(line) for line in lines))

    @classmethod
    def load(cls, path: str | Path) -> "IncidenceModel":
        with open(path, encoding="utf-8") as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ModelError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(data)

    def _check_point(self, p: str) -> None:
        if p not in self.points:
            raise UnknownPointError(f"unknown point id {p!r}")


@dataclass(frozen=True)
class ClosureResult:
    """Outcome of one closure run.

    chain is the strictly increasing sequence V0 = {seed} c V1 c ... ending at
    the fixpoint (the final repeat is dropped); leaf is its last member.
    joined is False when no line through the basepoint contains the seed, in
    which case the leaf is the seed alone.  stable records the post-hoc
    stability verification of the leaf (always True by construction).
    """

    basepoint: str
    seed: str
    leaf: frozenset[str]
    chain: tuple[frozenset[str], ...]
    stable: bool
    joined: bool


def lines_through(model: IncidenceModel, x: str) -> tuple[frozenset[str], ...]:
    """The pencil of lines containing x, in canonical order."""
    model._check_point(x)
    return tuple(line for line in model.lines if x in line)


def stable_closure(model: IncidenceModel, x: str, y: str) -> ClosureResult:
    """Minimal stable superset of {y} for the basepoint x.

    Equal to the intersection of all x-stable sets containing y; the chain
    has at most |points| members.
    """
    model._check_point(x)
    model._check_point(y)
    if x == y:
        raise DegenerateQueryError(f"basepoint and seed must differ, both are {x!r}")
    pencil = lines_through(model, x)
    current = frozenset({y})
    chain = [current]
    while True:
        grown = set(current)
        core = current - {x}
        for line in pencil:
            if line & core:
                grown |= line
        frozen = frozenset(grown)
        if frozen == current:
            break
        current = frozen
        chain.append(current)
    stable = all(line <= current or not (line & (current - {x})) for line in pencil)
    return ClosureResult(x, y, current, tuple(chain), stable, x in current)


def e_invariant(model: IncidenceModel, x: str, y: str) -> int:
    """Number of lines through both x and y."""
    model._check_point(x)
    model._check_point(y)
    if x == y:
        raise DegenerateQueryError(f"e-invariant needs two distinct points, both are {x!r}")
    return sum(1 for line in model.lines if x in line and y in line)


def e_distribution(model: IncidenceModel) -> dict[int, int]:
    """Histogram of the e-invariant over all unordered point pairs."""
    if len(model.points) < 2:
        raise DomainError("e-distribution needs at least two points")
    counts = Counter(
        e_invariant(model, x, y) for x, y in itertools.combinations(model.points, 2)
    )
    return dict(sorted(counts.items()))


class PairClass(Enum):
    EQUAL = "equal"
    NESTED = "nested"
    SPLIT = "split"


def dichotomy_class(model: IncidenceModel, x: str, y: str) -> PairClass:
    """Relation between the leaf of y for basepoint x and the leaf of x for basepoint y.

    Meaningful for joined pairs (e_invariant >= 1); for unjoined pairs both
    leaves are singletons and the relation is vacuous.
    """
    fxy = stable_closure(model, x, y).leaf
    fyx = stable_closure(model, y, x).leaf
    if fxy == fyx:
        return PairClass.EQUAL
    if fxy < fyx or fyx < fxy:
        return PairClass.NESTED
    return PairClass.SPLIT


def dichotomy_report(model: IncidenceModel) -> dict[str, list[tuple[str, str]]]:
    """Classification of every joined pair, keyed by relation name."""
    out: dict[str, list[tuple[str, str]]] = {c.value: [] for c in PairClass}
    for x, y in itertools.combinations(model.points, 2):
        if e_invariant(model, x, y) == 0:
            continue
        out[dichotomy_class(model, x, y).value].append((x, y))
    return out


def assumption_check(model: IncidenceModel) -> list[tuple[str, str]]:
    """Joined pairs whose two leaves split (each holds a point the other misses).

    An empty list is the symmetric case; each returned pair witnesses the
    failure case, where the leaf intersection is strict in both leaves.
    Nested pairs (one leaf strictly inside the other) are a finite-model
    degeneracy, reported by dichotomy_report but not here.
    """
    return dichotomy_report(model)[PairClass.SPLIT.value]


@dataclass(frozen=True)
class LeafGroup:
    leaf: frozenset[str]
    seeds: tuple[str, ...]


@dataclass(frozen=True)
class LeafPartition:
    """Leaves through every seed != basepoint, grouped by equal leaf.

    overlaps lists index pairs of groups whose leaves share a point other
    than the basepoint; the construction makes this impossible, but it is
    verified and reported rather than assumed.
    """

    basepoint: str
    groups: tuple[LeafGroup, ...]
    overlaps: tuple[tuple[int, int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(g.leaf) for g in self.groups)


def leaf_partition(model: IncidenceModel, x: str) -> LeafPartition:
    model._check_point(x)
    by_leaf: dict[frozenset[str], list[str]] = {}
    for y in model.points:
        if y == x:
            continue
        by_leaf.setdefault(stable_closure(model, x, y).leaf, []).append(y)
    groups = tuple(
        LeafGroup(leaf, tuple(sorted(seeds)))
        for leaf, seeds in sorted(by_leaf.items(), key=lambda kv: sorted(kv[0]))
    )
    overlaps = tuple(
        (i, j)
        for i, j in itertools.combinations(range(len(groups)), 2)
        if (groups[i].leaf & groups[j].leaf) - {x}
    )
    return LeafPartition(x, groups, overlaps)


@dataclass(frozen=True)
class QuotientReport:
    """Result of collapsing each leaf at the basepoint to a single point.

    applicable is False (with a reason) when the preconditions fail: the
    model must have no split pairs, at least two leaves at the basepoint, and
    leaves meeting only in the basepoint.  When applicable, quotient points
    are named F0, F1, ... in canonical leaf order, quotient lines are the
    images of lines meeting at least two leaves away from the basepoint, and
    all_e_le_one flags whether every quotient e-invariant is <= 1.
    """

    basepoint: str
    applicable: bool
    reason: str | None
    leaves: dict[str, tuple[str, ...]] | None
    model: IncidenceModel | None
    e_distribution: dict[int, int] | None
    all_e_le_one: bool | None


def quotient_e_check(model: IncidenceModel, x: str) -> QuotientReport:
    model._check_point(x)

    def not_applicable(reason: str) -> QuotientReport:
        return QuotientReport(x, False, reason, None, None, None, None)

    split = assumption_check(model)
    if split:
        return not_applicable(f"symmetry fails: split pairs {split}")
    partition = leaf_partition(model, x)
    if len(partition.groups) < 2:
        return not_applicable("single leaf")
    if partition.overlaps:
        return not_applicable(f"leaves overlap away from the basepoint: {partition.overlaps}")

    names = [f"F{i}" for i in range(len(partition.groups))]
    leaves = {name: tuple(sorted(group.leaf)) for name, group in zip(names, partition.groups)}
    images = set()
    for line in model.lines:
        body = line - {x}
        image = frozenset(
            name
            for name, group in zip(names, partition.groups)
            if body & (group.leaf - {x})
        )
        if len(image) >= 2:
            images.add(image)
    quotient = IncidenceModel(tuple(names), tuple(images))
    dist = e_distribution(quotient)
    return QuotientReport(
        basepoint=x,
        applicable=True,
        reason=None,
        leaves=leaves,
        model=quotient,
        e_distribution=dist,
        all_e_le_one=max(dist) <= 1,
    )
