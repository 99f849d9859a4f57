"""(-1)-curve classes on Bl_n(P^2): enumeration, meet graphs, disjoint configurations.

A (-1)-class is an integer class C with C.C = -1 and C.K = -1.  For n <= 8
general points every such numerical class is an actual irreducible curve;
this classical effectivity fact is assumed here, not re-verified.  The
classes fall into shape families: the exceptional classes E_i, the line
classes H - E_i - E_j, the conic classes 2H - E_{i1} - ... - E_{i5}, and
higher-degree classes (h >= 3, present from n = 7 on).

The census sizes for n = 0..8 are 0, 1, 3, 6, 10, 16, 27, 56, 240.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import DomainError, InvalidCurveError
from .lattice import DivisorClass, SurfaceModel, canonical_class, intersect, self_intersection

# Search box for the enumeration.  Writing C = (h; e_1..e_n), the defining
# equations become  sum e_i = 1 - 3h  and  sum e_i^2 = h^2 + 1.  Cauchy-Schwarz
# gives (1 - 3h)^2 <= n (h^2 + 1), i.e. (9 - n) h^2 - 6h + (1 - n) <= 0, whose
# integer solutions for n <= 8 satisfy -1 <= h <= 7; the boundary values
# h = -1 and h = 7 force all e_i equal to a non-integer, so 0 <= h <= 6
# suffices.  Each coefficient obeys e_i^2 <= h^2 + 1, hence |e_i| <= 7.
# Saturation of this box is confirmed by the enlarged-box oracle in the tests.
H_MAX = 6


class Family(Enum):
    EXCEPTIONAL = "exceptional"
    LINE = "line"
    CONIC = "conic"
    HIGHER = "higher"


_FAMILY_RANK = {Family.EXCEPTIONAL: 0, Family.LINE: 1, Family.CONIC: 2, Family.HIGHER: 3}


@dataclass(frozen=True)
class NegCurve:
    """A (-1)-curve class together with its shape family tag."""

    cls: DivisorClass
    family: Family

    @property
    def label(self) -> str:
        return self.cls.label

    def to_json(self) -> dict:
        return {"class": self.cls.to_json(), "family": self.family.value, "label": self.label}


def classify_family(cls: DivisorClass) -> Family:
    positive = sorted(c for c in cls.e if c > 0)
    negative = sorted(c for c in cls.e if c < 0)
    if cls.h == 0 and positive == [1] and not negative:
        return Family.EXCEPTIONAL
    if cls.h == 1 and not positive and negative == [-1, -1]:
        return Family.LINE
    if cls.h == 2 and not positive and negative == [-1] * 5:
        return Family.CONIC
    return Family.HIGHER


def curve_sort_key(curve: NegCurve) -> tuple:
    """Canonical order: family tag first, then (h, e) lexicographically."""
    return (_FAMILY_RANK[curve.family], curve.cls.h, curve.cls.e)


def _e_vectors(count: int, rsum: int, rsq: int):
    """All integer tuples of the given length with prescribed sum and sum of squares."""
    if rsq < 0:
        return
    if count == 0:
        if rsum == 0 and rsq == 0:
            yield ()
        return
    if rsum * rsum > count * rsq:  # Cauchy-Schwarz cut
        return
    bound = isqrt(rsq)
    for v in range(-bound, bound + 1):
        for rest in _e_vectors(count - 1, rsum - v, rsq - v * v):
            yield (v, *rest)


def enumerate_minus_one(s: SurfaceModel) -> list[NegCurve]:
    """All (-1)-classes on s, sorted by h then lexicographically by e."""
    classes = []
    for h in range(0, H_MAX + 1):
        for evec in _e_vectors(s.n, 1 - 3 * h, h * h + 1):
            classes.append(DivisorClass(h, evec))
    classes.sort(key=lambda c: (c.h, c.e))
    return [NegCurve(c, classify_family(c)) for c in classes]


def _check_minus_one(s: SurfaceModel, curve: NegCurve) -> None:
    if self_intersection(s, curve.cls) != -1:
        raise InvalidCurveError(f"{curve.label} has self-intersection != -1")
    if intersect(s, curve.cls, canonical_class(s)) != -1:
        raise InvalidCurveError(f"{curve.label} has K-degree != -1")
    if classify_family(curve.cls) is not curve.family:
        raise InvalidCurveError(f"{curve.label} is tagged {curve.family.value} but has a different shape")


@dataclass(frozen=True)
class CurveGraph:
    """Curves with their meet adjacency (edge iff the classes intersect positively)."""

    surface: SurfaceModel
    curves: tuple[NegCurve, ...]
    meet: tuple[tuple[bool, ...], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.curves)

    @property
    def n_edges(self) -> int:
        return sum(row.count(True) for row in self.meet) // 2

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.count(True) for row in self.meet)

    def is_regular(self, degree: int | None = None) -> bool:
        degs = set(self.degrees())
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree} or (not degs and degree == 0)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, hit in enumerate(self.meet[i]) if hit)

    def girth(self) -> int | None:
        """Length of a shortest cycle, or None if the graph is a forest."""
        best = None
        for source in range(self.n_vertices):
            dist = {source: 0}
            parent = {source: -1}
            queue = deque([source])
            while queue:
                u = queue.popleft()
                for w in self.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        cycle = dist[u] + dist[w] + 1
                        if best is None or cycle < best:
                            best = cycle
        return best

    def independent_sets(self, k: int) -> list[tuple[int, ...]]:
        """All k-element sets of pairwise non-adjacent vertices, as sorted index tuples.

        Plain backtracking over a fixed vertex order (degree-descending, then
        index) so the output is deterministic; candidate sets are bitmasks.
        """
        if k < 0:
            raise DomainError(f"independent-set size must be >= 0, got {k}")
        if k == 0:
            return [()]
        n = self.n_vertices
        if k > n:
            return []
        degs = self.degrees()
        order = sorted(range(n), key=lambda v: (-degs[v], v))
        position = {v: p for p, v in enumerate(order)}
        non_neighbors = []
        for v in order:
            mask = (1 << n) - 1
            for w in self.neighbors(v):
                mask &= ~(1 << position[w])
            non_neighbors.append(mask)

        found: list[tuple[int, ...]] = []

        def grow(candidates: int, chosen: tuple[int, ...], need: int) -> None:
            if need == 0:
                found.append(tuple(sorted(chosen)))
                return
            while candidates:
                if candidates.bit_count() < need:
                    return
                p = (candidates & -candidates).bit_length() - 1
                candidates &= candidates - 1  # later picks use higher positions only
                grow(candidates & non_neighbors[p], chosen + (order[p],), need - 1)

        grow((1 << n) - 1, (), k)
        found.sort()
        return found


def meet_graph(s: SurfaceModel, curves: list[NegCurve] | tuple[NegCurve, ...]) -> CurveGraph:
    """Graph on the given (-1)-curves with an edge wherever two classes meet.

    Every curve is re-checked against the (-1) equations, and all pairwise
    products are verified to be >= 0 (a negative product means a duplicated
    class or data that cannot come from distinct curves).
    """
    curves = tuple(curves)
    for curve in curves:
        _check_minus_one(s, curve)
    products = [[0] * len(curves) for _ in curves]
    for i, j in itertools.combinations(range(len(curves)), 2):
        p = intersect(s, curves[i].cls, curves[j].cls)
        if p < 0:
            raise InvalidCurveError(
                f"classes {curves[i].label} and {curves[j].label} meet negatively (duplicate input?)"
            )
        products[i][j] = products[j][i] = p
    meet = tuple(
        tuple(products[i][j] >= 1 and i != j for j in range(len(curves)))
        for i in range(len(curves))
    )
    return CurveGraph(s, curves, meet)


def disjoint_configurations(s: SurfaceModel, k: int) -> list[tuple[NegCurve, ...]]:
    """All k-element sets of pairwise disjoint (-1)-curves, canonically ordered.

    Configurations of size n are exactly the blow-downs to the plane.
    """
    if not 1 <= k <= s.n:
        raise DomainError(f"k must be in 1..{s.n}, got {k}")
    curves = enumerate_minus_one(s)
    graph = meet_graph(s, curves)
    configs = [
        tuple(sorted((curves[i] for i in subset), key=curve_sort_key))
        for subset in graph.independent_sets(k)
    ]
    configs.sort(key=lambda cfg: [curve_sort_key(c) for c in cfg])
    return configs


def composition_label(config: tuple[NegCurve, ...]) -> str:
    """Signature such as "2exceptional+3line" describing a configuration's families."""
    counts = Counter(curve.family for curve in config)
    return "+".join(
        f"{counts[f]}{f.value}"
        for f in (Family.EXCEPTIONAL, Family.LINE, Family.CONIC, Family.HIGHER)
        if counts[f]
    )


def configuration_census(s: SurfaceModel, k: int | None = None) -> dict[str, int]:
    """Configuration counts grouped by composition signature (sorted keys)."""
    counts = Counter(composition_label(cfg) for cfg in disjoint_configurations(s, s.n if k is None else k))
    return dict(sorted(counts.items()))


def quasiline_family_count(s: SurfaceModel) -> int:
    """Number of blow-down configurations, i.e. sets of n pairwise disjoint (-1)-curves.

    For the five-point surface this count (16) also bounds the number of
    quasi-line families through a general point pair on the associated
    threefold; for other n it is simply the blow-down census and carries no
    such guarantee.
    """
    if s.n == 0:
        return 1  # the empty configuration: the plane blown down to itself
    return len(disjoint_configurations(s, s.n))


def to_dot(graph: CurveGraph, name: str = "curves") -> str:
    """DOT rendering with class strings as vertex labels."""
    lines = [f"graph {name} {{"]
    for curve in graph.curves:
        lines.append(f'  "{curve.label}";')
    for i in range(graph.n_vertices):
        for j in range(i + 1, graph.n_vertices):
            if graph.meet[i][j]:
                lines.append(f'  "{graph.curves[i].label}" -- "{graph.curves[j].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
