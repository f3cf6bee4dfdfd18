"""Perverse simplices, perverse skeleta and the perverse triangulation of a complex."""
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

import networkx as nx

from .complex import Flag, Simplex, SimplicialComplex, SubdividedComplex, barycentric_subdivision
from .errors import LevelOutOfRangeError, ValidationError
from .perversity import Perversity


@dataclass(frozen=True)
class PerverseSimplex:
    anchor: Simplex
    flags: FrozenSet[Flag]
    level: int


def max_vertex(flag: Flag, delta: Perversity) -> Simplex:
    if flag.chain[-1].dim > delta.n:
        raise ValidationError(f"Perversity {delta} is too short for {flag!r}")
    return max(flag.chain, key=delta.level)


@dataclass(frozen=True)
class PerverseTriangulation:
    complex: SimplicialComplex
    perversity: Perversity

    def __post_init__(self):
        if self.perversity.n != self.complex.dimension:
            raise ValidationError(f"Perversity {self.perversity} does not match dimension {self.complex.dimension}")

    @property
    def subdivision(self) -> SubdividedComplex:
        return barycentric_subdivision(self.complex)

    @cached_property
    def anchors(self) -> Dict[Flag, Simplex]:
        return {g: max_vertex(g, self.perversity) for g in self.subdivision.flags}

    @cached_property
    def parts(self) -> Dict[Simplex, PerverseSimplex]:
        members: Dict[Simplex, Set[Flag]] = {s: set() for s in self.complex.simplices}
        for g, anchor in self.anchors.items():
            members[anchor].add(g)
        return {s: PerverseSimplex(s, frozenset(members[s]), self.perversity.level(s))
                for s in self.complex.simplices}

    def perverse_simplex(self, simplex: Simplex) -> PerverseSimplex:
        self.complex.check(simplex)
        return self.parts[simplex]

    def anchor(self, flag: Flag) -> Simplex:
        self.subdivision.check(flag)
        return self.anchors[flag]

    def skeleton(self, k: int, clamp: bool = False) -> FrozenSet[Flag]:
        if k not in self.perversity.levels:
            if clamp and k < self.perversity.min:
                return frozenset()
            if clamp and k > self.perversity.max:
                return frozenset(self.subdivision.flags)
            raise LevelOutOfRangeError(f"Level {k} outside {self.perversity.min}..{self.perversity.max}")
        return frozenset(g for part in self.parts.values() if part.level <= k for g in part.flags)

    @property
    def skeleta(self) -> Dict[int, FrozenSet[Flag]]:
        return {k: self.skeleton(k) for k in self.perversity.levels}

    def stratum(self, k: int) -> FrozenSet[Flag]:
        """The difference of the k-th and (k-1)-th skeleta."""
        return self.skeleton(k) - self.skeleton(k - 1, clamp=True)

    def census(self) -> dict:
        sub = self.subdivision
        return {
            "perversity": list(self.perversity.values),
            "flags": len(sub.flags),
            "anchors": {
                self.complex.key(s): {
                    "level": part.level,
                    "flags": len(part.flags),
                    "components": len(connected_components(part.flags)),
                    "members": [[list(x.labels) for x in g.chain] for g in sorted(part.flags)],
                }
                for s, part in self.parts.items()
            },
            "skeleta": {str(k): len(flags) for k, flags in self.skeleta.items()},
        }


def perverse_triangulation(complex_: SimplicialComplex, delta: Perversity) -> PerverseTriangulation:
    return PerverseTriangulation(complex_, delta)


def perverse_simplex(complex_: SimplicialComplex, simplex: Simplex, delta: Perversity) -> PerverseSimplex:
    return perverse_triangulation(complex_, delta).perverse_simplex(simplex)


def perverse_skeleton(complex_: SimplicialComplex, k: int, delta: Perversity, clamp: bool = False) -> FrozenSet[Flag]:
    return perverse_triangulation(complex_, delta).skeleton(k, clamp)


def connected_components(flags: Iterable[Flag]) -> List[FrozenSet[Flag]]:
    """Components of the graph joining two flags when one chain is a subchain of the other."""
    flags = set(flags)
    graph = nx.Graph()
    graph.add_nodes_from(flags)
    graph.add_edges_from((g, h) for g, h in combinations(flags, 2) if g.is_face_of(h) or h.is_face_of(g))
    return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)


def verify_partition(tri: PerverseTriangulation) -> Tuple[bool, dict]:
    """The perverse simplices are disjoint, cover every flag, and are the level components."""
    seen: Dict[Flag, Simplex] = {}
    for s, part in tri.parts.items():
        for g in part.flags:
            if g in seen:
                return False, {"overlap": repr(g), "anchors": [repr(seen[g]), repr(s)]}
            seen[g] = s
    missing = set(tri.subdivision.flags) - set(seen)
    if missing:
        return False, {"uncovered": sorted(repr(g) for g in missing)}
    for k in tri.perversity.levels:
        expected = {part.flags for part in tri.parts.values() if part.level == k}
        found = set(connected_components(tri.stratum(k)))
        if expected != found:
            return False, {"level": k, "expected": len(expected), "found": len(found)}
    return True, {}
