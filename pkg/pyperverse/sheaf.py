"""Cellular data over a complex, S-objects over its subdivision, and the functors between them.

An R-object over ``(X, delta)`` is a representation of ``Q(X, delta)`` satisfying the
equivalence axiom: every two length-2 paths with common endpoints give the same
composite. An S-object is an R-object over the subdivision with the bottom perversity
that is constant on every perverse simplex of the ``(-delta)`` triangulation.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Tuple

import numpy as np

from . import linalg
from .algebra import Representation, algebra_B, check_module, normalize, random_module
from .complex import Flag, Simplex, SimplicialComplex, SubdividedComplex, barycentric_subdivision, closed_union, \
    incident
from .errors import (BaseMismatchError, ChainDisagreementError, MembershipError, NotClosedError, NotComparableError,
                     ShapeMismatchError)
from .linalg import Matrix
from .models import Verdict
from .modules import projective
from .perversity import Perversity, bottom
from .quiver import Arrow, Node, build_quiver
from .triangulation import PerverseTriangulation

# Which perversity each construction is built from, given the ambient delta.
SIGN_LEDGER = (
    {"object": "quiver Q(X, delta)", "uses": "delta"},
    {"object": "algebra A(X, delta)", "uses": "delta"},
    {"object": "algebra B(X, delta) and R(X, delta)", "uses": "delta"},
    {"object": "poset order and composite maps f", "uses": "delta"},
    {"object": "perverse simplices anchoring S(X, delta)", "uses": "-delta"},
    {"object": "quadratic dual of A(X, delta)", "uses": "-delta, compared with B(X, -delta)"},
    {"object": "opposite of B(X, -delta)", "uses": "-delta, compared with B(X, delta)"},
    {"object": "subdivision carrying S-objects", "uses": "bottom perversity of the subdivision"},
)


@dataclass(frozen=True)
class CellularData(Representation):
    complex: SimplicialComplex
    perversity: Perversity

    @classmethod
    def build(cls, complex_: SimplicialComplex, delta: Perversity, stalks: Dict[Simplex, int],
              maps: Dict[Arrow, Matrix]) -> "CellularData":
        q = build_quiver(complex_, delta)
        full_stalks, full_maps = normalize(q, stalks, maps)
        return cls(q, full_stalks, full_maps, complex_, delta)

    def same_as(self, other: Representation) -> bool:
        return isinstance(other, CellularData) and self.complex == other.complex \
            and self.perversity == other.perversity and super().same_as(other)


@dataclass(frozen=True)
class SObject:
    data: CellularData
    base: SimplicialComplex
    perversity: Perversity

    def __post_init__(self):
        sub = self.subdivision
        if self.data.complex != sub.complex or self.data.perversity != bottom(self.base.dimension):
            raise BaseMismatchError("An S-object lives on the subdivision with the bottom perversity.")

    @property
    def subdivision(self) -> SubdividedComplex:
        return barycentric_subdivision(self.base)

    @cached_property
    def triangulation(self) -> PerverseTriangulation:
        return PerverseTriangulation(self.base, -self.perversity)

    def stalk(self, flag: Flag) -> int:
        return self.data.stalks[self.subdivision.simplex_of(flag)]

    def map(self, lower: Flag, upper: Flag) -> Matrix:
        sub = self.subdivision
        return self.data.maps[(sub.simplex_of(lower), sub.simplex_of(upper))]

    def same_as(self, other: "SObject") -> bool:
        return self.base == other.base and self.perversity == other.perversity and self.data.same_as(other.data)


def sobject(base: SimplicialComplex, delta: Perversity, stalks: Dict[Flag, int],
            maps: Dict[Tuple[Flag, Flag], Matrix]) -> SObject:
    """An S-object from flag-keyed stalks and maps; nothing beyond shapes is checked here."""
    sub = barycentric_subdivision(base)
    data = CellularData.build(sub.complex, bottom(base.dimension),
                              {sub.simplex_of(g): n for g, n in stalks.items()},
                              {(sub.simplex_of(g), sub.simplex_of(h)): m for (g, h), m in maps.items()})
    return SObject(data, base, delta)


@dataclass(frozen=True)
class DataMorphism:
    components: Dict[Node, Matrix]

    def same_as(self, other: "DataMorphism") -> bool:
        return self.components.keys() == other.components.keys() and all(
            linalg.equal(m, other.components[k]) for k, m in self.components.items())


@dataclass(frozen=True)
class HomSpace:
    dimension: int
    basis: Tuple[DataMorphism, ...]


def constant_object(complex_: SimplicialComplex, delta: Perversity, dim: int = 1) -> CellularData:
    q = build_quiver(complex_, delta)
    return CellularData.build(complex_, delta, {s: dim for s in complex_.simplices},
                              {a: linalg.identity(dim) for a in q.arrows})


def zero_object(complex_: SimplicialComplex, delta: Perversity) -> CellularData:
    return CellularData.build(complex_, delta, {}, {})


def constant_sobject(complex_: SimplicialComplex, delta: Perversity, dim: int = 1) -> SObject:
    sub = barycentric_subdivision(complex_)
    return SObject(constant_object(sub.complex, bottom(complex_.dimension), dim), complex_, delta)


def validate_tea(obj: Representation) -> Verdict:
    """Check every diamond; the witness is the first failing one in canonical order."""
    q = obj.quiver
    for (s, e), paths in q.length2_blocks.items():
        if len(paths) < 2:
            continue
        first = obj.path_matrix(paths[0])
        for other in paths[1:]:
            residual = linalg.sub(first, obj.path_matrix(other))
            if not linalg.is_zero(residual):
                return Verdict(False, {
                    "source": q.node_key(s),
                    "mid1": q.node_key(paths[0][1]),
                    "mid2": q.node_key(other[1]),
                    "target": q.node_key(e),
                    "residual": linalg.to_strings(residual),
                })
    return Verdict(True, None)


def poset_leq(complex_: SimplicialComplex, a: Simplex, b: Simplex, delta: Perversity) -> bool:
    return build_quiver(complex_, delta).leq(a, b)


def incidence_order_check(complex_: SimplicialComplex, delta: Perversity) -> Verdict:
    """Incident simplices with decreasing delta are comparable."""
    q = build_quiver(complex_, delta)
    for a in complex_.simplices:
        for b in complex_.simplices:
            if delta.level(a) > delta.level(b) and incident(complex_, a, b) and not q.leq(a, b):
                return Verdict(False, {"lower": q.node_key(a), "upper": q.node_key(b)})
    return Verdict(True, None)


def composite_map(obj: Representation, source: Node, target: Node) -> Matrix:
    """The product of the maps along a chain from ``source`` to ``target``; every chain is tried."""
    q = obj.quiver
    if not q.leq(source, target):
        raise NotComparableError(f"{q.node_key(source)} is not below {q.node_key(target)}")
    chains = q.chains(source, target)
    value = obj.path_matrix(chains[0])
    for chain in chains[1:]:
        if not linalg.equal(obj.path_matrix(chain), value):
            raise ChainDisagreementError(
                f"Chains {'->'.join(q.node_key(v) for v in chains[0])} and "
                f"{'->'.join(q.node_key(v) for v in chain)} disagree")
    return value


def anchor_order_check(complex_: SimplicialComplex, delta: Perversity) -> Verdict:
    """Anchors of a flag and of a codimension-one face are equal or incident and ordered."""
    tri = PerverseTriangulation(complex_, -delta)
    q = build_quiver(complex_, delta)
    for h in tri.subdivision.flags:
        for g in h.codim_one_faces():
            lower, upper = tri.anchors[g], tri.anchors[h]
            if lower == upper:
                continue
            if not (incident(complex_, lower, upper) and q.leq(lower, upper)):
                sub = tri.subdivision
                return Verdict(False, {"face": sub.flag_key(g), "flag": sub.flag_key(h),
                                       "anchors": [q.node_key(lower), q.node_key(upper)]})
    return Verdict(True, None)


def phi(obj: CellularData) -> SObject:
    tea = validate_tea(obj)
    if not tea:
        raise MembershipError(f"The object violates the equivalence axiom: {tea.witness}")
    complex_, delta = obj.complex, obj.perversity
    sub = barycentric_subdivision(complex_)
    tri = PerverseTriangulation(complex_, -delta)
    flags = {sub.simplex_of(g): g for g in sub.flags}
    q = build_quiver(sub.complex, bottom(complex_.dimension))

    composites: Dict[Tuple[Simplex, Simplex], Matrix] = {}
    maps = {}
    for u, w in q.arrows:
        pair = (tri.anchors[flags[u]], tri.anchors[flags[w]])
        if pair not in composites:
            composites[pair] = composite_map(obj, *pair)
        maps[(u, w)] = composites[pair]
    stalks = {s: obj.stalks[tri.anchors[g]] for s, g in flags.items()}
    data = CellularData(q, stalks, maps, sub.complex, bottom(complex_.dimension))
    logging.debug(f"Moved an object with {sum(obj.stalks.values())} total stalk dimension to the subdivision")
    return SObject(data, complex_, delta)


def validate_sobject(obj: SObject) -> Verdict:
    """Constancy on perverse simplices, identities inside them, and the equivalence axiom."""
    sub, tri, data = obj.subdivision, obj.triangulation, obj.data
    for anchor, part in tri.parts.items():
        dims = {sub.flag_key(g): data.stalks[sub.simplex_of(g)] for g in sorted(part.flags)}
        if len(set(dims.values())) > 1:
            return Verdict(False, {"reason": "constancy", "anchor": obj.base.key(anchor), "stalks": dims})
    flags = {sub.simplex_of(g): g for g in sub.flags}
    for u, w in data.quiver.arrows:
        if tri.anchors[flags[u]] == tri.anchors[flags[w]]:
            m = data.maps[(u, w)]
            if not linalg.equal(m, linalg.identity(data.stalks[u])):
                return Verdict(False, {"reason": "identity", "arrow": data.quiver.arrow_key((u, w)),
                                       "map": linalg.to_strings(m)})
    tea = validate_tea(data)
    if not tea:
        return Verdict(False, {"reason": "equivalence axiom", **tea.witness})
    return Verdict(True, None)


def psi(obj: SObject) -> CellularData:
    membership = validate_sobject(obj)
    if not membership:
        raise MembershipError(f"Not an S-object: {membership.witness}")
    complex_, delta, sub = obj.base, obj.perversity, obj.subdivision
    q = build_quiver(complex_, delta)
    point = {s: sub.simplex_of(Flag((s,))) for s in complex_.simplices}
    stalks = {s: obj.data.stalks[point[s]] for s in complex_.simplices}
    maps = {(a, b): obj.data.maps[(point[a], sub.simplex_of(Flag(tuple(sorted((a, b))))))] for a, b in q.arrows}
    return CellularData(q, stalks, maps, complex_, delta)


def restrict(obj: CellularData, simplices: Iterable[Simplex]) -> CellularData:
    """Stalks and maps over a closed set of simplices; the result may be disconnected."""
    sub_complex = obj.complex.subcomplex(simplices)
    q = build_quiver(sub_complex, obj.perversity)
    return CellularData(q, {s: obj.stalks[s] for s in sub_complex.simplices},
                        {a: obj.maps[a] for a in q.arrows}, sub_complex, obj.perversity)


def restrict_flags(obj: SObject, flags: Iterable[Flag]) -> CellularData:
    sub = obj.subdivision
    closure, closed = closed_union(flags, sub)
    if not closed:
        raise NotClosedError(f"The flag set is not closed; its closure adds {len(closure) - len(set(flags))} flags")
    return restrict(obj.data, (sub.simplex_of(g) for g in closure))


def _check_same_base(src: Representation, dst: Representation):
    if src.quiver != dst.quiver:
        raise BaseMismatchError("The objects live over different complexes or perversities.")


def is_morphism(src: Representation, dst: Representation, morphism: DataMorphism) -> Verdict:
    _check_same_base(src, dst)
    q = src.quiver
    for v in q.nodes:
        m = morphism.components.get(v)
        shape = (dst.stalks[v], src.stalks[v])
        if m is None or m.shape != shape:
            raise ShapeMismatchError(f"Component at {q.node_key(v)} must be {shape[0]}x{shape[1]}")
    for u, w in q.arrows:
        residual = linalg.sub(linalg.compose(morphism.components[w], src.maps[(u, w)]),
                              linalg.compose(dst.maps[(u, w)], morphism.components[u]))
        if not linalg.is_zero(residual):
            return Verdict(False, {"arrow": q.arrow_key((u, w)), "residual": linalg.to_strings(residual)})
    return Verdict(True, None)


def hom_space(src: Representation, dst: Representation) -> HomSpace:
    """Solve the commutation equations; unknowns are the entries of every component."""
    _check_same_base(src, dst)
    q = src.quiver
    offsets, total = {}, 0
    for v in q.nodes:
        offsets[v] = total
        total += dst.stalks[v] * src.stalks[v]

    def var(v, i, j):
        return offsets[v] + i * src.stalks[v] + j

    equations: List[List] = []
    for u, w in q.arrows:
        s, t = linalg.rows(src.maps[(u, w)]), linalg.rows(dst.maps[(u, w)])
        for i in range(dst.stalks[w]):
            for j in range(src.stalks[u]):
                row = [linalg.ZERO] * total
                for k in range(src.stalks[w]):
                    row[var(w, i, k)] += s[k][j]
                for k in range(dst.stalks[u]):
                    row[var(u, k, j)] -= t[i][k]
                equations.append(row)

    solutions = linalg.nullspace(linalg.matrix(equations, len(equations), total)) if total else []
    basis = []
    for x in solutions:
        components = {}
        for v in q.nodes:
            n, m = dst.stalks[v], src.stalks[v]
            components[v] = linalg.matrix([x[var(v, i, 0):var(v, i, 0) + m] for i in range(n)], n, m)
        basis.append(DataMorphism(components))
    return HomSpace(len(basis), tuple(basis))


def identity_morphism(obj: Representation) -> DataMorphism:
    return DataMorphism({v: linalg.identity(n) for v, n in obj.stalks.items()})


def phi_morphism(morphism: DataMorphism, complex_: SimplicialComplex, delta: Perversity) -> DataMorphism:
    """The component at a flag is the component at its anchor."""
    sub = barycentric_subdivision(complex_)
    tri = PerverseTriangulation(complex_, -delta)
    return DataMorphism({sub.simplex_of(g): morphism.components[tri.anchors[g]] for g in sub.flags})


def psi_morphism(morphism: DataMorphism, complex_: SimplicialComplex) -> DataMorphism:
    """The component at a simplex is the component at its one-element flag."""
    sub = barycentric_subdivision(complex_)
    return DataMorphism({s: morphism.components[sub.simplex_of(Flag((s,)))] for s in complex_.simplices})


def as_cellular(rep: Representation, complex_: SimplicialComplex, delta: Perversity) -> CellularData:
    if rep.quiver != build_quiver(complex_, delta):
        raise BaseMismatchError("The representation is not over this complex and perversity.")
    return CellularData(rep.quiver, rep.stalks, rep.maps, complex_, delta)


def random_object(complex_: SimplicialComplex, delta: Perversity, seed: int, budget: int = 2) -> CellularData:
    """A seeded R-object: a random module over ``B(X, delta)``."""
    return as_cellular(random_module(algebra_B(complex_, delta), seed, budget), complex_, delta)


def mutate(obj: CellularData, seed: int) -> CellularData:
    """Add a random nonzero integer to one entry of one nonempty map."""
    rng = np.random.default_rng(seed)
    candidates = [a for a in obj.quiver.arrows if obj.stalks[a[0]] and obj.stalks[a[1]]]
    if not candidates:
        return obj
    u, w = candidates[int(rng.integers(0, len(candidates)))]
    entries = linalg.rows(obj.maps[(u, w)])
    i, j = int(rng.integers(0, len(entries))), int(rng.integers(0, len(entries[0])))
    entries[i][j] += linalg.qq(int(rng.choice([-2, -1, 1, 2])))
    maps = dict(obj.maps)
    maps[(u, w)] = linalg.matrix(entries, len(entries), len(entries[0]))
    return CellularData(obj.quiver, obj.stalks, maps, obj.complex, obj.perversity)


def tea_agreement(complex_: SimplicialComplex, delta: Perversity, samples: int, seed: int,
                  budget: int = 2) -> Verdict:
    """The equivalence axiom and the relations of B accept the same seeded assignments.

    Even samples are random modules, odd samples are mutations of them.
    """
    alg = algebra_B(complex_, delta)
    seeds = np.random.default_rng(seed).integers(0, 2 ** 31, size=samples)
    accepted = 0
    for n, sample_seed in enumerate(seeds):
        obj = random_object(complex_, delta, int(sample_seed), budget)
        if n % 2:
            obj = mutate(obj, int(sample_seed))
        tea, relations = validate_tea(obj), check_module(alg, obj)
        if tea.ok != relations.ok:
            return Verdict(False, {"sample": n, "seed": int(sample_seed), "tea": tea.ok, "relations": relations.ok})
        accepted += tea.ok
    logging.info(f"Equivalence axiom and B-relations agreed on {samples} samples, {accepted} accepted")
    return Verdict(True, None)


def projective_support(alg, v: Node) -> Tuple[Node, ...]:
    """Nodes where the indecomposable projective ``P_v`` is nonzero."""
    return tuple(sorted({w for w, _ in projective(alg, v).slices}))


def projective_object(alg, complex_: SimplicialComplex, delta: Perversity, v: Node) -> CellularData:
    return as_cellular(projective(alg, v).flatten(), complex_, delta)
