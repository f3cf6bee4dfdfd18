"""Quiver algebras with homogeneous relations, their relation spaces and graded path bases.

A relation space is kept block by block, one block per endpoint pair, with its rows in
reduced row-echelon form over the block's sorted path list. Two relation spaces are the
same subspace exactly when their blocks agree, which is what ``canonical_form`` compares.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import linalg
from .complex import SimplicialComplex
from .errors import NotQuadraticError, ShapeMismatchError, UnknownNodeError, ValidationError
from .linalg import ONE, ZERO, Matrix
from .models import Verdict
from .perversity import Perversity
from .quiver import Arrow, Node, Path, Quiver, build_quiver


def _path_order(path: Path):
    return len(path), path


@dataclass(frozen=True)
class RelationBlock:
    source: Node
    target: Node
    paths: Tuple[Path, ...]
    rows: Tuple[Tuple[Any, ...], ...]

    @classmethod
    def create(cls, source: Node, target: Node, paths: Sequence[Path], rows: Sequence[Sequence]) -> "RelationBlock":
        for p in paths:
            if p[0] != source or p[-1] != target:
                raise ValidationError(f"Path {p!r} does not run from {source!r} to {target!r}")
        order = sorted(range(len(paths)), key=lambda i: _path_order(paths[i]))
        sorted_paths = tuple(paths[i] for i in order)
        reduced, _ = linalg.rref([[linalg.qq(row[i]) for i in order] for row in rows], len(paths))
        return cls(source, target, sorted_paths, tuple(tuple(row) for row in reduced))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_quadratic(self) -> bool:
        return all(len(p) == 3 for p in self.paths)

    @property
    def is_homogeneous(self) -> bool:
        return len({len(p) for p in self.paths}) <= 1

    @property
    def degree(self) -> int:
        return len(self.paths[0]) - 1 if self.paths else 0

    def reversed(self) -> "RelationBlock":
        return RelationBlock.create(self.target, self.source, [tuple(reversed(p)) for p in self.paths], self.rows)


@dataclass(frozen=True)
class RelationSpace:
    blocks: Tuple[RelationBlock, ...]

    def __post_init__(self):
        pairs = [(b.source, b.target) for b in self.blocks]
        if len(set(pairs)) != len(pairs):
            raise ValidationError("Two relation blocks share an endpoint pair.")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=lambda b: (b.source, b.target))))

    def block(self, source: Node, target: Node) -> Optional[RelationBlock]:
        for b in self.blocks:
            if b.source == source and b.target == target:
                return b
        return None

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    @property
    def is_quadratic(self) -> bool:
        return all(b.is_quadratic for b in self.blocks)

    @property
    def mixed_blocks(self) -> Tuple[RelationBlock, ...]:
        return tuple(b for b in self.blocks if not b.is_homogeneous)

    @property
    def is_homogeneous(self) -> bool:
        return not self.mixed_blocks

    def canonical(self) -> Tuple:
        return tuple((b.source, b.target, b.paths, b.rows) for b in self.blocks if b.rows)


@dataclass(frozen=True)
class PathSlice:
    """Paths of one degree between two nodes, reduced against the ideal."""
    paths: Tuple[Path, ...]
    reduced: Tuple[Tuple[Any, ...], ...]
    pivots: Tuple[int, ...]

    @cached_property
    def index(self) -> Dict[Path, int]:
        return {p: i for i, p in enumerate(self.paths)}

    @cached_property
    def basis(self) -> Tuple[Path, ...]:
        pivots = set(self.pivots)
        return tuple(p for i, p in enumerate(self.paths) if i not in pivots)

    def normal_form(self, vector: Sequence) -> Dict[Path, Any]:
        rest = linalg.reduce(vector, self.reduced, self.pivots)
        return {self.paths[i]: c for i, c in enumerate(rest) if c != ZERO}


@dataclass(frozen=True, eq=False)
class QuadraticQuiverAlgebra:
    quiver: Quiver
    relations: RelationSpace
    label: str = ""
    perversity: Optional[Perversity] = None
    _slices: Dict[Tuple[int, Node, Node], PathSlice] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        for b in self.relations.blocks:
            for p in b.paths:
                if any((u, w) not in self.quiver.arrow_set for u, w in zip(p, p[1:])):
                    raise ValidationError(f"Relation path {p!r} is not a path of the quiver.")

    def __eq__(self, other):
        if not isinstance(other, QuadraticQuiverAlgebra):
            return NotImplemented
        return canonical_form(self) == canonical_form(other)

    __hash__ = None

    @property
    def complex(self) -> Optional[SimplicialComplex]:
        return self.quiver.complex

    @property
    def is_quadratic(self) -> bool:
        return self.relations.is_quadratic

    @property
    def is_homogeneous(self) -> bool:
        return self.relations.is_homogeneous

    def _require_quadratic(self):
        if not self.is_quadratic:
            raise NotQuadraticError(f"Algebra {self.label or '?'} has relations outside degree 2.")

    def path_slice(self, d: int, source: Node, target: Node) -> PathSlice:
        """Graded pieces need homogeneous relations; each block may have its own degree."""
        if not self.is_homogeneous:
            raise NotQuadraticError(f"Algebra {self.label or '?'} has relations mixing path lengths.")
        key = (d, source, target)
        if key not in self._slices:
            self._slices[key] = self._reduce_slice(d, source, target)
        return self._slices[key]

    def _reduce_slice(self, d: int, source: Node, target: Node) -> PathSlice:
        q = self.quiver
        paths = q.paths_between(d, source, target)
        index = {p: i for i, p in enumerate(paths)}
        vectors = []
        for b in self.relations.blocks:
            for i in range(d - b.degree + 1):
                for prefix in q.paths_between(i, source, b.source):
                    for suffix in q.paths_between(d - i - b.degree, b.target, target):
                        for row in b.rows:
                            vector = [ZERO] * len(paths)
                            for path, c in zip(b.paths, row):
                                vector[index[prefix[:-1] + path + suffix[1:]]] += c
                            vectors.append(vector)
        reduced, pivots = linalg.rref(vectors, len(paths))
        return PathSlice(paths, tuple(tuple(r) for r in reduced), pivots)

    def basis(self, d: int, source: Node = None, target: Node = None) -> Tuple[Path, ...]:
        """Normal basis paths of degree ``d``, optionally fixing the endpoints."""
        pairs = self.quiver.endpoint_pairs(d)
        return tuple(p for s, e in pairs
                     if (source is None or s == source) and (target is None or e == target)
                     for p in self.path_slice(d, s, e).basis)

    def normal_form(self, path: Path) -> Dict[Path, Any]:
        """``path`` modulo the ideal, as coefficients on basis paths."""
        if len(path) > 1 and any((u, w) not in self.quiver.arrow_set for u, w in zip(path, path[1:])):
            return {}
        d = len(path) - 1
        if d > self.quiver.longest_path:
            return {}
        s = self.path_slice(d, path[0], path[-1])
        vector = [ZERO] * len(s.paths)
        vector[s.index[path]] = ONE
        return s.normal_form(vector)


def relations_A(q: Quiver) -> RelationSpace:
    return RelationSpace(tuple(RelationBlock.create(s, e, paths, [[ONE] * len(paths)])
                               for (s, e), paths in q.length2_blocks.items()))


def relations_B(q: Quiver) -> RelationSpace:
    blocks = []
    for (s, e), paths in q.length2_blocks.items():
        rows = []
        for i in range(1, len(paths)):
            row = [ZERO] * len(paths)
            row[0], row[i] = ONE, -ONE
            rows.append(row)
        blocks.append(RelationBlock.create(s, e, paths, rows))
    return RelationSpace(tuple(blocks))


def algebra_A(complex_: SimplicialComplex, delta: Perversity) -> QuadraticQuiverAlgebra:
    q = build_quiver(complex_, delta)
    return QuadraticQuiverAlgebra(q, relations_A(q), "A", delta)


def algebra_B(complex_: SimplicialComplex, delta: Perversity) -> QuadraticQuiverAlgebra:
    q = build_quiver(complex_, delta)
    return QuadraticQuiverAlgebra(q, relations_B(q), "B", delta)


def build_algebra(which: str, complex_: SimplicialComplex, delta: Perversity) -> QuadraticQuiverAlgebra:
    builders = {"A": algebra_A, "B": algebra_B}
    try:
        return builders[which.upper()](complex_, delta)
    except KeyError:
        raise ValidationError(f"Unknown algebra {which!r}, expected A or B") from None


def merge_blocks(left: RelationBlock, right: RelationBlock) -> RelationBlock:
    """Both blocks' rows over the union of their paths."""
    paths = list(left.paths) + [p for p in right.paths if p not in left.paths]

    def widen(block: RelationBlock) -> List[List]:
        return [[dict(zip(block.paths, row)).get(p, ZERO) for p in paths] for row in block.rows]

    return RelationBlock.create(left.source, left.target, paths, widen(left) + widen(right))


def with_relations(alg: QuadraticQuiverAlgebra, blocks: Sequence[RelationBlock],
                   label: Optional[str] = None) -> QuadraticQuiverAlgebra:
    """``alg`` modulo further relations; blocks on one endpoint pair are merged."""
    merged = {(b.source, b.target): b for b in alg.relations.blocks}
    for b in blocks:
        key = (b.source, b.target)
        merged[key] = merge_blocks(merged[key], b) if key in merged else b
    return QuadraticQuiverAlgebra(alg.quiver, RelationSpace(tuple(merged.values())), label or alg.label,
                                  alg.perversity)


def graded_dimensions(alg: QuadraticQuiverAlgebra, max_degree: Optional[int] = None) -> List[int]:
    """Dimensions by path length; by default up to one past the longest path, so the list ends in 0."""
    if max_degree is None:
        max_degree = alg.quiver.longest_path + 1
    if max_degree < 0:
        raise ValidationError("max_degree must be non-negative")
    return [len(alg.basis(d)) for d in range(max_degree + 1)]


def hilbert_matrix(alg: QuadraticQuiverAlgebra) -> Dict[Tuple[Node, Node], List[int]]:
    """Per endpoint pair, the dimensions of ``e_t A_d e_s`` for d = 0 .. longest path."""
    top = alg.quiver.longest_path
    out = {}
    for d in range(top + 1):
        for s, e in alg.quiver.endpoint_pairs(d):
            n = len(alg.path_slice(d, s, e).basis)
            if n:
                out.setdefault((s, e), [0] * (top + 1))[d] = n
    return dict(sorted(out.items()))


def quadratic_dual(alg: QuadraticQuiverAlgebra) -> QuadraticQuiverAlgebra:
    """Annihilator relations on the opposite quiver, pairing each path with its reversal."""
    alg._require_quadratic()
    blocks = []
    for (s, e), paths in alg.quiver.length2_blocks.items():
        found = alg.relations.block(s, e)
        rows = []
        if found is not None:
            coefficients = [dict(zip(found.paths, row)) for row in found.rows]
            rows = [[c.get(p, ZERO) for p in paths] for c in coefficients]
        orthogonal = linalg.annihilator(rows, len(paths))
        blocks.append(RelationBlock.create(e, s, [tuple(reversed(p)) for p in paths], orthogonal))
    label = alg.label[:-1] if alg.label.endswith("!") else f"{alg.label}!"
    perversity = -alg.perversity if alg.perversity is not None else None
    return QuadraticQuiverAlgebra(alg.quiver.opposite(), RelationSpace(tuple(blocks)), label, perversity)


def opposite(alg: QuadraticQuiverAlgebra) -> QuadraticQuiverAlgebra:
    label = alg.label[:-3] if alg.label.endswith("^op") else f"{alg.label}^op"
    perversity = -alg.perversity if alg.perversity is not None else None
    return QuadraticQuiverAlgebra(alg.quiver.opposite(),
                                  RelationSpace(tuple(b.reversed() for b in alg.relations.blocks)),
                                  label, perversity)


def canonical_form(alg: QuadraticQuiverAlgebra) -> Tuple:
    return alg.quiver.nodes, tuple(sorted(alg.quiver.arrows)), alg.relations.canonical()


@dataclass(frozen=True)
class Representation:
    """A finite-dimensional representation: a dimension per node and a matrix per arrow.

    The matrix of an arrow ``(u, w)`` maps the stalk at ``u`` to the stalk at ``w``;
    arrows without a matrix carry the zero map.
    """
    quiver: Quiver
    stalks: Dict[Node, int]
    maps: Dict[Arrow, Matrix]

    @classmethod
    def create(cls, quiver: Quiver, stalks: Dict[Node, int], maps: Dict[Arrow, Matrix]) -> "Representation":
        return cls(quiver, *normalize(quiver, stalks, maps))

    def stalk(self, node: Node) -> int:
        return self.stalks[node]

    def map(self, arrow: Arrow) -> Matrix:
        return self.maps[arrow]

    def path_matrix(self, path: Path) -> Matrix:
        if len(path) == 1:
            return linalg.identity(self.stalks[path[0]])
        return linalg.compose(*(self.maps[(u, w)] for u, w in reversed(list(zip(path, path[1:])))))

    @property
    def is_zero(self) -> bool:
        return not any(self.stalks.values())

    def same_as(self, other: "Representation") -> bool:
        if self.quiver != other.quiver or self.stalks != other.stalks:
            return False
        return all(linalg.equal(self.maps[a], other.maps[a]) for a in self.quiver.arrows)


def normalize(quiver: Quiver, stalks: Dict[Node, int], maps: Dict[Arrow, Matrix]):
    """Fill in zero stalks and zero maps; reject unknown keys and wrong shapes."""
    for node in stalks:
        quiver.check(node)
    full_stalks = {v: int(stalks.get(v, 0)) for v in quiver.nodes}
    for arrow in maps:
        if arrow not in quiver.arrow_set:
            raise UnknownNodeError(f"{arrow!r} is not an arrow of the quiver.")
    full_maps = {}
    for u, w in quiver.arrows:
        m = maps.get((u, w))
        shape = (full_stalks[w], full_stalks[u])
        if m is None:
            m = linalg.zeros(*shape)
        elif m.shape != shape:
            raise ShapeMismatchError(f"Map {quiver.arrow_key((u, w))} has shape {m.shape}, expected {shape}")
        full_maps[(u, w)] = m
    return full_stalks, full_maps


def check_module(alg: QuadraticQuiverAlgebra, rep: Representation) -> Verdict:
    """Evaluate every relation row on ``rep``; the first nonzero residual is the witness."""
    if rep.quiver != alg.quiver:
        raise ShapeMismatchError("The representation lives on a different quiver.")
    for b in alg.relations.blocks:
        if not rep.stalks[b.target] or not rep.stalks[b.source]:
            continue
        for i, row in enumerate(b.rows):
            residual = linalg.zeros(rep.stalks[b.target], rep.stalks[b.source])
            for path, c in zip(b.paths, row):
                if c != ZERO:
                    residual = linalg.add(residual, rep.path_matrix(path) * c)
            if not linalg.is_zero(residual):
                q = alg.quiver
                return Verdict(False, {
                    "block": [q.node_key(b.source), q.node_key(b.target)],
                    "row": i,
                    "coefficients": {"->".join(q.node_key(v) for v in p): linalg.fraction_str(c)
                                     for p, c in zip(b.paths, row)},
                    "residual": linalg.to_strings(residual),
                })
    return Verdict(True, None)


def random_module(alg: QuadraticQuiverAlgebra, seed: int, budget: int = 2,
                  multiplicities: Dict[Node, int] = None, relations: int = None) -> Representation:
    """A seeded quotient of a sum of indecomposable projectives, as a representation."""
    from .modules import random_graded_module
    module = random_graded_module(alg, seed, budget, multiplicities, relations)
    logging.debug(f"Sampled module with dimension vector {module.total_dimensions()} from seed {seed}")
    return module.flatten()


def non_quadratic_example() -> QuadraticQuiverAlgebra:
    """Three nodes, arrows 1->2->3 and 1->3, with the mixed-degree relation (1->3) = (1->2->3)."""
    q = Quiver(("1", "2", "3"), (("1", "2"), ("1", "3"), ("2", "3")))
    block = RelationBlock.create("1", "3", [("1", "3"), ("1", "2", "3")], [[ONE, -ONE]])
    return QuadraticQuiverAlgebra(q, RelationSpace((block,)), "mutant")
