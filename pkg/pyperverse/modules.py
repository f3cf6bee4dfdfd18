"""Graded modules over a quadratic quiver algebra.

A graded module is a rational space per (node, degree) slice together with the action of
every arrow, which raises the degree by one. Free modules are sums of shifted
indecomposable projectives ``P_v<j>``; their basis elements are pairs
``(generator index, normal path)``.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .algebra import QuadraticQuiverAlgebra, Representation
from .errors import ValidationError
from .linalg import ONE, ZERO, Matrix
from .quiver import Arrow, Node, Path

Slice = Tuple[Node, int]


@dataclass(frozen=True, eq=False)
class GradedModule:
    algebra: QuadraticQuiverAlgebra
    dims: Dict[Slice, int]
    actions: Dict[Tuple[Arrow, int], Matrix] = field(default_factory=dict)

    @property
    def quiver(self):
        return self.algebra.quiver

    def dim(self, node: Node, degree: int) -> int:
        return self.dims.get((node, degree), 0)

    def action(self, arrow: Arrow, degree: int) -> Matrix:
        """The arrow ``(u, w)`` as a map from slice ``(u, degree)`` to ``(w, degree + 1)``."""
        m = self.actions.get((arrow, degree))
        if m is None:
            return linalg.zeros(self.dim(arrow[1], degree + 1), self.dim(arrow[0], degree))
        return m

    @property
    def slices(self) -> Tuple[Slice, ...]:
        return tuple(sorted((s for s, n in self.dims.items() if n), key=lambda s: (s[1], s[0])))

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({d for (_, d), n in self.dims.items() if n}))

    @property
    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def total_dimensions(self) -> Dict[str, int]:
        totals: Dict[Node, int] = {}
        for (v, _), n in self.dims.items():
            totals[v] = totals.get(v, 0) + n
        return {self.quiver.node_key(v): n for v, n in sorted(totals.items()) if n}

    def act(self, path: Path, degree: int, vector: Sequence) -> List:
        """Push ``vector`` in slice ``(path[0], degree)`` along ``path``."""
        vector = list(vector)
        for i, arrow in enumerate(zip(path, path[1:])):
            vector = linalg.apply(self.action(arrow, degree + i), vector)
        return vector

    def flatten(self) -> Representation:
        """Forget the grading."""
        q = self.quiver
        degrees = self.degrees
        stalks = {v: sum(self.dim(v, j) for j in degrees) for v in q.nodes}
        maps = {}
        for u, w in q.arrows:
            blocks = [[self.actions.get(((u, w), j)) if i == j + 1 else None for j in degrees] for i in degrees]
            maps[(u, w)] = linalg.block(blocks, [self.dim(w, i) for i in degrees], [self.dim(u, j) for j in degrees])
        return Representation.create(q, stalks, maps)


@dataclass(frozen=True, eq=False)
class FreeModule(GradedModule):
    generators: Tuple[Slice, ...] = ()
    basis: Dict[Slice, Tuple[Tuple[int, Path], ...]] = field(default_factory=dict)

    @cached_property
    def index(self) -> Dict[Slice, Dict[Tuple[int, Path], int]]:
        return {s: {b: i for i, b in enumerate(elements)} for s, elements in self.basis.items()}

    def multiplicities(self) -> Dict[int, Dict[Node, int]]:
        """Generators counted by degree and node."""
        out: Dict[int, Dict[Node, int]] = {}
        for v, j in self.generators:
            out.setdefault(j, {}).setdefault(v, 0)
            out[j][v] += 1
        return out


def free_module(alg: QuadraticQuiverAlgebra, generators: Sequence[Slice]) -> FreeModule:
    """The sum of ``P_v<j>`` over ``generators``; the basis of a slice is sorted by (generator, path)."""
    q = alg.quiver
    basis: Dict[Slice, List[Tuple[int, Path]]] = {}
    for k, (v, j) in enumerate(generators):
        q.check(v)
        for d in range(q.longest_path + 1):
            for p in alg.basis(d, source=v):
                basis.setdefault((p[-1], j + d), []).append((k, p))
    basis = {s: tuple(sorted(elements)) for s, elements in basis.items()}
    index = {s: {b: i for i, b in enumerate(elements)} for s, elements in basis.items()}

    actions = {}
    for (u, j), elements in basis.items():
        for w in q.successors[u]:
            target = index.get((w, j + 1), {})
            rows = [[ZERO] * len(elements) for _ in range(len(target))]
            for col, (k, p) in enumerate(elements):
                for path, c in alg.normal_form(p + (w,)).items():
                    rows[target[(k, path)]][col] = c
            if target:
                actions[((u, w), j)] = linalg.matrix(rows, len(target), len(elements))
    dims = {s: len(elements) for s, elements in basis.items()}
    return FreeModule(alg, dims, actions, tuple(generators), basis)


def projective(alg: QuadraticQuiverAlgebra, v: Node) -> FreeModule:
    """``P_v``: paths starting at ``v``, modulo the ideal."""
    return free_module(alg, [(v, 0)])


def simple_module(alg: QuadraticQuiverAlgebra, v: Node) -> GradedModule:
    alg.quiver.check(v)
    return GradedModule(alg, {(v, 0): 1})


def graded_dimensions_of(module: GradedModule) -> List[int]:
    degrees = module.degrees
    if not degrees:
        return []
    return [sum(module.dim(v, j) for v in module.quiver.nodes) for j in range(degrees[-1] + 1)]


def homomorphism(source: FreeModule, target: GradedModule, images: Sequence[Sequence]) -> Dict[Slice, Matrix]:
    """The map sending generator ``k`` of ``source`` to ``images[k]`` in ``target``, slice by slice."""
    out = {}
    for s in source.slices:
        v, degree = s
        columns = []
        for k, p in source.basis[s]:
            start = source.generators[k]
            columns.append(target.act(p, start[1], images[k]))
        out[s] = linalg.from_columns(columns, target.dim(v, degree)) if columns else linalg.zeros(target.dim(*s), 0)
    return out


def submodule_spans(module: GradedModule, seeds: Dict[Slice, Sequence[Sequence]]) -> Dict[Slice, Tuple[List, Tuple]]:
    """Echelon bases, per slice, of the submodule generated by ``seeds``."""
    q = module.quiver
    spans: Dict[Slice, Tuple[List, Tuple]] = {}
    for v, j in module.slices:
        vectors = [list(x) for x in seeds.get((v, j), [])]
        for u in q.predecessors[v]:
            lower, _ = spans.get((u, j - 1), ([], ()))
            vectors.extend(linalg.apply(module.action((u, v), j - 1), x) for x in lower)
        spans[(v, j)] = linalg.rref(vectors, module.dim(v, j))
    return spans


def quotient(module: GradedModule, spans: Dict[Slice, Tuple[List, Tuple]]) -> GradedModule:
    """``module`` modulo a submodule given by per-slice echelon bases.

    The quotient of a slice keeps the non-pivot coordinates; an action is the original
    action followed by reduction against the target slice.
    """
    kept: Dict[Slice, List[int]] = {}
    for s in module.slices:
        _, pivots = spans.get(s, ([], ()))
        kept[s] = [i for i in range(module.dim(*s)) if i not in pivots]

    actions = {}
    for (arrow, j), m in module.actions.items():
        src, dst = (arrow[0], j), (arrow[1], j + 1)
        if not kept.get(src) or not kept.get(dst):
            continue
        reduced, pivots = spans.get(dst, ([], ()))
        columns = []
        for i in kept[src]:
            unit = [ZERO] * module.dim(*src)
            unit[i] = ONE
            image = linalg.reduce(linalg.apply(m, unit), reduced, pivots)
            columns.append([image[t] for t in kept[dst]])
        actions[(arrow, j)] = linalg.from_columns(columns, len(kept[dst]))
    return GradedModule(module.algebra, {s: len(idx) for s, idx in kept.items() if idx}, actions)


def random_graded_module(alg: QuadraticQuiverAlgebra, seed: int, budget: int = 2,
                         multiplicities: Optional[Dict[Node, int]] = None,
                         relations: Optional[int] = None) -> GradedModule:
    """A quotient of a sum of projectives by randomly sampled homogeneous elements.

    ``numpy.random.default_rng(seed)`` drives every choice: the projective summands
    (unless ``multiplicities`` is given), the number of sampled elements (unless
    ``relations`` is given), their slices and their integer coefficients in -2..2.
    """
    if budget < 0:
        raise ValidationError("The module budget must be non-negative.")
    rng = np.random.default_rng(seed)
    nodes = alg.quiver.nodes
    if multiplicities is None:
        count = int(rng.integers(1, budget + 1)) if budget else 0
        generators = [(nodes[int(i)], 0) for i in rng.integers(0, len(nodes), size=count)]
    else:
        generators = [(v, 0) for v in nodes for _ in range(multiplicities.get(v, 0))]
    free = free_module(alg, sorted(generators, key=lambda g: nodes.index(g[0])))
    if relations is None:
        relations = int(rng.integers(0, budget + 1))

    slices = free.slices
    seeds: Dict[Slice, List[List[Any]]] = {}
    for _ in range(relations if slices else 0):
        s = slices[int(rng.integers(0, len(slices)))]
        coefficients = rng.integers(-2, 3, size=free.dim(*s))
        seeds.setdefault(s, []).append([linalg.qq(int(c)) for c in coefficients])
    return quotient(free, submodule_spans(free, seeds))
