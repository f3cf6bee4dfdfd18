"""Minimal graded projective resolutions, Koszulity and Ext dimensions."""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

from . import linalg
from .algebra import QuadraticQuiverAlgebra, hilbert_matrix
from .errors import CalibrationError, ResolutionError
from .linalg import ONE, Matrix
from .models import Verdict
from .modules import FreeModule, GradedModule, Slice, free_module, homomorphism, simple_module
from .quiver import Node


@dataclass(frozen=True, eq=False)
class ResolutionStep:
    free: FreeModule
    # per slice of ``free``, its map to the previous term (the simple module for step 0)
    differential: Dict[Slice, Matrix]
    # generator images, as vectors in the previous term
    images: Tuple[Tuple, ...]


@dataclass(frozen=True, eq=False)
class GradedResolution:
    algebra: QuadraticQuiverAlgebra
    simple: Node
    target: GradedModule
    steps: Tuple[ResolutionStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @cached_property
    def betti(self) -> Dict[int, Dict[int, Dict[Node, int]]]:
        """``betti[i][j][v]``: copies of ``P_v<j>`` in the i-th term."""
        return {i: step.free.multiplicities() for i, step in enumerate(self.steps)}

    @property
    def is_linear(self) -> bool:
        return all(j == i for i, table in self.betti.items() for j in table)

    def to_json(self) -> dict:
        q = self.algebra.quiver
        return {
            "simple": q.node_key(self.simple),
            "length": self.length,
            "linear": self.is_linear,
            "betti": {str(i): {str(j): {q.node_key(v): n for v, n in sorted(row.items())}
                               for j, row in sorted(table.items())}
                      for i, table in self.betti.items()},
        }


def minimal_resolution(alg: QuadraticQuiverAlgebra, w: Node, max_steps: int = 16) -> GradedResolution:
    """Iterated projective covers of ``S_w``.

    At each step the kernel of the last differential is computed slice by slice and its
    generators are picked modulo the arrows applied to the kernel one degree lower.
    """
    alg.quiver.check(w)
    target = simple_module(alg, w)
    previous: GradedModule = target
    generators: List[Slice] = [(w, 0)]
    images: List[List] = [[ONE]]
    steps: List[ResolutionStep] = []
    q = alg.quiver

    for i in range(max_steps + 1):
        free = free_module(alg, generators)
        differential = homomorphism(free, previous, images)
        steps.append(ResolutionStep(free, differential, tuple(tuple(x) for x in images)))

        kernel = {s: linalg.nullspace(differential[s]) for s in free.slices}
        generators, images = [], []
        for v, j in free.slices:
            found = kernel[(v, j)]
            if not found:
                continue
            radical = [linalg.apply(free.action((u, v), j - 1), x)
                       for u in q.predecessors[v] for x in kernel.get((u, j - 1), [])]
            for x in linalg.extend_basis(radical, found, free.dim(v, j)):
                generators.append((v, j))
                images.append(x)
        if not generators:
            logging.debug(f"Resolution of S_{q.node_key(w)} over {alg.label} has length {i}")
            return GradedResolution(alg, w, target, tuple(steps))
        previous = free
    raise ResolutionError(f"Resolution of S_{q.node_key(w)} over {alg.label} did not stop within {max_steps} steps")


def verify_resolution(res: GradedResolution) -> Verdict:
    """Exactness by ranks, vanishing composites, minimality and the Euler characteristic."""
    q = res.algebra.quiver
    terms: List[GradedModule] = [res.target] + [step.free for step in res.steps]

    for i, step in enumerate(res.steps):
        below = terms[i]
        # d_i maps terms[i + 1] onto terms[i]; the next differential maps into its kernel
        following = res.steps[i + 1].differential if i + 1 < len(res.steps) else {}
        for s in step.free.slices:
            image_rank = linalg.rank(step.differential[s])
            incoming = linalg.rank(following[s]) if s in following else 0
            if image_rank + incoming != step.free.dim(*s):
                return Verdict(False, {"step": i, "slice": [q.node_key(s[0]), s[1]], "reason": "not exact",
                                       "ranks": [image_rank, incoming], "dimension": step.free.dim(*s)})
            if s in following and not linalg.is_zero(linalg.compose(step.differential[s], following[s])):
                return Verdict(False, {"step": i, "slice": [q.node_key(s[0]), s[1]], "reason": "d.d != 0"})
        if i == 0:
            if linalg.rank(step.differential[(res.simple, 0)]) != 1:
                return Verdict(False, {"step": 0, "reason": "not onto the simple module"})
            continue
        # generator images must avoid the degree-0 part of the previous free module
        prev = below
        for k, (v, j) in enumerate(step.free.generators):
            for (_, path), c in zip(prev.basis[(v, j)], step.images[k]):
                if len(path) == 1 and c != 0:
                    return Verdict(False, {"step": i, "generator": k, "reason": "not minimal"})

    euler: Dict[Slice, int] = {}
    for i, step in enumerate(res.steps):
        for s, n in step.free.dims.items():
            euler[s] = euler.get(s, 0) + (-1) ** i * n
    euler = {s: n for s, n in euler.items() if n}
    if euler != {(res.simple, 0): 1}:
        return Verdict(False, {"reason": "Euler characteristic",
                               "found": {f"{q.node_key(v)}@{j}": n for (v, j), n in sorted(euler.items(),
                                                                                          key=lambda t: (t[0][1], t[0][0]))}})
    return Verdict(True, None)


def resolve_all(alg: QuadraticQuiverAlgebra, max_steps: int = 16) -> Dict[Node, GradedResolution]:
    return {w: minimal_resolution(alg, w, max_steps) for w in alg.quiver.nodes}


def koszulity_check(alg: QuadraticQuiverAlgebra, max_steps: int = 16) -> Tuple[Verdict, Dict[str, dict]]:
    """Whether every simple has a linear minimal resolution, with the Betti tables.

    Relations mixing path lengths fail at once with the offending block. Homogeneous
    relations of higher degree are resolved, and show up as a generator off the diagonal.
    """
    q = alg.quiver
    if not alg.is_homogeneous:
        b = alg.relations.mixed_blocks[0]
        return Verdict(False, {"reason": "relations mix path lengths",
                               "block": [q.node_key(b.source), q.node_key(b.target)],
                               "path_lengths": sorted({len(p) - 1 for p in b.paths})}), {}
    tables = {}
    witness = None
    for w, res in resolve_all(alg, max_steps).items():
        tables[q.node_key(w)] = res.to_json()
        checked = verify_resolution(res)
        if not checked:
            raise ResolutionError(f"Resolution of S_{q.node_key(w)} failed its checks: {checked.witness}")
        if witness is None and not res.is_linear:
            step, degree = min((i, j) for i, table in res.betti.items() for j in table if j != i)
            witness = {"simple": q.node_key(w), "step": step, "degree": degree,
                       "generators": {q.node_key(v): n for v, n in sorted(res.betti[step][degree].items())}}
    return Verdict(witness is None, witness), tables


def global_dimension(resolutions: Dict[Node, GradedResolution]) -> int:
    return max((res.length for res in resolutions.values()), default=0)


def ext_dimensions(resolutions: Dict[Node, GradedResolution]) -> Dict[Tuple[Node, Node], Dict[int, int]]:
    """``dim Ext^i(S_w, S_v)``: copies of ``P_v`` in the i-th term of the resolution of ``S_w``."""
    out: Dict[Tuple[Node, Node], Dict[int, int]] = {}
    for w, res in resolutions.items():
        for i, table in res.betti.items():
            for row in table.values():
                for v, n in row.items():
                    out.setdefault((w, v), {})
                    out[(w, v)][i] = out[(w, v)].get(i, 0) + n
    return out


def path_dimensions(alg: QuadraticQuiverAlgebra, reverse: bool = False) -> Dict[Tuple[Node, Node], Dict[int, int]]:
    """``dim e_v B_i e_w`` keyed by ``(w, v)``, or by ``(v, w)`` when ``reverse``."""
    out: Dict[Tuple[Node, Node], Dict[int, int]] = {}
    for (s, e), dims in hilbert_matrix(alg).items():
        out[(e, s) if reverse else (s, e)] = {d: n for d, n in enumerate(dims) if n}
    return out


def ext_vs_dual(alg: QuadraticQuiverAlgebra, expected: QuadraticQuiverAlgebra,
                max_steps: int = 16) -> Tuple[Verdict, dict]:
    """Compare Ext between simples of ``alg`` with graded pieces of ``expected``.

    Degree one decides whether an Ext class from ``S_w`` to ``S_v`` counts paths
    ``w -> v`` or ``v -> w`` of ``expected``; no orientation matching degree one is fatal.
    """
    if alg.quiver.nodes != expected.quiver.nodes:
        raise CalibrationError("The two algebras live on different node sets.")
    q = alg.quiver
    resolutions = resolve_all(alg, max_steps)
    ext = ext_dimensions(resolutions)

    def degree(table, i):
        return {k: row[i] for k, row in table.items() if row.get(i)}

    orientation, paths = None, None
    for name, reverse in (("forward", False), ("reverse", True)):
        candidate = path_dimensions(expected, reverse)
        if degree(ext, 1) == degree(candidate, 1):
            orientation, paths = name, candidate
            break
    if orientation is None:
        raise CalibrationError(f"Ext^1 of {alg.label} matches the arrows of {expected.label} in neither orientation")

    top = max([i for row in ext.values() for i in row] + [i for row in paths.values() for i in row] + [0])
    mismatches = []
    for i in range(top + 1):
        found, wanted = degree(ext, i), degree(paths, i)
        for key in sorted(set(found) | set(wanted)):
            if found.get(key, 0) != wanted.get(key, 0):
                mismatches.append({"degree": i, "pair": [q.node_key(key[0]), q.node_key(key[1])],
                                   "ext": found.get(key, 0), "paths": wanted.get(key, 0)})
    report = {
        "orientation": orientation,
        "global_dimension": global_dimension(resolutions),
        "ext_totals": [sum(degree(ext, i).values()) for i in range(top + 1)],
        "path_totals": [sum(degree(paths, i).values()) for i in range(top + 1)],
    }
    if mismatches:
        return Verdict(False, {"first": mismatches[0], "count": len(mismatches)}), report
    return Verdict(True, None), report
