from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Dict, Hashable, List, Optional, Tuple

import networkx as nx

from .complex import SimplicialComplex, incident
from .errors import UnknownNodeError, ValidationError
from .perversity import Perversity

Node = Hashable
Arrow = Tuple[Node, Node]
Path = Tuple[Node, ...]


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver with at most one arrow between two nodes.

    Paths are node sequences ``(v0, ..., vd)`` of length ``d``; a path is read from
    ``v0`` to ``vd`` and acts on a representation as the matrix product along it.
    """
    nodes: Tuple[Node, ...]
    arrows: Tuple[Arrow, ...]
    complex: Optional[SimplicialComplex] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        known = set(self.nodes)
        for src, dst in self.arrows:
            if src not in known or dst not in known:
                raise UnknownNodeError(f"Arrow {src!r} -> {dst!r} leaves the node set.")
        if len(set(self.arrows)) != len(self.arrows):
            raise ValidationError("Parallel arrows are not supported.")
        if not nx.is_directed_acyclic_graph(self.graph):
            raise ValidationError("The quiver has an oriented cycle.")

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.arrows)
        return graph

    def node_key(self, node: Node) -> str:
        return self.complex.key(node) if self.complex is not None else str(node)

    def arrow_key(self, arrow: Arrow) -> str:
        return f"{self.node_key(arrow[0])}->{self.node_key(arrow[1])}"

    def check(self, *nodes: Node):
        for v in nodes:
            if v not in self.successors:
                raise UnknownNodeError(f"{v!r} is not a node of this quiver.")

    @cached_property
    def successors(self) -> Dict[Node, Tuple[Node, ...]]:
        return {v: tuple(sorted(self.graph.successors(v))) for v in self.nodes}

    @cached_property
    def predecessors(self) -> Dict[Node, Tuple[Node, ...]]:
        return {v: tuple(sorted(self.graph.predecessors(v))) for v in self.nodes}

    @cached_property
    def arrow_set(self):
        return frozenset(self.arrows)

    @cached_property
    def longest_path(self) -> int:
        return nx.dag_longest_path_length(self.graph)

    @cached_property
    def _paths(self) -> Dict[int, Tuple[Path, ...]]:
        paths = {0: tuple((v,) for v in self.nodes)}
        for d in range(1, self.longest_path + 1):
            paths[d] = tuple(sorted(p + (w,) for p in paths[d - 1] for w in self.successors[p[-1]]))
        return paths

    def paths(self, d: int) -> Tuple[Path, ...]:
        return self._paths.get(d, ())

    @cached_property
    def _paths_between(self) -> Dict[Tuple[int, Node, Node], Tuple[Path, ...]]:
        grouped: Dict[Tuple[int, Node, Node], List[Path]] = {}
        for d, paths in self._paths.items():
            for p in paths:
                grouped.setdefault((d, p[0], p[-1]), []).append(p)
        return {k: tuple(v) for k, v in grouped.items()}

    def paths_between(self, d: int, source: Node, target: Node) -> Tuple[Path, ...]:
        return self._paths_between.get((d, source, target), ())

    def endpoint_pairs(self, d: int) -> Tuple[Tuple[Node, Node], ...]:
        return tuple(sorted({(p[0], p[-1]) for p in self.paths(d)}))

    @cached_property
    def length2_blocks(self) -> Dict[Tuple[Node, Node], Tuple[Path, ...]]:
        return {pair: self.paths_between(2, *pair) for pair in self.endpoint_pairs(2)}

    def chains(self, source: Node, target: Node) -> Tuple[Path, ...]:
        """Every path from ``source`` to ``target``, of any length."""
        self.check(source, target)
        return tuple(p for d in range(self.longest_path + 1) for p in self.paths_between(d, source, target))

    @cached_property
    def closure(self) -> nx.DiGraph:
        return nx.transitive_closure(self.graph, reflexive=True)

    def leq(self, source: Node, target: Node) -> bool:
        """Reflexive-transitive closure of the arrow relation."""
        self.check(source, target)
        return self.closure.has_edge(source, target)

    def opposite(self) -> "Quiver":
        return Quiver(self.nodes, tuple(sorted((dst, src) for src, dst in self.arrows)), self.complex)

    def to_json(self) -> Dict[str, Any]:
        return {
            "nodes": [self.node_key(v) for v in self.nodes],
            "arrows": [self.arrow_key(a) for a in self.arrows],
            "longest_path": self.longest_path,
        }


@lru_cache(maxsize=None)
def build_quiver(complex_: SimplicialComplex, delta: Perversity) -> Quiver:
    if delta.n < complex_.dimension:
        raise ValidationError(f"Perversity {delta} is too short for dimension {complex_.dimension}")
    simplices = complex_.simplices
    arrows = tuple(sorted((a, b) for a in simplices for b in simplices
                          if delta.level(a) == delta.level(b) + 1 and incident(complex_, a, b)))
    return Quiver(simplices, arrows, complex_)
