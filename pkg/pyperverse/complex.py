import json
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import fastjsonschema
import networkx as nx

from .errors import (DisconnectedComplexError, DocumentError, DuplicateVertexError, EmptyComplexError,
                     NotClosedError, RedundantMaximalError, UnknownSimplexError, UnknownVertexError,
                     ValidationError)
from .schemas import complex_schema

FLAG_SEPARATOR = "<"
ESCAPE = "\\"
RESERVED = frozenset(",<>" + ESCAPE)


def escape(label: str) -> str:
    return "".join(ESCAPE + ch if ch in RESERVED else ch for ch in label)


def _unescaped(key: str):
    chars = iter(key)
    for ch in chars:
        if ch == ESCAPE:
            yield next(chars, ESCAPE), True
        else:
            yield ch, False


def split_key(key: str, separator: str) -> List[str]:
    """Labels of a key; every character is a label when ``separator`` is empty."""
    if not separator:
        return [ch for ch, _ in _unescaped(key)]
    parts: List[List[str]] = [[]]
    for ch, escaped in _unescaped(key):
        if ch == separator and not escaped:
            parts.append([])
        else:
            parts[-1].append(ch)
    return ["".join(p) for p in parts]


def split_arrow(key: str) -> Optional[Tuple[str, str]]:
    """``"source->target"`` split at its first unescaped arrow."""
    i = 0
    while i < len(key):
        if key[i] == ESCAPE:
            i += 2
        elif key.startswith("->", i):
            return key[:i], key[i + 2:]
        else:
            i += 1
    return None


@dataclass(frozen=True, order=True)
class Simplex:
    """A simplex as the sorted ranks of its vertices; ordered by (dimension, ranks)."""
    dim: int = field(init=False)
    vertices: Tuple[int, ...]
    labels: Tuple[str, ...] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", len(self.vertices) - 1)

    def __repr__(self):
        return f"Simplex({','.join(self.labels)})"

    def is_face_of(self, other: "Simplex") -> bool:
        return set(self.vertices) <= set(other.vertices)


@dataclass(frozen=True)
class SimplicialComplex:
    labels: Tuple[str, ...]
    simplices: Tuple[Simplex, ...]
    separator: str = ""

    @classmethod
    def build(cls, labels: Sequence[str], faces: Iterable[Iterable[str]], separator: Optional[str] = None,
              require_connected: bool = True) -> "SimplicialComplex":
        """Face closure of ``faces`` over the ordered vertex ``labels``."""
        labels = tuple(labels)
        if not labels:
            raise EmptyComplexError("The complex has no vertices.")
        rank = {}
        for i, label in enumerate(labels):
            if label in rank:
                raise DuplicateVertexError(f"Duplicate vertex label: {label!r}")
            rank[label] = i
        if separator is None:
            separator = "" if all(len(label) == 1 for label in labels) else ","

        vertex_sets = {frozenset([i]) for i in range(len(labels))}
        for face in faces:
            face = list(face)
            for label in face:
                if label not in rank:
                    raise UnknownVertexError(f"Simplex {face} references unknown vertex {label!r}")
            ranks = sorted({rank[label] for label in face})
            if not ranks:
                raise ValidationError("Empty simplex.")
            for size in range(1, len(ranks) + 1):
                vertex_sets.update(frozenset(c) for c in combinations(ranks, size))

        simplices = tuple(sorted(Simplex(tuple(sorted(s)), tuple(labels[i] for i in sorted(s)))
                                 for s in vertex_sets))
        obj = cls(labels, simplices, separator)
        if require_connected and not obj.is_connected:
            raise DisconnectedComplexError(f"The complex is disconnected: {obj.components}")
        return obj

    @cached_property
    def index(self) -> Dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    @cached_property
    def _by_vertices(self) -> Dict[FrozenSet[int], Simplex]:
        return {frozenset(s.vertices): s for s in self.simplices}

    @cached_property
    def _rank(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def dimension(self) -> int:
        return max(s.dim for s in self.simplices)

    @property
    def vertices(self) -> Tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if s.dim == 0)

    @cached_property
    def f_vector(self) -> Tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[s.dim] += 1
        return tuple(counts)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector))

    def __contains__(self, simplex: Simplex) -> bool:
        return simplex in self.index

    def check(self, *simplices: Simplex):
        for s in simplices:
            if s not in self.index:
                raise UnknownSimplexError(f"{s!r} is not a simplex of this complex.")

    def simplex(self, labels: Iterable[str]) -> Simplex:
        labels = list(labels)
        try:
            ranks = frozenset(self._rank[label] for label in labels)
            return self._by_vertices[ranks]
        except KeyError:
            raise UnknownSimplexError(f"No simplex with vertices {sorted(labels)}") from None

    def key(self, simplex: Simplex) -> str:
        """Labels joined by the separator, reserved characters escaped with a backslash."""
        return self.separator.join(escape(label) for label in simplex.labels)

    def from_key(self, key: str) -> Simplex:
        return self.simplex(split_key(key, self.separator))

    @cached_property
    def cofaces(self) -> Dict[Simplex, Tuple[Simplex, ...]]:
        """Proper cofaces of every simplex, canonical order."""
        out: Dict[Simplex, List[Simplex]] = {s: [] for s in self.simplices}
        for s in self.simplices:
            for size in range(1, len(s.vertices)):
                for sub in combinations(s.vertices, size):
                    out[self._by_vertices[frozenset(sub)]].append(s)
        return {s: tuple(sorted(v)) for s, v in out.items()}

    @cached_property
    def maximal_simplices(self) -> Tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if not self.cofaces[s])

    def faces(self, simplex: Simplex) -> Tuple[Simplex, ...]:
        """All nonempty faces, ``simplex`` included."""
        return tuple(sorted(self._by_vertices[frozenset(sub)]
                            for size in range(1, len(simplex.vertices) + 1)
                            for sub in combinations(simplex.vertices, size)))

    @cached_property
    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(s.vertices[0] for s in self.vertices)
        graph.add_edges_from(s.vertices for s in self.simplices if s.dim == 1)
        return graph

    @cached_property
    def components(self) -> List[List[str]]:
        return sorted([self.labels[v] for v in sorted(c)] for c in nx.connected_components(self.one_skeleton))

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    def subcomplex(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """The closed subcomplex spanned by ``simplices``; may be disconnected."""
        simplices = set(simplices)
        self.check(*simplices)
        missing = {f for s in simplices for f in self.faces(s)} - simplices
        if missing:
            raise NotClosedError(f"Not closed under faces, missing {sorted(missing)}")
        return SimplicialComplex(self.labels, tuple(sorted(simplices)), self.separator)


def incident(complex_: SimplicialComplex, a: Simplex, b: Simplex) -> bool:
    complex_.check(a, b)
    va, vb = set(a.vertices), set(b.vertices)
    return va < vb or vb < va


def parse_complex(document: Union[str, bytes, dict], strict_maximal: bool = False) -> SimplicialComplex:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise DocumentError(f"Complex document is not JSON: {e}") from e
    try:
        complex_schema(document)
    except fastjsonschema.JsonSchemaException as e:
        raise DocumentError(f"Malformed complex document: {e.message}") from e

    labels = document["vertices"]
    if len(set(labels)) != len(labels):
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        raise DuplicateVertexError(f"Duplicate vertex labels: {duplicates}")
    maximal = [frozenset(s) for s in document["maximal_simplices"]]
    redundant = sorted(sorted(a) for a in set(maximal) if any(a < b for b in maximal))
    if redundant:
        message = f"Listed maximal simplices are faces of others: {redundant}"
        if strict_maximal:
            raise RedundantMaximalError(message)
        logging.warning(message)
    return SimplicialComplex.build(sorted(labels), maximal)


@dataclass(frozen=True, order=True)
class Flag:
    """A chain of simplices, i.e. one simplex of the barycentric subdivision.

    Flags compare lexicographically on their chains, so ``a < a<ab < b < b<ab < ab``.
    """
    length: int = field(init=False, compare=False)
    chain: Tuple[Simplex, ...]

    def __post_init__(self):
        if not self.chain:
            raise ValidationError("A flag has at least one simplex.")
        for lower, upper in zip(self.chain, self.chain[1:]):
            if not (lower.is_face_of(upper) and lower.dim < upper.dim):
                raise ValidationError(f"Not a strictly increasing chain: {self.chain}")
        object.__setattr__(self, "length", len(self.chain))

    def __repr__(self):
        return "Flag(" + " < ".join(",".join(s.labels) for s in self.chain) + ")"

    @property
    def dim(self) -> int:
        return self.length - 1

    def is_face_of(self, other: "Flag") -> bool:
        return set(self.chain) <= set(other.chain)

    def codim_one_faces(self) -> Tuple["Flag", ...]:
        if self.length == 1:
            return ()
        return tuple(sorted(Flag(self.chain[:i] + self.chain[i + 1:]) for i in range(self.length)))

    def faces(self) -> Tuple["Flag", ...]:
        return tuple(sorted(Flag(sub) for size in range(1, self.length + 1)
                            for sub in combinations(self.chain, size)))


@dataclass(frozen=True)
class SubdividedComplex:
    base: SimplicialComplex
    flags: Tuple[Flag, ...]
    complex: SimplicialComplex

    @cached_property
    def _flag_rank(self) -> Dict[Flag, int]:
        return {g: i for i, g in enumerate(self.flags)}

    def check(self, *flags: Flag):
        for g in flags:
            if g not in self._flag_rank:
                raise UnknownSimplexError(f"{g!r} is not a flag of this subdivision.")

    def simplex_of(self, flag: Flag) -> Simplex:
        """The simplex of the subdivided complex whose vertices are the chain's barycenters."""
        return self.complex.simplex(self.base.key(s) for s in flag.chain)

    def flag_of(self, simplex: Simplex) -> Flag:
        return Flag(tuple(self.base.from_key(label) for label in simplex.labels))

    def flag(self, *keys: str) -> Flag:
        return Flag(tuple(sorted(self.base.from_key(k) for k in keys)))

    def flag_key(self, flag: Flag) -> str:
        return self.complex.key(self.simplex_of(flag))

    def flag_from_key(self, key: str) -> Flag:
        return self.flag_of(self.complex.from_key(key))

    def census(self) -> Tuple[int, ...]:
        counts = [0] * (self.base.dimension + 1)
        for g in self.flags:
            counts[g.dim] += 1
        return tuple(counts)


@lru_cache(maxsize=None)
def barycentric_subdivision(complex_: SimplicialComplex) -> SubdividedComplex:
    chains: List[Tuple[Simplex, ...]] = []

    def extend(chain):
        chains.append(chain)
        for coface in complex_.cofaces[chain[-1]]:
            extend(chain + (coface,))

    for s in complex_.simplices:
        extend((s,))

    flags = tuple(sorted(Flag(c) for c in chains))
    keys = [complex_.key(s) for s in complex_.simplices]
    subdivided = SimplicialComplex.build(keys, ([complex_.key(s) for s in g.chain] for g in flags),
                                         separator=FLAG_SEPARATOR, require_connected=False)
    logging.debug(f"Subdivided {len(complex_.simplices)} simplices into {len(flags)} flags")
    return SubdividedComplex(complex_, flags, subdivided)


def closed_union(flags: Iterable[Flag], subdivision: SubdividedComplex) -> Tuple[FrozenSet[Flag], bool]:
    """Face closure of ``flags`` and whether the input was already closed."""
    flags = frozenset(flags)
    subdivision.check(*flags)
    closure = frozenset(f for g in flags for f in g.faces())
    return closure, closure == flags
