"""JSON documents for complexes, cellular data, S-objects, flag sets, morphisms, perversities and algebras.

Map keys read ``"<source>-><target>"``. In S-object documents a node is a flag written
as its simplex keys joined by ``<``, e.g. ``"a<ab<abc"``. Inside keys a backslash escapes
``,``, ``<``, ``>`` and itself.
"""
import json
import logging
from typing import Any, Dict, List, Optional, Tuple, Union

import fastjsonschema

from . import linalg
from .algebra import QuadraticQuiverAlgebra, RelationBlock, build_algebra, with_relations
from .complex import Flag, SimplicialComplex, barycentric_subdivision, parse_complex, split_arrow
from .errors import BaseMismatchError, DocumentError, ShapeMismatchError, ValidationError
from .linalg import Matrix
from .perversity import Perversity, bottom, parse_perversity
from .quiver import Quiver, build_quiver
from .schemas import algebra_schema, flag_set_schema, perversity_schema, sheaf_schema
from .sheaf import CellularData, DataMorphism, SObject

Document = Union[str, bytes, dict]


def _load_json(document: Document, what: str) -> Any:
    if isinstance(document, (str, bytes)):
        try:
            return json.loads(document)
        except json.JSONDecodeError as e:
            raise DocumentError(f"{what} document is not JSON: {e}") from e
    return document


def dump_complex(complex_: SimplicialComplex) -> dict:
    return {
        "vertices": list(complex_.labels),
        "maximal_simplices": [list(s.labels) for s in complex_.maximal_simplices],
    }


def decode_matrix(rows: List[List], nrows: int, ncols: int, name: str) -> Matrix:
    if nrows == 0 or ncols == 0:
        if len(rows) not in (0, nrows) or any(rows_ for rows_ in rows):
            raise ShapeMismatchError(f"Map {name} must be empty, its shape is {nrows}x{ncols}")
        return linalg.zeros(nrows, ncols)
    try:
        return linalg.matrix(rows, nrows, ncols)
    except ShapeMismatchError:
        raise ShapeMismatchError(f"Map {name} must be {nrows}x{ncols}") from None
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(f"Map {name} has an unreadable entry: {e}") from e


def _decode_data(q: Quiver, complex_: SimplicialComplex, stalks: Dict[str, int],
                 maps: Dict[str, List[List]]) -> Tuple[dict, dict]:
    nodes = {complex_.from_key(key): n for key, n in stalks.items()}
    full = {v: nodes.get(v, 0) for v in q.nodes}
    decoded = {}
    for key, rows in maps.items():
        if (ends := split_arrow(key)) is None:
            raise DocumentError(f"Map key {key!r} is not of the form source->target")
        arrow = (complex_.from_key(ends[0]), complex_.from_key(ends[1]))
        if arrow not in q.arrow_set:
            raise DocumentError(f"{key} is not an arrow of the quiver")
        decoded[arrow] = decode_matrix(rows, full[arrow[1]], full[arrow[0]], key)
    return nodes, decoded


def load_sheaf(document: Document, complex_: Optional[SimplicialComplex] = None,
               strict_maximal: bool = False) -> Union[CellularData, SObject]:
    """Read an R-object (``kind`` R, the default) or an S-object (``kind`` S)."""
    document = _load_json(document, "Sheaf")
    try:
        sheaf_schema(document)
    except fastjsonschema.JsonSchemaException as e:
        raise DocumentError(f"Malformed sheaf document: {e.message}") from e

    if "complex" in document:
        embedded = parse_complex(document["complex"], strict_maximal)
        if complex_ is not None and embedded != complex_:
            raise BaseMismatchError("The embedded complex differs from the given one.")
        complex_ = embedded
    if complex_ is None:
        raise DocumentError("The sheaf document has no complex and none was given.")
    delta = parse_perversity(document["perversity"], complex_.dimension)

    if document.get("kind", "R") == "R":
        q = build_quiver(complex_, delta)
        stalks, maps = _decode_data(q, complex_, document["stalks"], document.get("maps", {}))
        return CellularData.build(complex_, delta, stalks, maps)

    sub = barycentric_subdivision(complex_)
    floor = bottom(complex_.dimension)
    q = build_quiver(sub.complex, floor)
    stalks, maps = _decode_data(q, sub.complex, document["stalks"], document.get("maps", {}))
    return SObject(CellularData.build(sub.complex, floor, stalks, maps), complex_, delta)


def _encode_data(data: CellularData) -> Tuple[dict, dict]:
    q = data.quiver
    stalks = {q.node_key(v): n for v, n in data.stalks.items()}
    maps = {q.arrow_key(a): linalg.to_strings(m) for a, m in data.maps.items() if m.shape[0] and m.shape[1]}
    return stalks, maps


def dump_sheaf(obj: Union[CellularData, SObject]) -> dict:
    if isinstance(obj, SObject):
        stalks, maps = _encode_data(obj.data)
        kind, complex_, delta = "S", obj.base, obj.perversity
    else:
        stalks, maps = _encode_data(obj)
        kind, complex_, delta = "R", obj.complex, obj.perversity
    return {
        "kind": kind,
        "complex": dump_complex(complex_),
        "perversity": list(delta.values),
        "stalks": stalks,
        "maps": maps,
    }


def load_flags(document: Document, complex_: SimplicialComplex) -> List[Flag]:
    document = _load_json(document, "Flag set")
    try:
        flag_set_schema(document)
    except fastjsonschema.JsonSchemaException as e:
        raise DocumentError(f"Malformed flag set document: {e.message}") from e
    sub = barycentric_subdivision(complex_)
    flags = [sub.flag(*keys) for keys in document["flags"]]
    sub.check(*flags)
    return flags


def dump_flags(flags, complex_: SimplicialComplex) -> dict:
    return {"flags": [[complex_.key(s) for s in g.chain] for g in sorted(flags)]}


def dump_morphism(morphism: DataMorphism, q: Quiver) -> Dict[str, List[List[str]]]:
    return {q.node_key(v): linalg.to_strings(m) for v, m in sorted(morphism.components.items())}


def load_perversity(document: Document, n: int) -> Perversity:
    """A JSON array of levels, one per dimension ``0..n``."""
    document = _load_json(document, "Perversity")
    try:
        perversity_schema(document)
    except fastjsonschema.JsonSchemaException as e:
        raise DocumentError(f"Malformed perversity document: {e.message}") from e
    return parse_perversity(document, n)


def load_algebra(document: Document, complex_: SimplicialComplex, delta: Perversity) -> QuadraticQuiverAlgebra:
    """The relations of A or B on Q(X, delta), with the document's relation blocks added.

    A block lists its paths as arrays of simplex keys, all with the same endpoints, and
    rows of coefficients on them. The label is the base followed by the number of blocks.
    """
    document = _load_json(document, "Algebra")
    try:
        algebra_schema(document)
    except fastjsonschema.JsonSchemaException as e:
        raise DocumentError(f"Malformed algebra document: {e.message}") from e
    base = build_algebra(document["base"], complex_, delta)
    blocks = []
    for i, entry in enumerate(document.get("relations", [])):
        paths = [tuple(complex_.from_key(key) for key in keys) for keys in entry["paths"]]
        if len(set(paths)) != len(paths):
            raise DocumentError(f"Relation {i} lists a path twice")
        if any(len(row) != len(paths) for row in entry["rows"]):
            raise ShapeMismatchError(f"Relation {i} needs {len(paths)} coefficients per row")
        try:
            blocks.append(RelationBlock.create(paths[0][0], paths[0][-1], paths, entry["rows"]))
        except ValidationError:
            raise
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError(f"Relation {i} has an unreadable coefficient: {e}") from e
    if not blocks:
        return base
    logging.debug(f"Added {len(blocks)} relation blocks to {base.label}")
    return with_relations(base, blocks, f"{base.label}+{len(blocks)}")
