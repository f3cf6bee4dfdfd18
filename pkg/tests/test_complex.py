import logging

import pytest
from hypothesis import given, strategies as st

from pyperverse.checks import expected_flag_census
from pyperverse.complex import (Flag, SimplicialComplex, barycentric_subdivision, closed_union, incident, parse_complex,
                                split_arrow, split_key)
from pyperverse.errors import (DisconnectedComplexError, DocumentError, DuplicateVertexError, EmptyComplexError,
                               RedundantMaximalError, UnknownSimplexError, UnknownVertexError, ValidationError)
from pyperverse.perversity import top
from pyperverse.quiver import build_quiver
from tests.conftest import load_complex


def test_census(triangle, boundary, tetrahedron):
    assert triangle.f_vector == (3, 3, 1)
    assert triangle.euler_characteristic == 1
    assert boundary.f_vector == (4, 6, 4)
    assert boundary.euler_characteristic == 2
    assert tetrahedron.f_vector == (4, 6, 4, 1)
    assert [boundary.key(s) for s in boundary.maximal_simplices] == ["abc", "abd", "acd", "bcd"]


def test_canonical_order(triangle):
    assert [triangle.key(s) for s in triangle.simplices] == ["a", "b", "c", "ab", "ac", "bc", "abc"]


def test_keys_with_long_labels():
    complex_ = load_complex("long_labels.json")
    assert complex_.separator == ","
    edge = complex_.simplex(["v2", "v1"])
    assert complex_.key(edge) == "v1,v2"
    assert complex_.from_key("v1,v2") == edge
    with pytest.raises(UnknownSimplexError):
        complex_.from_key("v1,v3")


def test_faces_and_incidence(triangle):
    abc, ab, c = (triangle.from_key(k) for k in ("abc", "ab", "c"))
    assert len(triangle.faces(abc)) == 7
    assert incident(triangle, ab, abc)
    assert not incident(triangle, ab, c)
    assert not incident(triangle, ab, ab)


def test_rejected_documents():
    with pytest.raises(DuplicateVertexError):
        load_complex("duplicate_vertex.json")
    with pytest.raises(DisconnectedComplexError):
        load_complex("disconnected.json")
    with pytest.raises(UnknownVertexError):
        parse_complex({"vertices": ["a"], "maximal_simplices": [["a", "b"]]})
    with pytest.raises(EmptyComplexError):
        parse_complex({"vertices": [], "maximal_simplices": []})
    with pytest.raises(DocumentError):
        parse_complex({"vertices": [""], "maximal_simplices": [[""]]})
    with pytest.raises(DocumentError):
        parse_complex("not json")


def test_keys_escape_reserved_characters():
    complex_ = parse_complex({"vertices": ["x<y", "a,b", "c"], "maximal_simplices": [["x<y", "a,b", "c"]]})
    edge = complex_.simplex(["a,b", "x<y"])
    assert complex_.key(edge) == "a\\,b,x\\<y"
    assert complex_.from_key("a\\,b,x\\<y") == edge
    sub = barycentric_subdivision(complex_)
    assert all(sub.flag_from_key(sub.flag_key(g)) == g for g in sub.flags)
    q = build_quiver(complex_, top(2))
    for arrow in q.arrows:
        source, target = split_arrow(q.arrow_key(arrow))
        assert (complex_.from_key(source), complex_.from_key(target)) == arrow

    short = parse_complex({"vertices": [",", "a"], "maximal_simplices": [[",", "a"]]})
    assert short.separator == ""
    assert short.key(short.simplex([",", "a"])) == "\\,a"
    assert short.from_key("\\,a") == short.simplex(["a", ","])


def test_split_keys():
    assert split_key("v1,v2", ",") == ["v1", "v2"]
    assert split_key("a\\\\,b", ",") == ["a\\", "b"]
    assert split_arrow("a-->b") == ("a-", "b")
    assert split_arrow("a\\->b->c") == ("a\\->b", "c")
    assert split_arrow("ab") is None


def test_components():
    complex_ = SimplicialComplex.build(["a", "b", "c", "d"], [["a", "b"], ["c"], ["b", "d"]], require_connected=False)
    assert complex_.components == [["a", "b", "d"], ["c"]]
    assert complex_.one_skeleton.number_of_edges() == 2
    assert not complex_.is_connected


def test_redundant_maximal(caplog):
    document = {"vertices": ["a", "b"], "maximal_simplices": [["a", "b"], ["a"]]}
    with caplog.at_level(logging.WARNING):
        complex_ = parse_complex(document)
    assert complex_.f_vector == (2, 1)
    assert "faces of others" in caplog.text
    with pytest.raises(RedundantMaximalError):
        parse_complex(document, strict_maximal=True)


def test_subdivision_census(triangle, tetrahedron):
    sub = barycentric_subdivision(triangle)
    assert len(sub.flags) == 25
    assert sub.census() == (7, 12, 6)
    assert barycentric_subdivision(tetrahedron).census() == expected_flag_census(tetrahedron)
    assert len(barycentric_subdivision(tetrahedron).flags) == 149


def test_flag_keys(interval):
    sub = barycentric_subdivision(interval)
    flag = sub.flag("ab", "a")
    assert sub.flag_key(flag) == "a<ab"
    assert sub.flag_from_key("a<ab") == flag
    assert sub.complex.labels == ("a", "b", "ab")
    assert [sub.flag_key(g) for g in flag.codim_one_faces()] == ["a", "ab"]


def test_flags_order_by_chain(interval):
    sub = barycentric_subdivision(interval)
    assert [sub.flag_key(g) for g in sub.flags] == ["a", "a<ab", "b", "b<ab", "ab"]
    assert sub.flag("a", "ab") < sub.flag("b")


def test_flag_must_increase(triangle):
    a, ab = triangle.from_key("a"), triangle.from_key("ab")
    with pytest.raises(ValidationError):
        Flag((ab, a))
    with pytest.raises(ValidationError):
        Flag(())


def test_closed_union(interval):
    sub = barycentric_subdivision(interval)
    closure, closed = closed_union([sub.flag("a", "ab")], sub)
    assert not closed
    assert {sub.flag_key(g) for g in closure} == {"a", "ab", "a<ab"}
    assert closed_union(closure, sub) == (closure, True)


@st.composite
def complexes(draw):
    labels = draw(st.sampled_from(["a", "ab", "abcd", "abcde"]))
    simplex = st.sets(st.sampled_from(labels), min_size=1, max_size=min(4, len(labels)))
    faces = draw(st.lists(simplex, min_size=1, max_size=4))
    return SimplicialComplex.build(labels, faces, require_connected=False)


@given(complexes())
def test_flag_census_matches_formula(complex_):
    assert barycentric_subdivision(complex_).census() == expected_flag_census(complex_)


@given(complexes())
def test_every_face_is_present(complex_):
    for s in complex_.simplices:
        assert set(complex_.faces(s)) <= set(complex_.simplices)
    assert sum(complex_.f_vector) == len(complex_.simplices)
