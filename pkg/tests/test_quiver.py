import pytest

from pyperverse.errors import UnknownNodeError, ValidationError
from pyperverse.perversity import Perversity, enumerate_perversities, top
from pyperverse.quiver import Quiver, build_quiver
from tests.conftest import load_complex


def test_triangle_top(triangle):
    q = build_quiver(triangle, top(2))
    assert len(q.arrows) == 9
    assert q.longest_path == 2
    assert q.successors[triangle.from_key("abc")] == tuple(triangle.from_key(k) for k in ("ab", "ac", "bc"))
    blocks = {(q.node_key(s), q.node_key(e)): len(paths) for (s, e), paths in q.length2_blocks.items()}
    assert blocks == {("abc", "a"): 2, ("abc", "b"): 2, ("abc", "c"): 2}


def test_mixed_perversity(triangle):
    q = build_quiver(triangle, Perversity((0, -1, 1)))
    keys = q.to_json()["arrows"]
    assert len(keys) == 9
    assert "abc->a" in keys and "a->ab" in keys
    assert "abc->ab" not in keys
    assert len(q.length2_blocks) == 3


def test_boundary_top(boundary):
    q = build_quiver(boundary, top(2))
    assert len(q.arrows) == 24
    assert len(q.length2_blocks) == 12
    assert all(len(paths) == 2 for paths in q.length2_blocks.values())


def test_order(triangle):
    q = build_quiver(triangle, top(2))
    abc, ab, a, c = (triangle.from_key(k) for k in ("abc", "ab", "a", "c"))
    assert q.leq(a, a)
    assert q.leq(abc, a)
    assert not q.leq(a, abc)
    assert not q.leq(ab, c)
    assert q.chains(abc, a) == ((abc, ab, a), (abc, triangle.from_key("ac"), a))
    assert q.graph.number_of_edges() == len(q.arrows)
    assert q.closure.number_of_edges() == 7 + 9 + 3


def test_longest_path_of_a_line():
    q = Quiver(("w", "x", "y", "z"), (("w", "x"), ("x", "y"), ("y", "z"), ("w", "z")))
    assert q.longest_path == 3
    assert q.leq("w", "z") and not q.leq("z", "w")
    assert q.chains("w", "z") == (("w", "z"), ("w", "x", "y", "z"))
    assert Quiver(("x",), ()).longest_path == 0


@pytest.mark.parametrize("name", ["interval.json", "triangle.json", "tetra_boundary.json", "tetrahedron.json"])
def test_negation_reverses_arrows(name):
    complex_ = load_complex(name)
    for delta in enumerate_perversities(complex_.dimension):
        assert build_quiver(complex_, -delta) == build_quiver(complex_, delta).opposite()


def test_rejects_cycles_and_strangers():
    with pytest.raises(ValidationError):
        Quiver(("x", "y"), (("x", "y"), ("y", "x")))
    with pytest.raises(UnknownNodeError):
        Quiver(("x",), (("x", "y"),))
    with pytest.raises(ValidationError):
        Quiver(("x", "y"), (("x", "y"), ("x", "y")))
    q = Quiver(("x", "y"), (("x", "y"),))
    with pytest.raises(UnknownNodeError):
        q.check("z")
    assert q.to_json() == {"nodes": ["x", "y"], "arrows": ["x->y"], "longest_path": 1}


def test_short_perversity(triangle):
    with pytest.raises(ValidationError):
        build_quiver(triangle, top(1))
