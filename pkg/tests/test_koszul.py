import pytest

from pyperverse.algebra import algebra_A, algebra_B, non_quadratic_example
from pyperverse.documents import load_algebra
from pyperverse.errors import CalibrationError, ResolutionError
from pyperverse.koszul import (ext_dimensions, ext_vs_dual, global_dimension, koszulity_check, minimal_resolution,
                               resolve_all, verify_resolution)
from pyperverse.perversity import enumerate_perversities, top
from tests.conftest import FIXTURES, load_complex


def cases():
    for name in ["interval.json", "triangle.json", "tetra_boundary.json", "tetrahedron.json"]:
        complex_ = load_complex(name)
        for delta in enumerate_perversities(complex_.dimension):
            yield pytest.param(complex_, delta, id=f"{name[:-5]}-{delta}")


def test_interval_resolution(interval):
    a, b, ab = (interval.from_key(k) for k in ("a", "b", "ab"))
    res = minimal_resolution(algebra_A(interval, top(1)), ab)
    assert res.length == 1
    assert res.betti == {0: {0: {ab: 1}}, 1: {1: {a: 1, b: 1}}}
    assert res.is_linear
    assert verify_resolution(res)
    assert res.to_json() == {"simple": "ab", "length": 1, "linear": True,
                             "betti": {"0": {"0": {"ab": 1}}, "1": {"1": {"a": 1, "b": 1}}}}


def test_sinks_are_projective(triangle):
    a = triangle.from_key("a")
    res = minimal_resolution(algebra_A(triangle, top(2)), a)
    assert res.length == 0
    assert verify_resolution(res)


def test_triangle_top(triangle):
    alg = algebra_A(triangle, top(2))
    abc = triangle.from_key("abc")
    res = minimal_resolution(alg, abc)
    assert res.length == 2
    assert {v: n for v, n in res.betti[2][2].items()} == {triangle.from_key(k): 1 for k in "abc"}
    verdict, tables = koszulity_check(alg)
    assert verdict
    assert tables["abc"]["length"] == 2
    assert global_dimension(resolve_all(alg)) == 2


def test_step_limit(triangle):
    with pytest.raises(ResolutionError):
        minimal_resolution(algebra_A(triangle, top(2)), triangle.from_key("abc"), max_steps=1)


def test_non_quadratic_is_not_koszul():
    verdict, tables = koszulity_check(non_quadratic_example())
    assert not verdict
    assert verdict.witness == {"reason": "relations mix path lengths", "block": ["1", "3"], "path_lengths": [1, 2]}
    assert tables == {}


@pytest.mark.parametrize("complex_,delta", cases())
@pytest.mark.parametrize("which", [algebra_A, algebra_B])
def test_koszul(complex_, delta, which):
    alg = which(complex_, delta)
    verdict, tables = koszulity_check(alg)
    assert verdict, verdict.witness
    assert set(tables) == {alg.quiver.node_key(v) for v in alg.quiver.nodes}
    assert max(t["length"] for t in tables.values()) <= delta.max - delta.min


@pytest.mark.parametrize("complex_,delta", cases())
def test_ext_matches_dual(complex_, delta):
    a, b = algebra_A(complex_, delta), algebra_B(complex_, delta)
    verdict, report = ext_vs_dual(a, b)
    assert verdict, verdict.witness
    assert report["orientation"] == "forward"
    assert report["ext_totals"] == report["path_totals"]
    verdict, _ = ext_vs_dual(b, a)
    assert verdict, verdict.witness


def test_ext_totals(triangle):
    _, report = ext_vs_dual(algebra_A(triangle, top(2)), algebra_B(triangle, top(2)))
    assert report["ext_totals"] == [7, 9, 3]
    assert report["global_dimension"] == 2


def test_ext_dimensions(interval):
    a, ab = interval.from_key("a"), interval.from_key("ab")
    ext = ext_dimensions(resolve_all(algebra_B(interval, top(1))))
    assert ext[(ab, a)] == {1: 1}
    assert ext[(ab, ab)] == {0: 1}


def test_calibration(interval, triangle):
    with pytest.raises(CalibrationError):
        ext_vs_dual(algebra_A(interval, top(1)), algebra_B(triangle, top(2)))
    verdict, report = ext_vs_dual(algebra_A(interval, top(1)), algebra_B(interval, -top(1)))
    assert verdict
    assert report["orientation"] == "reverse"


def test_cubic_relation(tetrahedron):
    alg = load_algebra((FIXTURES / "tetra_cubic.json").read_text(), tetrahedron, top(3))
    assert alg.label == "B+1"
    assert alg.is_homogeneous and not alg.is_quadratic
    verdict, tables = koszulity_check(alg)
    assert not verdict
    assert verdict.witness == {"simple": "abcd", "step": 2, "degree": 3, "generators": {"a": 1}}
    verdict, report = ext_vs_dual(alg, algebra_A(tetrahedron, top(3)))
    assert not verdict
    assert report["orientation"] == "forward"
