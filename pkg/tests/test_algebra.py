import pytest

from pyperverse import linalg
from pyperverse.algebra import (RelationBlock, RelationSpace, algebra_A, algebra_B, build_algebra, check_module,
                                graded_dimensions, hilbert_matrix, merge_blocks, non_quadratic_example, opposite,
                                quadratic_dual, with_relations)
from pyperverse.errors import NotQuadraticError, ValidationError
from pyperverse.perversity import Perversity, enumerate_perversities, top
from pyperverse.sheaf import constant_object
from tests.conftest import load_complex


def cases():
    for name in ["interval.json", "triangle.json", "tetra_boundary.json", "tetrahedron.json"]:
        complex_ = load_complex(name)
        for delta in enumerate_perversities(complex_.dimension):
            yield pytest.param(complex_, delta, id=f"{name[:-5]}-{delta}")


def test_graded_dimensions(point, interval, triangle, boundary):
    assert graded_dimensions(algebra_A(point, top(0))) == [1, 0]
    assert graded_dimensions(algebra_A(interval, top(1))) == [3, 2, 0]
    assert graded_dimensions(algebra_A(triangle, top(2))) == [7, 9, 3, 0]
    assert graded_dimensions(algebra_B(triangle, top(2))) == [7, 9, 3, 0]
    assert graded_dimensions(algebra_A(triangle, Perversity((0, -1, 1)))) == [7, 9, 3, 0]
    assert graded_dimensions(algebra_A(boundary, top(2))) == [14, 24, 12, 0]
    assert graded_dimensions(algebra_B(triangle, top(2)), max_degree=1) == [7, 9]


def test_normal_form(triangle):
    abc, ab, ac, a = (triangle.from_key(k) for k in ("abc", "ab", "ac", "a"))
    one = linalg.qq(1)
    assert algebra_A(triangle, top(2)).normal_form((abc, ab, a)) == {(abc, ac, a): -one}
    assert algebra_B(triangle, top(2)).normal_form((abc, ab, a)) == {(abc, ac, a): one}
    assert algebra_B(triangle, top(2)).normal_form((abc, ac, a)) == {(abc, ac, a): one}
    assert algebra_A(triangle, top(2)).normal_form((a, abc)) == {}


def test_hilbert_matrix(interval):
    a, b, ab = (interval.from_key(k) for k in ("a", "b", "ab"))
    assert hilbert_matrix(algebra_B(interval, top(1))) == {
        (a, a): [1, 0], (b, b): [1, 0], (ab, a): [0, 1], (ab, b): [0, 1], (ab, ab): [1, 0],
    }


@pytest.mark.parametrize("complex_,delta", cases())
def test_degree_two_splits(complex_, delta):
    a, b = algebra_A(complex_, delta), algebra_B(complex_, delta)
    assert len(a.basis(2)) + len(b.basis(2)) == len(a.quiver.paths(2))
    for block in a.relations.blocks:
        assert block.rank == 1
    for block in b.relations.blocks:
        assert block.rank == len(block.paths) - 1


@pytest.mark.parametrize("complex_,delta", cases())
def test_quadratic_duality(complex_, delta):
    a = algebra_A(complex_, delta)
    dual = quadratic_dual(a)
    assert dual == algebra_B(complex_, -delta)
    assert dual.label == "A!"
    assert dual.perversity == -delta
    assert quadratic_dual(dual) == a


@pytest.mark.parametrize("complex_,delta", cases())
def test_opposite(complex_, delta):
    b = algebra_B(complex_, delta)
    assert opposite(algebra_B(complex_, -delta)) == b
    assert opposite(opposite(b)) == b
    assert opposite(b).label == "B^op"


def test_distinct_algebras(triangle):
    assert algebra_A(triangle, top(2)) != algebra_B(triangle, top(2))


def test_relation_block_is_normalised(interval):
    ab, a = interval.from_key("ab"), interval.from_key("a")
    block = RelationBlock.create("s", "t", [("s", "y", "t"), ("s", "x", "t")], [[2, 4]])
    assert block.paths == (("s", "x", "t"), ("s", "y", "t"))
    assert block.rows == ((linalg.qq(1), linalg.qq("1/2")),)
    with pytest.raises(ValidationError):
        RelationBlock.create(ab, a, [(a, ab)], [[1]])
    with pytest.raises(ValidationError):
        RelationSpace((block, block))


def test_non_quadratic():
    mutant = non_quadratic_example()
    assert not mutant.is_quadratic
    with pytest.raises(NotQuadraticError):
        mutant.basis(1)
    with pytest.raises(NotQuadraticError):
        quadratic_dual(mutant)


def test_check_module(triangle):
    constant = constant_object(triangle, top(2))
    assert check_module(algebra_B(triangle, top(2)), constant)
    verdict = check_module(algebra_A(triangle, top(2)), constant)
    assert not verdict
    assert verdict.witness["block"] == ["abc", "a"]
    assert verdict.witness["residual"] == [["2"]]


def test_unknown_algebra(triangle):
    with pytest.raises(ValidationError):
        build_algebra("C", triangle, top(2))
    assert build_algebra("b", triangle, top(2)).label == "B"


def test_with_relations(triangle):
    a_alg, b_alg = algebra_A(triangle, top(2)), algebra_B(triangle, top(2))
    abc, a = triangle.from_key("abc"), triangle.from_key("a")
    merged = merge_blocks(a_alg.relations.block(abc, a), b_alg.relations.block(abc, a))
    assert merged.rank == 2
    assert merged.paths == a_alg.relations.block(abc, a).paths
    both = with_relations(a_alg, [b_alg.relations.block(abc, a)], "A+1")
    assert both.label == "A+1"
    assert both.relations.block(abc, a) == merged
    assert len(both.basis(2)) == len(a_alg.basis(2)) - 1
    assert with_relations(a_alg, []) == a_alg
    assert with_relations(a_alg, []).label == "A"
