import pytest

from pyperverse.checks import (algebra_checks, census_checks, dual_checks, extdual_checks, koszul_checks,
                               opposite_checks, projective_checks, quiver_checks, roundtrip_checks, sample_seeds,
                               sign_ledger, subdivision_checks, tea_checks, triangulation_checks)
from pyperverse.perversity import Perversity, enumerate_perversities, top


def all_ok(verdicts):
    return {name: v.witness for name, v in verdicts.items() if not v}


def test_census(boundary):
    results, verdicts = census_checks(boundary)
    assert results["f_vector"] == [4, 6, 4]
    assert results["euler_characteristic"] == 2
    assert results["components"] == 1
    assert not all_ok(verdicts)


def test_subdivision(triangle):
    results, verdicts = subdivision_checks(triangle)
    assert results["flags"] == 25
    assert results["by_length"] == {"1": 7, "2": 12, "3": 6}
    assert results["members"][:4] == ["a", "a<ab", "a<ab<abc", "a<ac"]
    assert not all_ok(verdicts)


@pytest.mark.parametrize("delta", enumerate_perversities(2), ids=str)
def test_structure(triangle, delta):
    for results, verdicts in [triangulation_checks(triangle, delta, clamp=True), quiver_checks(triangle, delta),
                              algebra_checks(triangle, delta, "A"), algebra_checks(triangle, delta, "B"),
                              dual_checks(triangle, delta), opposite_checks(triangle, delta),
                              projective_checks(triangle, delta)]:
        assert not all_ok(verdicts)


def test_triangulation_results(triangle):
    results, verdicts = triangulation_checks(triangle, top(2))
    assert results["anchors"]["abc"]["flags"] == 13
    assert "open_simplices" in verdicts
    results, verdicts = triangulation_checks(triangle, Perversity((0, -1, 1)), clamp=True)
    assert results["skeleta"] == {"-2": 0, "-1": 3, "0": 12, "1": 25, "2": 25}
    assert "open_simplices" not in verdicts


def test_algebra_results(boundary):
    results, _ = algebra_checks(boundary, top(2), "A")
    assert results["graded_dimensions"] == [14, 24, 12, 0]
    assert results["total_dimension"] == 50
    assert results["definitive"]
    results, _ = algebra_checks(boundary, top(2), "B", max_degree=1)
    assert results["graded_dimensions"] == [14, 24]
    assert not results["definitive"]


def test_homological(triangle):
    for results, verdicts in [koszul_checks(triangle, top(2), "A"), koszul_checks(triangle, top(2), "B"),
                              extdual_checks(triangle, top(2))]:
        assert not all_ok(verdicts)
    results, _ = koszul_checks(triangle, top(2), "A")
    assert results["global_dimension"] == 2


def test_sampled(interval, triangle):
    results, verdicts = roundtrip_checks(triangle, top(2), samples=4, seed=5)
    assert not all_ok(verdicts)
    assert len(results["total_dimensions"]) == 4
    assert roundtrip_checks(triangle, top(2), samples=4, seed=5)[0] == results
    results, verdicts = tea_checks(interval, top(1), samples=4, seed=1)
    assert not all_ok(verdicts)


def test_seeds_are_reproducible():
    assert sample_seeds(3, 5) == sample_seeds(3, 5)
    assert len(set(sample_seeds(3, 5))) == 5


def test_sign_ledger():
    ledger = sign_ledger()
    assert {"object": "quadratic dual of A(X, delta)", "uses": "-delta, compared with B(X, -delta)"} in ledger
