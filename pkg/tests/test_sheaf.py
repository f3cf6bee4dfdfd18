import pytest
from hypothesis import given, strategies as st

from pyperverse import linalg
from pyperverse.algebra import algebra_B
from pyperverse.checks import roundtrip_checks
from pyperverse.complex import barycentric_subdivision
from pyperverse.documents import load_sheaf
from pyperverse.errors import BaseMismatchError, MembershipError, NotClosedError, NotComparableError
from pyperverse.perversity import Perversity, enumerate_perversities, top
from pyperverse.sheaf import (SObject, composite_map, constant_object, constant_sobject, hom_space,
                              identity_morphism, is_morphism, mutate, phi, phi_morphism, poset_leq,
                              projective_object, projective_support, psi, psi_morphism, random_object, restrict,
                              restrict_flags, sobject, tea_agreement, validate_sobject, validate_tea, zero_object)
from tests.conftest import FIXTURES, load_complex

TRIANGLE = load_complex("triangle.json")
PERVERSITIES = enumerate_perversities(2)


def fixture(name):
    return load_sheaf((FIXTURES / name).read_text())


def test_constant_object(triangle):
    obj = constant_object(triangle, top(2))
    assert validate_tea(obj)
    assert not obj.is_zero
    assert linalg.to_strings(composite_map(obj, triangle.from_key("abc"), triangle.from_key("a"))) == [["1"]]


def test_mutated_diamond():
    verdict = validate_tea(fixture("mutated_diamond.json"))
    assert not verdict
    assert verdict.witness == {"source": "abc", "mid1": "ab", "mid2": "ac", "target": "a", "residual": [["1"]]}
    with pytest.raises(MembershipError):
        phi(fixture("mutated_diamond.json"))


def test_incomparable(triangle):
    obj = constant_object(triangle, top(2))
    a, abc = triangle.from_key("a"), triangle.from_key("abc")
    assert poset_leq(triangle, abc, a, top(2))
    with pytest.raises(NotComparableError):
        composite_map(obj, a, abc)


def test_phi_of_interval_object(interval):
    obj = load_sheaf((FIXTURES / "interval_object.json").read_text(), interval)
    image = phi(obj)
    sub = image.subdivision
    assert validate_sobject(image)
    assert image.stalk(sub.flag("a", "ab")) == 1
    assert linalg.to_strings(image.map(sub.flag("ab"), sub.flag("a", "ab"))) == [["1", "1/2"]]
    assert linalg.to_strings(image.map(sub.flag("b"), sub.flag("b", "ab"))) == [["1", "0"], ["0", "1"]]
    assert psi(image).same_as(obj)


def test_psi_of_sobject():
    obj = fixture("interval_sobject.json")
    back = psi(obj)
    q = back.quiver
    assert {q.arrow_key(a): linalg.to_strings(m) for a, m in back.maps.items()} == {"ab->a": [["2"]], "ab->b": [["3"]]}
    assert phi(back).same_as(obj)


def test_broken_sobject():
    obj = fixture("broken_sobject.json")
    verdict = validate_sobject(obj)
    assert not verdict
    assert verdict.witness["reason"] == "identity"
    assert verdict.witness["arrow"] == "a->a<ab"
    with pytest.raises(MembershipError):
        psi(obj)


def test_constancy_violation(interval):
    sub = barycentric_subdivision(interval)
    obj = sobject(interval, top(1), {sub.flag("a"): 1, sub.flag("a", "ab"): 2}, {})
    verdict = validate_sobject(obj)
    assert not verdict
    assert verdict.witness["reason"] == "constancy"
    assert verdict.witness["anchor"] == "a"


def test_sobject_lives_on_subdivision(triangle):
    with pytest.raises(BaseMismatchError):
        SObject(constant_object(triangle, top(2)), triangle, top(2))
    assert validate_sobject(constant_sobject(triangle, top(2)))


@pytest.mark.parametrize("delta", PERVERSITIES, ids=str)
def test_round_trip_constant(triangle, delta):
    obj = constant_object(triangle, delta, 2)
    image = phi(obj)
    assert validate_sobject(image)
    assert psi(image).same_as(obj)
    assert image.same_as(constant_sobject(triangle, delta, 2))


@given(st.integers(0, 2 ** 31 - 1), st.sampled_from(PERVERSITIES))
def test_round_trip_random(seed, delta):
    obj = random_object(TRIANGLE, delta, seed)
    assert validate_tea(obj)
    image = phi(obj)
    assert validate_sobject(image)
    back = psi(image)
    assert back.same_as(obj)
    assert phi(back).same_as(image)


def roundtrip_cases():
    for name in ["interval.json", "triangle.json", "tetra_boundary.json"]:
        complex_ = load_complex(name)
        for delta in enumerate_perversities(complex_.dimension):
            yield pytest.param(complex_, delta, id=f"{name[:-5]}-{delta}")


@pytest.mark.parametrize("complex_,delta", roundtrip_cases())
def test_round_trips(complex_, delta):
    results, verdicts = roundtrip_checks(complex_, delta, samples=50, seed=2024)
    assert results["samples"] == len(results["total_dimensions"]) == 50
    assert any(results["total_dimensions"])
    for name, verdict in verdicts.items():
        assert verdict, (name, verdict.witness)


@given(st.integers(0, 2 ** 31 - 1), st.sampled_from(PERVERSITIES))
def test_restrict_commutes_with_composites(seed, delta):
    obj = random_object(TRIANGLE, delta, seed)
    part = restrict(obj, [TRIANGLE.from_key(k) for k in ("a", "b", "c", "ab", "ac")])
    q = part.quiver
    assert validate_tea(part)
    for u in q.nodes:
        for w in q.nodes:
            if q.leq(u, w):
                assert obj.quiver.leq(u, w)
                assert linalg.equal(composite_map(part, u, w), composite_map(obj, u, w))


@given(st.integers(0, 2 ** 31 - 1), st.integers(0, 2 ** 31 - 1), st.sampled_from(PERVERSITIES))
def test_hom_dimension_survives_phi(seed, other, delta):
    x, y = random_object(TRIANGLE, delta, seed), random_object(TRIANGLE, delta, other)
    assert hom_space(phi(x).data, phi(y).data).dimension == hom_space(x, y).dimension
    assert hom_space(phi(x).data, phi(x).data).dimension == hom_space(x, x).dimension


@given(st.integers(0, 2 ** 31 - 1))
def test_mutation_changes_one_entry(seed):
    obj = random_object(TRIANGLE, top(2), seed)
    mutated = mutate(obj, seed)
    changed = [a for a in obj.quiver.arrows if not linalg.equal(obj.maps[a], mutated.maps[a])]
    assert len(changed) <= 1
    assert (len(changed) == 1) == any(obj.stalks[u] and obj.stalks[w] for u, w in obj.quiver.arrows)


@pytest.mark.parametrize("delta", PERVERSITIES, ids=str)
def test_tea_matches_relations(triangle, delta):
    assert tea_agreement(triangle, delta, samples=1000, seed=11)


def test_hom_spaces(triangle):
    delta = Perversity((0, -1, 1))
    constant = constant_object(triangle, delta)
    space = hom_space(constant, constant)
    assert space.dimension == 1
    assert is_morphism(constant, constant, space.basis[0])
    assert hom_space(constant, zero_object(triangle, delta)).dimension == 0
    assert hom_space(zero_object(triangle, delta), constant).dimension == 0
    with pytest.raises(BaseMismatchError):
        hom_space(constant, constant_object(triangle, top(2)))


def test_morphisms_move_with_phi(interval):
    obj = load_sheaf((FIXTURES / "interval_object.json").read_text(), interval)
    identity = identity_morphism(obj)
    assert is_morphism(obj, obj, identity)
    image = phi(obj)
    lifted = phi_morphism(identity, interval, obj.perversity)
    assert lifted.same_as(identity_morphism(image.data))
    assert is_morphism(image.data, image.data, lifted)
    assert psi_morphism(lifted, interval).same_as(identity)
    assert hom_space(obj, obj).dimension == hom_space(image.data, image.data).dimension


def test_restrict(triangle):
    obj = constant_object(triangle, top(2))
    part = restrict(obj, [triangle.from_key(k) for k in ("a", "b", "ab")])
    assert len(part.stalks) == 3
    assert [part.quiver.arrow_key(a) for a in part.quiver.arrows] == ["ab->a", "ab->b"]


def test_restrict_flags():
    obj = fixture("interval_sobject.json")
    sub = obj.subdivision
    part = restrict_flags(obj, [sub.flag("a"), sub.flag("ab"), sub.flag("a", "ab")])
    assert {part.quiver.node_key(v): n for v, n in part.stalks.items()} == {"a": 1, "ab": 1, "a<ab": 1}
    assert validate_tea(part)
    with pytest.raises(NotClosedError):
        restrict_flags(obj, [sub.flag("a", "ab")])


def test_projective_objects(triangle):
    alg = algebra_B(triangle, top(2))
    abc = triangle.from_key("abc")
    assert projective_support(alg, abc) == triangle.simplices
    for v in triangle.simplices:
        obj = projective_object(alg, triangle, top(2), v)
        assert validate_tea(obj)
        assert set(projective_support(alg, v)) == {w for w in triangle.simplices if alg.quiver.leq(v, w)}
        assert all(obj.stalks[w] == 1 for w in projective_support(alg, v))
