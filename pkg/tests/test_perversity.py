import pytest
from hypothesis import given, strategies as st

from pyperverse.errors import PerversityError, ValidationError
from pyperverse.perversity import (ClassicalPerversity, Perversity, bottom, enumerate_perversities, from_classical,
                                   parse_perversity, to_classical, top, validate_perversity)


def test_validate():
    assert validate_perversity([0, -1, 1]) == Perversity((0, -1, 1))
    assert validate_perversity([0, 1, 2, -1]).levels == range(-1, 3)


@pytest.mark.parametrize("values,index,clause", [
    ([1], 0, "origin"),
    ([0, 2], 1, "interval"),
    ([0, 1, 1], 2, "interval"),
    ([0, -1, 0], 2, "interval"),
])
def test_invalid(values, index, clause):
    with pytest.raises(PerversityError) as e:
        validate_perversity(values)
    assert e.value.index == index
    assert e.value.clause == clause


def test_enumerate():
    assert enumerate_perversities(0) == [Perversity((0,))]
    assert enumerate_perversities(1) == [Perversity((0, 1)), Perversity((0, -1))]
    assert [p.values for p in enumerate_perversities(2)] == [(0, 1, 2), (0, 1, -1), (0, -1, 1), (0, -1, -2)]
    with pytest.raises(ValidationError):
        enumerate_perversities(-1)


@pytest.mark.parametrize("n", range(6))
def test_enumerate_counts(n):
    found = enumerate_perversities(n)
    assert len(found) == 2 ** n
    assert len(set(found)) == 2 ** n
    for delta in found:
        assert validate_perversity(delta.values) == delta


def test_extremes():
    assert top(3).is_top and not top(3).is_bottom
    assert -top(3) == bottom(3)
    assert bottom(2).values == (0, -1, -2)
    assert to_classical(top(3)) == ClassicalPerversity((0, 0, 0, 0))
    assert to_classical(bottom(3)) == ClassicalPerversity((0, 1, 2, 3))


@given(st.integers(0, 7).flatmap(lambda n: st.sampled_from(enumerate_perversities(n))))
def test_classical_round_trip(delta):
    assert from_classical(to_classical(delta)) == delta
    assert validate_perversity((-delta).values) == -delta


def test_classical_rejects_jumps():
    with pytest.raises(ValidationError):
        ClassicalPerversity((0, 2))
    with pytest.raises(ValidationError):
        ClassicalPerversity((1,))


def test_parse():
    assert parse_perversity("top", 2) == top(2)
    assert parse_perversity(" Bottom ", 1) == bottom(1)
    assert parse_perversity("0,-1,1", 2) == Perversity((0, -1, 1))
    assert parse_perversity([0, 1], 1) == top(1)
    with pytest.raises(ValidationError):
        parse_perversity("0,1", 2)
    with pytest.raises(ValidationError):
        parse_perversity("middle", 2)
    with pytest.raises(PerversityError):
        parse_perversity("0,2,1", 2)
