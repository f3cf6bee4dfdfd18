from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .errors import PerversityError, ValidationError


@dataclass(frozen=True)
class Perversity:
    values: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __call__(self, dim: int) -> int:
        return self.values[dim]

    def __neg__(self) -> "Perversity":
        return negate(self)

    def __str__(self):
        return ",".join(str(v) for v in self.values)

    @property
    def min(self) -> int:
        return min(self.values)

    @property
    def max(self) -> int:
        return max(self.values)

    @property
    def levels(self) -> range:
        return range(self.min, self.max + 1)

    def level(self, simplex) -> int:
        """delta of a simplex is delta of its dimension."""
        return self.values[simplex.dim]

    @property
    def is_top(self) -> bool:
        return self.values == tuple(range(self.n + 1))

    @property
    def is_bottom(self) -> bool:
        return self.values == tuple(-k for k in range(self.n + 1))


@dataclass(frozen=True)
class ClassicalPerversity:
    values: Tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 0:
            raise ValidationError("A classical perversity starts with p(0) = 0.")
        for k in range(1, len(self.values)):
            if self.values[k] - self.values[k - 1] not in (0, 1):
                raise ValidationError(f"p({k}) - p({k - 1}) must be 0 or 1.")


def validate_perversity(values: Sequence[int]) -> Perversity:
    values = tuple(values)
    if not values:
        raise ValidationError("A perversity needs at least delta(0).")
    if values[0] != 0:
        raise PerversityError(f"delta(0) = {values[0]}, expected 0", 0, "origin")
    low = high = 0
    for k, v in enumerate(values[1:], start=1):
        if v == high + 1:
            high = v
        elif v == low - 1:
            low = v
        else:
            raise PerversityError(f"delta({k}) = {v} is neither max+1 = {high + 1} nor min-1 = {low - 1}",
                                  k, "interval")
    return Perversity(values)


def top(n: int) -> Perversity:
    return Perversity(tuple(range(n + 1)))


def bottom(n: int) -> Perversity:
    return Perversity(tuple(-k for k in range(n + 1)))


def negate(delta: Perversity) -> Perversity:
    return Perversity(tuple(-v for v in delta.values))


def to_classical(delta: Perversity) -> ClassicalPerversity:
    """p increases exactly at the down-steps of delta."""
    p = [0]
    low = 0
    for v in delta.values[1:]:
        if v < low:
            low = v
            p.append(p[-1] + 1)
        else:
            p.append(p[-1])
    return ClassicalPerversity(tuple(p))


def from_classical(p: ClassicalPerversity) -> Perversity:
    values = [0]
    low = high = 0
    for k in range(1, len(p.values)):
        if p.values[k] > p.values[k - 1]:
            low -= 1
            values.append(low)
        else:
            high += 1
            values.append(high)
    return Perversity(tuple(values))


def enumerate_perversities(n: int) -> List[Perversity]:
    if n < 0:
        raise ValidationError("Dimension must be non-negative.")
    found = [((0,), 0, 0)]
    for _ in range(n):
        found = [step
                 for values, low, high in found
                 for step in ((values + (high + 1,), low, high + 1), (values + (low - 1,), low - 1, high))]
    return [Perversity(values) for values, _, _ in found]


def parse_perversity(text: Union[str, Sequence[int]], n: int) -> Perversity:
    """Accepts ``top``, ``bottom``, ``0,-1,1`` or a sequence; must cover exactly 0..n."""
    if isinstance(text, str):
        name = text.strip().lower()
        if name == "top":
            return top(n)
        if name == "bottom":
            return bottom(n)
        try:
            text = [int(v) for v in name.split(",")]
        except ValueError:
            raise ValidationError(f"Cannot parse perversity {text!r}") from None
    delta = validate_perversity(text)
    if delta.n != n:
        raise ValidationError(f"Perversity has {delta.n + 1} values, the complex needs {n + 1}.")
    return delta
