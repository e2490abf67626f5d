"""Exact scalars, sparse formal linear combinations and the absorbing point at infinity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .errors import ExpressionSyntaxError, ModelMismatchError, ScalarDivisionError

Scalar = Fraction
GenId = int


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        return cls((a > b) - (a < b))

    def reversed(self) -> "Ordering":
        return Ordering(-self.value)


# --- Scalars ---------------------------------------------------------------


def to_scalar(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    return Fraction(value)


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    if b == 0:
        raise ScalarDivisionError(f"division of {format_scalar(a)} by zero")
    return a / b


def compare_scalars(a: Scalar, b: Scalar) -> Ordering:
    return Ordering.of(a, b)


def parse_scalar(text: str) -> Fraction:
    """Parses `int` or `int/posint`."""
    raw = text.strip()
    numerator, _, denominator = raw.partition("/")
    if not numerator.lstrip("-").isdigit() or (denominator and not denominator.isdigit()):
        raise ExpressionSyntaxError(f"invalid scalar '{text}'", text)
    if denominator and int(denominator) == 0:
        raise ScalarDivisionError(f"zero denominator in '{text}'")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_scalar(c: Scalar) -> str:
    return str(c)


# --- Model lineage ---------------------------------------------------------

_token_counter = itertools.count(1)


@dataclass(frozen=True, eq=False)
class ModelToken:
    """Identity of one model; extensions point back at the model they extend."""

    ident: int
    parent: Optional["ModelToken"] = None

    @classmethod
    def fresh(cls, parent: Optional["ModelToken"] = None) -> "ModelToken":
        return cls(next(_token_counter), parent)

    def descends_from(self, other: "ModelToken") -> bool:
        node: Optional[ModelToken] = self
        while node is not None:
            if node is other:
                return True
            node = node.parent
        return False

    def __repr__(self) -> str:
        return f"ModelToken({self.ident})"


def merge_owners(
    a: Optional[ModelToken], b: Optional[ModelToken]
) -> Optional[ModelToken]:
    if a is None or a is b:
        return b
    if b is None:
        return a
    if a.descends_from(b):
        return a
    if b.descends_from(a):
        return b
    raise ModelMismatchError(f"vectors of unrelated models {a!r} and {b!r} were combined")


# --- Vectors ---------------------------------------------------------------


@dataclass(frozen=True)
class Vector:
    """Sparse combination of generators, keyed by GenId in increasing order."""

    terms: Tuple[Tuple[GenId, Fraction], ...] = ()
    owner: Optional[ModelToken] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[GenId, Union[int, Fraction]], owner: Optional[ModelToken] = None
    ) -> "Vector":
        terms = tuple(
            (gen, c if type(c) is Fraction else Fraction(c))
            for gen, c in sorted(mapping.items())
            if c != 0
        )
        return cls(terms, owner)

    @classmethod
    def unit(
        cls, gen: GenId, owner: Optional[ModelToken] = None, coefficient=1
    ) -> "Vector":
        return cls.from_mapping({gen: coefficient}, owner)

    @cached_property
    def _mapping(self) -> Dict[GenId, Fraction]:
        return dict(self.terms)

    def as_dict(self) -> Dict[GenId, Fraction]:
        return dict(self._mapping)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> Tuple[GenId, ...]:
        return tuple(gen for gen, _ in self.terms)

    @property
    def top(self) -> Optional[GenId]:
        return self.terms[-1][0] if self.terms else None

    def coefficient(self, gen: GenId) -> Fraction:
        return self._mapping.get(gen, Fraction(0))

    def split_top(self) -> Tuple["Vector", GenId, Fraction]:
        """Writes self as rest + c*g where g is the highest generator of the support."""
        gen, c = self.terms[-1]
        return Vector(self.terms[:-1], self.owner), gen, c

    def scale(self, c: Union[int, Fraction]) -> "Vector":
        c = to_scalar(c)
        if c == 0:
            return Vector((), self.owner)
        return Vector(tuple((gen, c * v) for gen, v in self.terms), self.owner)

    def with_owner(self, owner: Optional[ModelToken]) -> "Vector":
        return Vector(self.terms, merge_owners(self.owner, owner))

    def __add__(self, other: "Vector") -> "Vector":
        return vec_combine(_ONE, self, _ONE, other)

    def __sub__(self, other: "Vector") -> "Vector":
        return vec_combine(_ONE, self, _MINUS_ONE, other)

    def __neg__(self) -> "Vector":
        return self.scale(-1)

    def __mul__(self, c: Union[int, Fraction]) -> "Vector":
        return self.scale(c)

    __rmul__ = __mul__

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for gen, c in self.terms:
            name = names[gen] if names is not None else f"g{gen}"
            parts.append(name if c == 1 else f"{format_scalar(c)}*{name}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()


ZERO = Vector()
_ONE = Fraction(1)
_MINUS_ONE = Fraction(-1)


def vec_combine(c1: Scalar, x: Vector, c2: Scalar, y: Vector) -> Vector:
    """Returns c1*x + c2*y without zero coefficients."""
    owner = merge_owners(x.owner, y.owner)
    result: Dict[GenId, Fraction] = {}
    if c1 != 0:
        for gen, c in x.terms:
            result[gen] = c if c1 == 1 else c1 * c
    if c2 != 0:
        for gen, c in y.terms:
            term = c if c2 == 1 else c2 * c
            result[gen] = result[gen] + term if gen in result else term
    return Vector(tuple((gen, c) for gen, c in sorted(result.items()) if c != 0), owner)


# --- Points and bounds -----------------------------------------------------


class _Infinity:
    _instance: Optional["_Infinity"] = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Point = Union[Vector, _Infinity]


def is_infinite(p: Point) -> bool:
    return p is INFINITY


def point_combine(c1: Scalar, x: Point, c2: Scalar, y: Point) -> Point:
    if x is INFINITY or y is INFINITY:
        return INFINITY
    return vec_combine(c1, x, c2, y)


def format_point(p: Point, names: Optional[Sequence[str]] = None) -> str:
    return "inf" if p is INFINITY else p.format(names)


class BoundEnd(Enum):
    MINUS_INFINITY = "-inf"
    PLUS_INFINITY = "+inf"

    def __str__(self) -> str:
        return self.value


MINUS_INFINITY = BoundEnd.MINUS_INFINITY
PLUS_INFINITY = BoundEnd.PLUS_INFINITY

Bound = Union[Vector, BoundEnd]
Interval = Tuple[Bound, Bound]
UNBOUNDED: Interval = (MINUS_INFINITY, PLUS_INFINITY)


def format_bound(b: Bound, names: Optional[Sequence[str]] = None) -> str:
    return str(b) if isinstance(b, BoundEnd) else b.format(names)
