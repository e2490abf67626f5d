"""Leading-term model: an independent second implementation of v and <_1.

Elements are finite combinations of basis elements e_q indexed by rationals.
The value of an element is the basis element of least index in its support and
its sign in <_1 is the sign of that coefficient. Order 0 is only carried on
values (single basis elements) and infinity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .errors import ExpressionSyntaxError, FormulaTypeError, OracleError, UnboundVariableError
from .linear import INFINITY, Ordering, _Infinity, format_scalar, parse_scalar


@dataclass(frozen=True)
class LeadVector:
    """sum c_q * e_q, keyed by increasing index q."""

    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Dict[Fraction, Fraction]) -> "LeadVector":
        return cls(tuple((Fraction(q), Fraction(c)) for q, c in sorted(mapping.items()) if c != 0))

    @classmethod
    def basis(cls, index, coefficient=1) -> "LeadVector":
        return cls.from_mapping({Fraction(index): Fraction(coefficient)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_basis_element(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    @property
    def lead(self) -> Tuple[Fraction, Fraction]:
        return self.terms[0]

    def combine(self, c1, other: "LeadVector", c2) -> "LeadVector":
        result = {q: c1 * c for q, c in self.terms}
        for q, c in other.terms:
            result[q] = result.get(q, Fraction(0)) + c2 * c
        return LeadVector.from_mapping(result)

    def __add__(self, other: "LeadVector") -> "LeadVector":
        return self.combine(1, other, 1)

    def __sub__(self, other: "LeadVector") -> "LeadVector":
        return self.combine(1, other, -1)

    def scale(self, c) -> "LeadVector":
        return self.combine(Fraction(c), LeadVector(), 0)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for q, c in self.terms:
            name = f"e{q}" if q.denominator == 1 and q >= 0 else f"e({format_scalar(q)})"
            parts.append(name if c == 1 else f"{format_scalar(c)}*{name}")
        return " + ".join(parts)


LeadPoint = Union[LeadVector, _Infinity]


def lead_valuate(x: LeadPoint) -> LeadPoint:
    if x is INFINITY or x.is_zero:
        return INFINITY
    return LeadVector.basis(x.lead[0])


def lead_sign1(x: LeadVector) -> Ordering:
    if x.is_zero:
        return Ordering.EQUAL
    return Ordering.of(x.lead[1], 0)


def lead_compare1(x: LeadPoint, y: LeadPoint) -> Ordering:
    if x is INFINITY or y is INFINITY:
        return Ordering.of(x is INFINITY, y is INFINITY)
    return lead_sign1(x - y)


def lead_value_compare(a: LeadPoint, b: LeadPoint) -> Ordering:
    """Index order on basis elements, with infinity on top."""
    for value in (a, b):
        if value is not INFINITY and not value.is_basis_element:
            raise OracleError(f"{value} is not a single basis element")
    if a is INFINITY or b is INFINITY:
        return Ordering.of(a is INFINITY, b is INFINITY)
    return Ordering.of(a.lead[0], b.lead[0])


_BASIS_NAME = re.compile(r"^e(?:(\d+)|\((-?\d+(?:/\d+)?)\))$")


def basis_index(name: str) -> Optional[Fraction]:
    """Index q of a basis-element name `e3` or `e(1/2)`; None for other names."""
    match = _BASIS_NAME.match(name)
    if match is None:
        return None
    return parse_scalar(match.group(1) or match.group(2))


class OracleStructure:
    """The leading-term model as a structure for quantifier-free evaluation."""

    orders = 2
    valued = True

    def zero(self) -> LeadVector:
        return LeadVector()

    def constant(self, name: str) -> Optional[LeadVector]:
        index = basis_index(name)
        return None if index is None else LeadVector.basis(index)

    def combine(self, c1, x: LeadPoint, c2, y: LeadPoint) -> LeadPoint:
        if x is INFINITY or y is INFINITY:
            return INFINITY
        return x.combine(c1, y, c2)

    def compare(self, x: LeadPoint, y: LeadPoint, order: int) -> Ordering:
        if order == 1:
            return lead_compare1(x, y)
        if order == 0:
            return lead_value_compare(x, y)
        raise FormulaTypeError(f"order {order} does not exist in the leading-term model")

    def valuate(self, x: LeadPoint) -> LeadPoint:
        return lead_valuate(x)


def parse_lead_vector(text: str) -> LeadPoint:
    """Parses `2*e1 + -3*e(1/2)`, `0` or `inf` into an oracle point."""
    # imported here: logic depends on core, not the other way round
    from ..logic.evaluate import evaluate_term
    from ..logic.parser import parse_term

    try:
        return evaluate_term(OracleStructure(), parse_term(text))
    except UnboundVariableError as error:
        raise ExpressionSyntaxError(
            f"'{error.name}' is not a basis element name (e<int> or e(<rational>))", text
        ) from None
