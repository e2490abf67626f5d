"""Linear normal forms of Val-free terms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Tuple

from ..core.errors import FormulaTypeError
from ..core.linear import format_scalar
from .syntax import Add, Inf, Scale, Term, Val, Var, Zero


@dataclass(frozen=True)
class LinearForm:
    """sum c_i * x_i, or infinity.

    `occurs` keeps every variable the source term mentions, including ones whose
    coefficients cancelled: such a term is still infinite when that variable is.
    """

    terms: Tuple[Tuple[str, Fraction], ...] = ()
    occurs: FrozenSet[str] = frozenset()
    infinite: bool = False

    @classmethod
    def from_mapping(
        cls, mapping: Dict[str, Fraction], occurs: FrozenSet[str] = frozenset(), infinite=False
    ) -> "LinearForm":
        if infinite:
            return cls((), frozenset(occurs), True)
        terms = tuple((name, Fraction(c)) for name, c in sorted(mapping.items()) if c != 0)
        return cls(terms, frozenset(occurs) | {name for name, _ in terms}, False)

    @classmethod
    def variable(cls, name: str) -> "LinearForm":
        return cls.from_mapping({name: Fraction(1)})

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.terms)

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.infinite and not self.terms

    def coefficient(self, name: str) -> Fraction:
        return self.as_dict().get(name, Fraction(0))

    def combine(self, c1, other: "LinearForm", c2) -> "LinearForm":
        occurs = self.occurs | other.occurs
        if self.infinite or other.infinite:
            return LinearForm((), occurs, True)
        result = {name: c1 * c for name, c in self.terms}
        for name, c in other.terms:
            result[name] = result.get(name, Fraction(0)) + c2 * c
        return LinearForm.from_mapping(result, occurs)

    def scale(self, c) -> "LinearForm":
        if self.infinite:
            return self
        return LinearForm.from_mapping({n: c * v for n, v in self.terms}, self.occurs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return self.combine(1, other, 1)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self.combine(1, other, -1)

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def without(self, name: str) -> "LinearForm":
        return LinearForm.from_mapping(
            {n: c for n, c in self.terms if n != name}, self.occurs - {name}
        )

    def substitute(self, name: str, replacement: "LinearForm") -> "LinearForm":
        c = self.coefficient(name)
        return self.without(name).combine(1, replacement, c)

    def split_signs(self) -> Tuple["LinearForm", "LinearForm"]:
        """(P, N) with self = P - N and only positive coefficients in P and N."""
        positive = {n: c for n, c in self.terms if c > 0}
        negative = {n: -c for n, c in self.terms if c < 0}
        return LinearForm.from_mapping(positive), LinearForm.from_mapping(negative)

    def to_term(self) -> Term:
        if self.infinite:
            return Inf()
        result: Term = Zero()
        for name, c in self.terms:
            summand: Term = Var(name) if c == 1 else Scale(c, Var(name))
            result = summand if isinstance(result, Zero) else Add(result, summand)
        return result

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        if not self.terms:
            return "0"
        return " + ".join(
            name if c == 1 else f"{format_scalar(c)}*{name}" for name, c in self.terms
        )


def normalize_term(t: Term) -> LinearForm:
    if isinstance(t, Zero):
        return LinearForm()
    if isinstance(t, Inf):
        return LinearForm(infinite=True)
    if isinstance(t, Var):
        return LinearForm.variable(t.name)
    if isinstance(t, Add):
        return normalize_term(t.left) + normalize_term(t.right)
    if isinstance(t, Scale):
        return normalize_term(t.term).scale(t.coefficient)
    if isinstance(t, Val):
        raise FormulaTypeError("v(...) has no linear normal form")
    raise TypeError(f"not a term: {t!r}")
