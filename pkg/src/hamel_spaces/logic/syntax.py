"""Terms and formulas of the two-ordered valued language, with their canonical printer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterator, Union

from ..core.errors import FormulaTypeError
from ..core.linear import format_scalar

# --- Terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Inf:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Scale:
    coefficient: Fraction
    term: "Term"


@dataclass(frozen=True)
class Val:
    term: "Term"


Term = Union[Zero, Inf, Var, Add, Scale, Val]

# --- Formulas --------------------------------------------------------------


@dataclass(frozen=True)
class Verum:
    pass


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt:
    order: int
    left: Term
    right: Term


@dataclass(frozen=True)
class Le:
    order: int
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Atom = Union[Eq, Lt, Le]
Formula = Union[Verum, Falsum, Eq, Lt, Le, Not, And, Or, Implies, Exists, Forall]
ATOMS = (Eq, Lt, Le)
QUANTIFIERS = (Exists, Forall)


def conjunction(*parts: Formula) -> Formula:
    result: Formula = Verum()
    for part in parts:
        if isinstance(part, Falsum):
            return Falsum()
        if isinstance(part, Verum):
            continue
        result = part if isinstance(result, Verum) else And(result, part)
    return result


def disjunction(*parts: Formula) -> Formula:
    result: Formula = Falsum()
    for part in parts:
        if isinstance(part, Verum):
            return Verum()
        if isinstance(part, Falsum):
            continue
        result = part if isinstance(result, Falsum) else Or(result, part)
    return result


def negation(f: Formula) -> Formula:
    if isinstance(f, Verum):
        return Falsum()
    if isinstance(f, Falsum):
        return Verum()
    if isinstance(f, Not):
        return f.body
    return Not(f)


# --- Traversals ------------------------------------------------------------


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Add):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, (Scale, Val)):
        yield from subterms(t.term)


def term_variables(t: Term) -> FrozenSet[str]:
    return frozenset(s.name for s in subterms(t) if isinstance(s, Var))


def term_uses_valuation(t: Term) -> bool:
    return any(isinstance(s, Val) for s in subterms(t))


def atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, ATOMS):
        yield f
    elif isinstance(f, Not):
        yield from atoms(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from atoms(f.left)
        yield from atoms(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from atoms(f.body)


def free_variables(f: Formula) -> FrozenSet[str]:
    if isinstance(f, ATOMS):
        return term_variables(f.left) | term_variables(f.right)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_variables(f.body) - {f.var}
    return frozenset()


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, QUANTIFIERS):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return True


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, QUANTIFIERS):
        return 1 + quantifier_depth(f.body)
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or, Implies)):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 0


def uses_valuation(f: Formula) -> bool:
    return any(
        term_uses_valuation(a.left) or term_uses_valuation(a.right) for a in atoms(f)
    )


def check_formula(f: Formula, orders: int, valued: bool) -> None:
    """Rejects order indices beyond `orders` and, unless `valued`, any use of v."""
    for atom in atoms(f):
        if isinstance(atom, (Lt, Le)) and atom.order >= orders:
            raise FormulaTypeError(
                f"order <{atom.order} used where only {orders} orders exist"
            )
    if not valued and uses_valuation(f):
        raise FormulaTypeError("v(...) is only allowed over hamel-mode structures")


def substitute_term(t: Term, name: str, replacement: Term) -> Term:
    if isinstance(t, Var):
        return replacement if t.name == name else t
    if isinstance(t, Add):
        return Add(
            substitute_term(t.left, name, replacement),
            substitute_term(t.right, name, replacement),
        )
    if isinstance(t, Scale):
        return Scale(t.coefficient, substitute_term(t.term, name, replacement))
    if isinstance(t, Val):
        return Val(substitute_term(t.term, name, replacement))
    return t


def substitute(f: Formula, name: str, replacement: Term) -> Formula:
    """Replaces free occurrences of `name`; `replacement` must be closed."""
    if isinstance(f, Eq):
        return Eq(
            substitute_term(f.left, name, replacement),
            substitute_term(f.right, name, replacement),
        )
    if isinstance(f, (Lt, Le)):
        return type(f)(
            f.order,
            substitute_term(f.left, name, replacement),
            substitute_term(f.right, name, replacement),
        )
    if isinstance(f, Not):
        return Not(substitute(f.body, name, replacement))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(
            substitute(f.left, name, replacement),
            substitute(f.right, name, replacement),
        )
    if isinstance(f, QUANTIFIERS):
        if f.var == name:
            return f
        return type(f)(f.var, substitute(f.body, name, replacement))
    return f


# --- Printing --------------------------------------------------------------


def print_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Inf):
        return "inf"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Val):
        return f"v({print_term(t.term)})"
    if isinstance(t, Scale):
        inner = t.term
        if isinstance(inner, (Var, Inf, Val)):
            return f"{format_scalar(t.coefficient)}*{print_term(inner)}"
        return f"{format_scalar(t.coefficient)}*({print_term(inner)})"
    right = print_term(t.right)
    if isinstance(t.right, Add):
        right = f"({right})"
    return f"{print_term(t.left)} + {right}"


_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4}
_SYMBOL = {Implies: "->", Or: "|", And: "&"}


def _relation(atom: Atom) -> str:
    if isinstance(atom, Eq):
        return "="
    return f"<{atom.order}" if isinstance(atom, Lt) else f"<={atom.order}"


def _operand(f: Formula, parent_level: int, tight: bool) -> str:
    text = print_formula(f)
    if isinstance(f, QUANTIFIERS):
        return f"({text})"
    level = _PRECEDENCE.get(type(f))
    if level is not None and (level < parent_level or (tight and level == parent_level)):
        return f"({text})"
    return text


def print_formula(f: Formula) -> str:
    if isinstance(f, Verum):
        return "true"
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, ATOMS):
        return f"{print_term(f.left)} {_relation(f)} {print_term(f.right)}"
    if isinstance(f, Not):
        return "!" + _operand(f.body, _PRECEDENCE[Not], False)
    if isinstance(f, QUANTIFIERS):
        letter = "E" if isinstance(f, Exists) else "A"
        body = print_formula(f.body)
        if isinstance(f.body, (And, Or, Implies)):
            body = f"({body})"
        return f"{letter} {f.var}. {body}"
    level = _PRECEDENCE[type(f)]
    if isinstance(f, Implies):
        # right associative
        left = _operand(f.left, level, True)
        right = print_formula(f.right) if isinstance(f.right, QUANTIFIERS) else _operand(
            f.right, level, False
        )
    else:
        left = _operand(f.left, level, False)
        right = _operand(f.right, level, True)
    return f"{left} {_SYMBOL[type(f)]} {right}"
