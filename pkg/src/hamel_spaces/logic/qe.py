"""Quantifier elimination and sentence decision for the multi-ordered reduct.

Each existential is eliminated from the quantifier-free result of its body:
the body is put in disjunctive normal form over literals `L = 0` and
`L <_i 0`, an equality mentioning the variable is solved and substituted,
otherwise the variable is projected out of every order separately by
Fourier-Motzkin. Projecting the orders separately is sound because the orders
are independent and each one is dense without endpoints.
"""

from __future__ import annotations

import functools
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Union

from ..core.errors import FormulaTypeError
from .linear_form import LinearForm, normalize_term
from .syntax import (
    ATOMS,
    And,
    Atom,
    Eq,
    Exists,
    Falsum,
    Forall,
    Formula,
    Implies,
    Inf,
    Lt,
    Not,
    Or,
    Verum,
    check_formula,
    conjunction,
    disjunction,
    free_variables,
    negation,
    print_formula,
    substitute,
)

logger = logging.getLogger(__name__)


class Domain(str, Enum):
    """What quantifiers range over: the space itself, or the space with infinity."""

    FINITE = "finite"
    EXTENDED = "extended"


@dataclass(frozen=True)
class Literal:
    """`form = 0` (kind "eq") or `form <_order 0` (kind "lt")."""

    kind: str
    order: int
    form: LinearForm

    def to_atom(self) -> Atom:
        positive, negative = self.form.split_signs()
        if self.kind == "eq":
            return Eq(positive.to_term(), negative.to_term())
        return Lt(self.order, positive.to_term(), negative.to_term())

    @property
    def key(self) -> str:
        return f"{self.kind}{self.order}:{self.form}"


LiteralOrTruth = Union[Literal, bool]
Conjunct = FrozenSet[Literal]


def make_literal(kind: str, order: int, form: LinearForm) -> LiteralOrTruth:
    """Builds a literal, folding it to a truth value when the form is constant."""
    form = LinearForm.from_mapping(form.as_dict())
    if not form.terms:
        return kind == "eq"
    if kind == "eq":
        if form.terms[0][1] < 0:
            form = -form
        return Literal("eq", 0, form)
    return Literal("lt", order, form)


def _fold_infinite(atom: Atom, left: LinearForm, right: LinearForm) -> bool:
    # free variables are finite, so only an explicit inf makes a side infinite
    if isinstance(atom, Eq):
        return left.infinite and right.infinite
    if isinstance(atom, Lt):
        return not left.infinite
    return right.infinite


def _atom_alternatives(atom: Atom, positive: bool) -> List[List[LiteralOrTruth]]:
    """The atom (or its negation) as a disjunction of conjunctions of literals."""
    left, right = normalize_term(atom.left), normalize_term(atom.right)
    if left.infinite or right.infinite:
        truth = _fold_infinite(atom, left, right) == positive
        return [[True]] if truth else []
    diff = left - right
    if isinstance(atom, Eq):
        if positive:
            return [[make_literal("eq", 0, diff)]]
        return [[make_literal("lt", 0, diff)], [make_literal("lt", 0, -diff)]]
    order = atom.order
    strict = isinstance(atom, Lt)
    if strict == positive:
        # x < y, or not (y <= x)
        form = diff if positive else -diff
        return [[make_literal("lt", order, form)]]
    if positive:
        # x <= y
        return [[make_literal("lt", order, diff)], [make_literal("eq", 0, diff)]]
    # not (x < y)
    return [[make_literal("lt", order, -diff)], [make_literal("eq", 0, diff)]]


def _clean(raw: List[List[LiteralOrTruth]]) -> List[Conjunct]:
    result = []
    for alternative in raw:
        if any(item is False for item in alternative):
            continue
        result.append(frozenset(item for item in alternative if isinstance(item, Literal)))
    return result


def _product(left: List[Conjunct], right: List[Conjunct]) -> List[Conjunct]:
    return [a | b for a in left for b in right]


def _dedup(conjuncts: List[Conjunct]) -> List[Conjunct]:
    seen = set()
    result = []
    for conjunct in conjuncts:
        if conjunct not in seen:
            seen.add(conjunct)
            result.append(conjunct)
    return result


def to_dnf(f: Formula, positive: bool = True) -> List[Conjunct]:
    """Disjunctive normal form of a quantifier-free formula, or of its negation."""
    if isinstance(f, Verum):
        return [frozenset()] if positive else []
    if isinstance(f, Falsum):
        return [] if positive else [frozenset()]
    if isinstance(f, ATOMS):
        return _clean(_atom_alternatives(f, positive))
    if isinstance(f, Not):
        return to_dnf(f.body, not positive)
    if isinstance(f, Implies):
        if positive:
            return _dedup(to_dnf(f.left, False) + to_dnf(f.right, True))
        return _dedup(_product(to_dnf(f.left, True), to_dnf(f.right, False)))
    if isinstance(f, (And, Or)):
        left, right = to_dnf(f.left, positive), to_dnf(f.right, positive)
        if isinstance(f, And) == positive:
            return _dedup(_product(left, right))
        return _dedup(left + right)
    raise FormulaTypeError(f"quantifier inside a matrix: {print_formula(f)}")


def conjuncts_to_formula(conjuncts: List[Conjunct]) -> Formula:
    parts = []
    for conjunct in _dedup(conjuncts):
        literals = sorted(conjunct, key=lambda lit: lit.key)
        parts.append(conjunction(*(lit.to_atom() for lit in literals)))
    return disjunction(*parts)


def _project(var: str, conjunct: Conjunct) -> Optional[Conjunct]:
    """Eliminates `var` from one conjunct; None when the residue is inconsistent."""
    literals = sorted(conjunct, key=lambda lit: lit.key)
    residue: List[Literal] = []

    def keep(item: LiteralOrTruth) -> bool:
        if item is False:
            return False
        if isinstance(item, Literal):
            residue.append(item)
        return True

    solvable = [lit for lit in literals if lit.kind == "eq" and lit.form.coefficient(var) != 0]
    if solvable:
        pivot = solvable[0]
        c = pivot.form.coefficient(var)
        solution = pivot.form.without(var).scale(-1 / c)
        for lit in literals:
            if lit is pivot:
                continue
            if not keep(make_literal(lit.kind, lit.order, lit.form.substitute(var, solution))):
                return None
        return frozenset(residue)

    lower: Dict[int, List[LinearForm]] = defaultdict(list)
    upper: Dict[int, List[LinearForm]] = defaultdict(list)
    for lit in literals:
        c = lit.form.coefficient(var)
        if c == 0:
            residue.append(lit)
            continue
        bound = lit.form.without(var).scale(-1 / c)
        (upper if c > 0 else lower)[lit.order].append(bound)
    for order in sorted(set(lower) & set(upper)):
        for low in lower[order]:
            for high in upper[order]:
                if not keep(make_literal("lt", order, low - high)):
                    return None
    return frozenset(residue)


def eliminate_exists(var: str, matrix: Formula) -> Formula:
    """Quantifier-free equivalent of `E var. matrix` over finite elements."""
    if var not in free_variables(matrix):
        return matrix
    conjuncts = to_dnf(matrix)
    logger.debug("eliminating %s from %d conjuncts", var, len(conjuncts))
    residues = [r for r in (_project(var, c) for c in conjuncts) if r is not None]
    return conjuncts_to_formula(residues)


def _fold_atom(atom: Atom) -> Formula:
    left, right = normalize_term(atom.left), normalize_term(atom.right)
    if left.infinite or right.infinite:
        return Verum() if _fold_infinite(atom, left, right) else Falsum()
    diff = left - right
    if diff.terms:
        return atom
    return Verum() if not isinstance(atom, Lt) else Falsum()


def _implication(left: Formula, right: Formula) -> Formula:
    if isinstance(left, Falsum) or isinstance(right, Verum):
        return Verum()
    if isinstance(left, Verum):
        return right
    if isinstance(right, Falsum):
        return negation(left)
    return Implies(left, right)


def _eliminate(f: Formula, domain: Domain) -> Formula:
    if isinstance(f, ATOMS):
        return _fold_atom(f)
    if isinstance(f, (Verum, Falsum)):
        return f
    if isinstance(f, Not):
        return negation(_eliminate(f.body, domain))
    if isinstance(f, And):
        return conjunction(_eliminate(f.left, domain), _eliminate(f.right, domain))
    if isinstance(f, Or):
        return disjunction(_eliminate(f.left, domain), _eliminate(f.right, domain))
    if isinstance(f, Implies):
        return _implication(_eliminate(f.left, domain), _eliminate(f.right, domain))
    if isinstance(f, Forall):
        return negation(_eliminate(Exists(f.var, Not(f.body)), domain))
    result = eliminate_exists(f.var, _eliminate(f.body, domain))
    if domain is Domain.EXTENDED:
        at_infinity = _eliminate(substitute(f.body, f.var, Inf()), domain)
        result = disjunction(at_infinity, result)
    return result


@functools.lru_cache(maxsize=8192)
def qe(formula: Formula, orders: int = 2, domain: Domain = Domain.FINITE) -> Formula:
    """Quantifier-free formula equivalent to `formula` for finite values of its free variables."""
    check_formula(formula, orders, valued=False)
    return _eliminate(formula, domain)


def _ground_truth(f: Formula) -> bool:
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, ATOMS):
        folded = _fold_atom(f)
        if folded is f:
            raise FormulaTypeError(f"atom is not ground: {print_formula(f)}")
        return _ground_truth(folded)
    if isinstance(f, Not):
        return not _ground_truth(f.body)
    if isinstance(f, And):
        return _ground_truth(f.left) and _ground_truth(f.right)
    if isinstance(f, Or):
        return _ground_truth(f.left) or _ground_truth(f.right)
    if isinstance(f, Implies):
        return not _ground_truth(f.left) or _ground_truth(f.right)
    raise FormulaTypeError(f"not quantifier-free: {print_formula(f)}")


def decide_sentence(formula: Formula, orders: int = 2, domain: Domain = Domain.FINITE) -> bool:
    free = free_variables(formula)
    if free:
        raise FormulaTypeError(f"not a sentence, free variables: {', '.join(sorted(free))}")
    return _ground_truth(qe(formula, orders, domain))

