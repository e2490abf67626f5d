"""Evaluation of terms and formulas in towers and in the leading-term oracle."""

from __future__ import annotations

import functools
import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Protocol, Tuple, Union

from ..core.errors import FormulaTypeError, HamelError, UnboundVariableError
from ..core.linear import (
    INFINITY,
    MINUS_INFINITY,
    PLUS_INFINITY,
    ZERO,
    Interval,
    Ordering,
    Point,
    Vector,
    point_combine,
)
from ..core.tower import Model, compare, valuate, valuate_by_extension
from ..core.witness import independence_witness
from .linear_form import normalize_term
from .qe import Domain, qe
from .syntax import (
    ATOMS,
    Add,
    And,
    Eq,
    Exists,
    Falsum,
    Forall,
    Formula,
    Implies,
    Inf,
    Le,
    Lt,
    Not,
    Or,
    Scale,
    Term,
    Val,
    Var,
    Verum,
    Zero,
    atoms,
    is_quantifier_free,
    print_formula,
    uses_valuation,
)

logger = logging.getLogger(__name__)

Assignment = Mapping[str, object]


class Structure(Protocol):
    orders: int
    valued: bool

    def zero(self): ...

    def constant(self, name: str): ...

    def combine(self, c1: Fraction, x, c2: Fraction, y): ...

    def compare(self, x, y, order: int) -> Ordering: ...

    def valuate(self, x): ...


class TowerStructure:
    """A tower model seen as a structure; generator names are constants."""

    def __init__(self, model: Model, cross_check: bool = False):
        self.model = model
        self.cross_check = cross_check
        self.orders = model.orders
        self.valued = model.is_hamel

    def zero(self) -> Vector:
        return ZERO

    def constant(self, name: str) -> Optional[Vector]:
        return self.model.lookup(name)

    def combine(self, c1, x: Point, c2, y: Point) -> Point:
        return point_combine(c1, x, c2, y)

    def compare(self, x: Point, y: Point, order: int) -> Ordering:
        return compare(self.model, x, y, order)

    def valuate(self, x: Point) -> Point:
        value = valuate(self.model, x)
        if self.cross_check and valuate_by_extension(self.model, x) != value:
            raise HamelError(f"valuation formulas disagree on {self.model.format(x)}")
        return value


def _as_structure(structure) -> Structure:
    return TowerStructure(structure) if isinstance(structure, Model) else structure


def _lookup(structure: Structure, name: str, assignment: Assignment):
    if name in assignment:
        return assignment[name]
    value = structure.constant(name)
    if value is None:
        raise UnboundVariableError(name)
    return value


def evaluate_term(structure, t: Term, assignment: Optional[Assignment] = None):
    structure = _as_structure(structure)
    assignment = assignment or {}
    if isinstance(t, Zero):
        return structure.zero()
    if isinstance(t, Inf):
        return INFINITY
    if isinstance(t, Var):
        return _lookup(structure, t.name, assignment)
    if isinstance(t, Add):
        return structure.combine(
            Fraction(1),
            evaluate_term(structure, t.left, assignment),
            Fraction(1),
            evaluate_term(structure, t.right, assignment),
        )
    if isinstance(t, Scale):
        inner = evaluate_term(structure, t.term, assignment)
        return structure.combine(t.coefficient, inner, Fraction(0), structure.zero())
    if isinstance(t, Val):
        if not structure.valued:
            raise FormulaTypeError("v(...) evaluated in a structure without valuation")
        return structure.valuate(evaluate_term(structure, t.term, assignment))
    raise TypeError(f"not a term: {t!r}")


def _same(x, y) -> bool:
    if x is INFINITY or y is INFINITY:
        return x is y
    return x == y


def evaluate_qf(structure, f: Formula, assignment: Optional[Assignment] = None) -> bool:
    structure = _as_structure(structure)
    assignment = assignment or {}
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, ATOMS):
        if isinstance(f, (Lt, Le)) and f.order >= structure.orders:
            raise FormulaTypeError(f"order {f.order} does not exist in this structure")
        left = evaluate_term(structure, f.left, assignment)
        right = evaluate_term(structure, f.right, assignment)
        if isinstance(f, Eq):
            return _same(left, right)
        outcome = structure.compare(left, right, f.order)
        if isinstance(f, Lt):
            return outcome is Ordering.LESS
        return outcome is not Ordering.GREATER
    if isinstance(f, Not):
        return not evaluate_qf(structure, f.body, assignment)
    if isinstance(f, And):
        return evaluate_qf(structure, f.left, assignment) and evaluate_qf(
            structure, f.right, assignment
        )
    if isinstance(f, Or):
        return evaluate_qf(structure, f.left, assignment) or evaluate_qf(
            structure, f.right, assignment
        )
    if isinstance(f, Implies):
        return not evaluate_qf(structure, f.left, assignment) or evaluate_qf(
            structure, f.right, assignment
        )
    raise FormulaTypeError(f"quantified formula in quantifier-free evaluation: {print_formula(f)}")


class WitnessSearch:
    """Decides quantified Val-free formulas in a tower by building witnesses.

    For `E x. body` the quantifier-free equivalent of `body` names the points
    where the truth of `body` can change as x moves. Besides those points, one
    candidate per combination of open cells (one cell per order) suffices; it
    is produced by `independence_witness`, which extends the model.
    """

    def __init__(self, model: Model, domain: Domain = Domain.FINITE):
        self.model = model
        self.domain = domain
        self.candidates_tried = 0

    def holds(self, f: Formula, assignment: Dict[str, Point]) -> bool:
        if is_quantifier_free(f):
            return evaluate_qf(TowerStructure(self.model), f, assignment)
        if isinstance(f, Not):
            return not self.holds(f.body, assignment)
        if isinstance(f, And):
            return self.holds(f.left, assignment) and self.holds(f.right, assignment)
        if isinstance(f, Or):
            return self.holds(f.left, assignment) or self.holds(f.right, assignment)
        if isinstance(f, Implies):
            return not self.holds(f.left, assignment) or self.holds(f.right, assignment)
        if isinstance(f, Forall):
            return not self._exists(f.var, Not(f.body), assignment)
        if isinstance(f, Exists):
            return self._exists(f.var, f.body, assignment)
        raise TypeError(f"not a formula: {f!r}")

    def _exists(self, var: str, body: Formula, assignment: Dict[str, Point]) -> bool:
        if self.domain is Domain.EXTENDED and self.holds(body, {**assignment, var: INFINITY}):
            return True
        for candidate in self._candidates(var, body, assignment):
            self.candidates_tried += 1
            if self.holds(body, {**assignment, var: candidate}):
                return True
        return False

    def _critical_points(
        self, var: str, body: Formula, assignment: Dict[str, Point]
    ) -> Tuple[List[Vector], List[List[Vector]]]:
        structure = TowerStructure(self.model)
        points: List[Vector] = []
        by_order: List[List[Vector]] = [[] for _ in range(self.model.orders)]
        for atom in atoms(qe(body, self.model.orders, self.domain)):
            form = normalize_term(atom.left) - normalize_term(atom.right)
            c = form.coefficient(var)
            if form.infinite or c == 0:
                continue
            rest = evaluate_term(structure, form.without(var).to_term(), assignment)
            if rest is INFINITY:
                continue
            point = rest.scale(-1 / c)
            if point not in points:
                points.append(point)
            if isinstance(atom, (Lt, Le)) and point not in by_order[atom.order]:
                by_order[atom.order].append(point)
        return points, by_order

    def _cells(self, order: int, points: List[Vector]) -> List[Interval]:
        def by_order(a: Vector, b: Vector) -> int:
            return int(compare(self.model, a, b, order))

        ranked = sorted(points, key=functools.cmp_to_key(by_order))
        ends: List[Union[Vector, object]] = [MINUS_INFINITY, *ranked, PLUS_INFINITY]
        return list(zip(ends, ends[1:]))

    def _candidates(
        self, var: str, body: Formula, assignment: Dict[str, Point]
    ) -> Iterator[Vector]:
        points, by_order = self._critical_points(var, body, assignment)
        yield from points
        cells = [self._cells(order, pts) for order, pts in enumerate(by_order)]
        for combination in itertools.product(*cells):
            self.model, z = independence_witness(self.model, *combination)
            yield z


def evaluate(
    model: Model,
    f: Formula,
    assignment: Optional[Assignment] = None,
    domain: Domain = Domain.FINITE,
) -> Tuple[bool, Model]:
    """Truth of a possibly quantified formula; returns the (possibly extended) model."""
    assignment = dict(assignment or {})
    if is_quantifier_free(f):
        return evaluate_qf(TowerStructure(model), f, assignment), model
    if uses_valuation(f):
        raise FormulaTypeError("quantified formulas with v(...) cannot be evaluated")
    search = WitnessSearch(model, domain)
    truth = search.holds(f, assignment)
    logger.debug(
        "witness search for %s tried %d candidates", print_formula(f), search.candidates_tried
    )
    return truth, search.model
