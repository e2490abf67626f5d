"""Finitely presented models as generator towers.

A model is a sequence of adjunction records. Every record carries the cut data
that positions its generator against the span of the earlier generators, so
comparisons in every order (and the valuation, in hamel mode) are decided by
recursion on the highest generator of an element's support.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .errors import (
    MalformedCutError,
    ModeError,
    ModelMismatchError,
    NameConflictError,
    OutsideBallError,
)
from .linear import (
    INFINITY,
    ZERO,
    GenId,
    ModelToken,
    Ordering,
    Point,
    Vector,
)

logger = logging.getLogger(__name__)


class CutShape(Enum):
    EVERYTHING = "all"
    NOTHING = "none"
    BELOW_STRICT = "<"
    BELOW_WEAK = "<="


@dataclass(frozen=True)
class Cut:
    """Principal downward closed set in one order."""

    order: int
    shape: CutShape
    anchor: Optional[Vector] = None

    @classmethod
    def everything(cls, order: int = 0) -> "Cut":
        return cls(order, CutShape.EVERYTHING)

    @classmethod
    def nothing(cls, order: int = 0) -> "Cut":
        return cls(order, CutShape.NOTHING)

    @classmethod
    def strict_below(cls, anchor: Vector, order: int = 0) -> "Cut":
        return cls(order, CutShape.BELOW_STRICT, anchor)

    @classmethod
    def weak_below(cls, anchor: Vector, order: int = 0) -> "Cut":
        return cls(order, CutShape.BELOW_WEAK, anchor)

    @property
    def is_principal(self) -> bool:
        return self.anchor is not None


@dataclass(frozen=True)
class AlphaCut:
    """Cut of the residue space of `alpha`, given by a pivot coset."""

    alpha: Vector
    pivot: Vector = ZERO
    weak: bool = True


@dataclass(frozen=True)
class FreeGen:
    cuts: Tuple[Cut, ...]


@dataclass(frozen=True)
class ValueGen:
    cut0: Cut


@dataclass(frozen=True)
class BallGen:
    acut: AlphaCut
    cut0: Cut


GeneratorRecord = Union[FreeGen, ValueGen, BallGen]


@dataclass(frozen=True)
class ModelMode:
    hamel: bool
    orders: int

    @classmethod
    def plain(cls, orders: int) -> "ModelMode":
        if orders < 1:
            raise ModeError("a plain model needs at least one order")
        return cls(False, orders)

    @classmethod
    def hamel_mode(cls) -> "ModelMode":
        return cls(True, 2)

    def __str__(self) -> str:
        return "hamel" if self.hamel else f"plain orders={self.orders}"


@dataclass(frozen=True, eq=False)
class Model:
    mode: ModelMode
    gens: Tuple[GeneratorRecord, ...] = ()
    names: Tuple[str, ...] = ()
    token: ModelToken = field(default_factory=ModelToken.fresh)
    parent: Optional["Model"] = field(default=None, repr=False)

    @classmethod
    def plain(cls, orders: int = 2) -> "Model":
        return cls(ModelMode.plain(orders))

    @classmethod
    def hamel(cls) -> "Model":
        return cls(ModelMode.hamel_mode())

    @property
    def size(self) -> int:
        return len(self.gens)

    @property
    def orders(self) -> int:
        return self.mode.orders

    @property
    def is_hamel(self) -> bool:
        return self.mode.hamel

    def same_presentation(self, other: "Model") -> bool:
        return (self.mode, self.gens, self.names) == (other.mode, other.gens, other.names)

    def generator(self, gen: GenId) -> Vector:
        if not 0 <= gen < self.size:
            raise ModelMismatchError(f"generator index {gen} outside model of size {self.size}")
        return Vector.unit(gen, self.token)

    def index_of(self, name: str) -> Optional[GenId]:
        return self._name_index.get(name)

    def lookup(self, name: str) -> Optional[Vector]:
        gen = self.index_of(name)
        return None if gen is None else self.generator(gen)

    def element(self, mapping: Dict[str, Union[int, Fraction]]) -> Vector:
        """Builds an element from generator names, e.g. {"h2": 1, "t": 5}."""
        coefficients = {}
        for name, c in mapping.items():
            gen = self.index_of(name)
            if gen is None:
                raise ModelMismatchError(f"unknown generator '{name}'")
            coefficients[gen] = c
        return Vector.from_mapping(coefficients, self.token)

    def format(self, p: Point) -> str:
        return "inf" if p is INFINITY else p.format(self.names)

    def truncate(self, size: int) -> "Model":
        """Returns the ancestor of this model with `size` generators."""
        node: Optional[Model] = self
        while node is not None and node.size > size:
            node = node.parent
        if node is None or node.size != size:
            raise ModelMismatchError(f"no ancestor of size {size}")
        return node

    def owns(self, x: Point) -> bool:
        if x is INFINITY:
            return True
        if x.owner is not None and not self.token.descends_from(x.owner):
            return False
        return x.is_zero or x.top < self.size

    def require(self, *points: Point) -> None:
        for x in points:
            if not self.owns(x):
                raise ModelMismatchError(f"element {x} does not belong to this model")

    def fresh_name(self, prefix: str) -> str:
        n = 1
        while f"{prefix}{n}" in self._name_index:
            n += 1
        return f"{prefix}{n}"

    def prefix(self, size: int) -> "Model":
        """The ancestor with `size` generators, or self when the parent chain is cut short."""
        return self._prefixes.get(size, self)

    @functools.cached_property
    def _prefixes(self) -> Dict[int, "Model"]:
        found: Dict[int, Model] = {}
        node: Optional[Model] = self
        while node is not None:
            found[node.size] = node
            node = node.parent
        return found

    @functools.cached_property
    def lower_set_cache(self) -> Dict[Tuple[GenId, tuple, int], bool]:
        """Memo of generator cut memberships, keyed by (generator, element terms, order)."""
        return {}

    @functools.cached_property
    def _name_index(self) -> Dict[str, GenId]:
        return {name: gen for gen, name in enumerate(self.names)}

    @functools.cached_property
    def value_gen_of(self) -> Tuple[GenId, ...]:
        """For each generator, the index of the value generator that is its value."""
        result = []
        for gen, record in enumerate(self.gens):
            if isinstance(record, ValueGen):
                result.append(gen)
            elif isinstance(record, BallGen):
                result.append(record.acut.alpha.top)
            else:
                result.append(-1)
        return tuple(result)

    @functools.cached_property
    def value_rank(self) -> Dict[GenId, int]:
        """Position of every value generator in the order <_0."""
        values = [g for g, record in enumerate(self.gens) if isinstance(record, ValueGen)]

        def by_order0(a: GenId, b: GenId) -> int:
            return int(_sign(self, Vector.unit(a) - Vector.unit(b), 0))

        ranked = sorted(values, key=functools.cmp_to_key(by_order0))
        return {gen: rank for rank, gen in enumerate(ranked)}

    @property
    def values(self) -> Tuple[Vector, ...]:
        """The value generators in increasing <_0 order."""
        ranked = sorted(self.value_rank, key=self.value_rank.__getitem__)
        return tuple(self.generator(g) for g in ranked)


# --- Decision procedures ---------------------------------------------------


def _cut_contains(model: Model, cut: Cut, w: Vector) -> bool:
    if cut.shape is CutShape.EVERYTHING:
        return True
    if cut.shape is CutShape.NOTHING:
        return False
    s = _sign(model, w - cut.anchor, cut.order)
    if cut.shape is CutShape.BELOW_STRICT:
        return s is Ordering.LESS
    return s is not Ordering.GREATER


def _alpha_cut_contains(model: Model, acut: AlphaCut, w: Vector) -> bool:
    d = w - acut.pivot
    if _value_above(model, valuate(model, d), acut.alpha):
        return acut.weak
    return _sign(model, d, 1) is Ordering.LESS


def _value_above(model: Model, value: Point, alpha: Vector) -> bool:
    """value >_0 alpha for a value (or infinity) and a value generator."""
    if value is INFINITY:
        return True
    rank = model.value_rank
    return rank[value.top] > rank[alpha.top]


def _in_lower_set(model: Model, gen: GenId, w: Vector, order: int) -> bool:
    """Decides w in P_order, the lower cut realized by generator `gen`."""
    record = model.gens[gen]
    if isinstance(record, FreeGen):
        return _cut_contains(model, record.cuts[order], w)
    if order == 0:
        return _cut_contains(model, record.cut0, w)
    if isinstance(record, ValueGen):
        if _sign(model, w, 1) is not Ordering.GREATER:
            return True
        return not _cut_contains(model, record.cut0, valuate(model, w))
    alpha = record.acut.alpha
    vw = valuate(model, w)
    if vw is not INFINITY and not _value_above(model, vw, alpha) and vw.top != alpha.top:
        return _sign(model, w, 1) is Ordering.LESS
    return _alpha_cut_contains(model, record.acut, w)


def _member(model: Model, gen: GenId, w: Vector, order: int) -> bool:
    # decided once, in the ancestor that adjoined `gen`; extensions share the answer
    home = model.prefix(gen + 1)
    key = (gen, w.terms, order)
    cache = home.lower_set_cache
    found = cache.get(key)
    if found is None:
        found = cache[key] = _in_lower_set(home, gen, Vector(w.terms), order)
    return found


def _sign(model: Model, z: Vector, order: int) -> Ordering:
    if z.is_zero:
        return Ordering.EQUAL
    rest, gen, c = z.split_top()
    member = _member(model, gen, rest.scale(-1 / c), order)
    return Ordering.GREATER if member != (c < 0) else Ordering.LESS


def sign(model: Model, z: Point, order: int) -> Ordering:
    return compare(model, z, ZERO, order)


def compare(model: Model, x: Point, y: Point, order: int) -> Ordering:
    if not 0 <= order < model.orders:
        raise ModeError(f"order {order} does not exist in a model with {model.orders} orders")
    model.require(x, y)
    if x is INFINITY or y is INFINITY:
        return Ordering.of(x is INFINITY, y is INFINITY)
    return _sign(model, x - y, order)


def less(model: Model, x: Point, y: Point, order: int) -> bool:
    return compare(model, x, y, order) is Ordering.LESS


def min_order(model: Model, x: Point, y: Point, order: int) -> Point:
    return y if compare(model, y, x, order) is Ordering.LESS else x


def abs_order(model: Model, x: Vector, order: int) -> Vector:
    return -x if _sign(model, x, order) is Ordering.LESS else x


def _require_hamel(model: Model, what: str) -> None:
    if not model.is_hamel:
        raise ModeError(f"{what} needs a hamel-mode model")


def valuate(model: Model, x: Point) -> Point:
    """Value of x: the least value, in <_0, of the generators in its support."""
    _require_hamel(model, "valuation")
    model.require(x)
    if x is INFINITY or x.is_zero:
        return INFINITY
    rank = model.value_rank
    value_of = model.value_gen_of
    best = min(x.support, key=lambda g: rank[value_of[g]])
    return model.generator(value_of[best])


def valuate_by_extension(model: Model, x: Point) -> Point:
    """Value of x computed by replaying the case formulas of each adjunction."""
    _require_hamel(model, "valuation")
    model.require(x)
    if x is INFINITY or x.is_zero:
        return INFINITY
    rest, gen, _ = x.split_top()
    prior = valuate_by_extension(model, rest)
    record = model.gens[gen]
    if isinstance(record, ValueGen):
        if prior is not INFINITY and _cut_contains(model, record.cut0, prior):
            return prior
        return model.generator(gen)
    alpha = record.acut.alpha.with_owner(model.token)
    if prior is INFINITY or _value_above(model, prior, alpha):
        return alpha
    return prior


def is_value(model: Model, x: Point) -> bool:
    return x is not INFINITY and not x.is_zero and valuate(model, x) == x


def in_closed_ball(model: Model, x: Vector, alpha: Vector) -> bool:
    value = valuate(model, x)
    return value == alpha or _value_above(model, value, alpha)


def residue_compare(model: Model, x: Vector, y: Vector, alpha: Vector) -> Ordering:
    """Compares the cosets of x and y modulo the open ball of `alpha`."""
    if not is_value(model, alpha):
        raise OutsideBallError(f"{model.format(alpha)} is not a nonzero value")
    for element in (x, y):
        if not in_closed_ball(model, element, alpha):
            raise OutsideBallError(
                f"{model.format(element)} has value below {model.format(alpha)}"
            )
    d = x - y
    if _value_above(model, valuate(model, d), alpha):
        return Ordering.EQUAL
    return _sign(model, d, 1)


# --- Adjunction ------------------------------------------------------------


def _check_anchor(model: Model, vector: Vector, what: str) -> None:
    if vector.owner is not None and not model.token.descends_from(vector.owner):
        raise ModelMismatchError(f"{what} belongs to another model")
    if not vector.is_zero and vector.top >= model.size:
        raise MalformedCutError(f"{what} refers to a generator that does not exist yet")


def _check_cut(model: Model, cut: Cut, order: int) -> None:
    if cut.order != order:
        raise MalformedCutError(f"expected a cut in order {order}, got order {cut.order}")
    if cut.is_principal != (cut.shape in (CutShape.BELOW_STRICT, CutShape.BELOW_WEAK)):
        raise MalformedCutError(f"cut shape {cut.shape.value} with anchor {cut.anchor}")
    if cut.anchor is not None:
        _check_anchor(model, cut.anchor, "cut anchor")


def _extend(
    model: Model, record: GeneratorRecord, name: Optional[str], prefix: str
) -> Tuple[Model, GenId]:
    name = name or model.fresh_name(prefix)
    if model.index_of(name) is not None:
        raise NameConflictError(f"generator name '{name}' is already used")
    extended = Model(
        mode=model.mode,
        gens=model.gens + (record,),
        names=model.names + (name,),
        token=ModelToken.fresh(model.token),
        parent=model,
    )
    logger.debug("adjoined %s as generator %d (%s)", type(record).__name__, model.size, name)
    return extended, model.size


def adjoin_free(
    model: Model, cuts: Sequence[Cut], name: Optional[str] = None
) -> Tuple[Model, GenId]:
    """Adds a generator realizing one cut per order (plain mode)."""
    if model.is_hamel:
        raise ModeError("free generators only exist in plain-mode models")
    if len(cuts) != model.orders:
        raise MalformedCutError(f"expected {model.orders} cuts, got {len(cuts)}")
    for order, cut in enumerate(cuts):
        _check_cut(model, cut, order)
    return _extend(model, FreeGen(tuple(cuts)), name, "f")


def adjoin_value(
    model: Model, cut0: Cut, name: Optional[str] = None
) -> Tuple[Model, GenId]:
    """Adds a new value h realizing cut0 in <_0; v(h) = h."""
    _require_hamel(model, "a value generator")
    _check_cut(model, cut0, 0)
    return _extend(model, ValueGen(cut0), name, "h")


def adjoin_ball(
    model: Model, acut: AlphaCut, cut0: Cut, name: Optional[str] = None
) -> Tuple[Model, GenId]:
    """Adds a generator of value acut.alpha realizing acut in the residue space."""
    _require_hamel(model, "a ball generator")
    _check_cut(model, cut0, 0)
    _check_anchor(model, acut.alpha, "alpha")
    _check_anchor(model, acut.pivot, "pivot")
    if not is_value(model, acut.alpha):
        raise MalformedCutError(f"alpha {model.format(acut.alpha)} is not a nonzero value")
    if not acut.pivot.is_zero and not in_closed_ball(model, acut.pivot, acut.alpha):
        raise MalformedCutError(
            f"pivot {model.format(acut.pivot)} lies outside the closed ball of "
            f"{model.format(acut.alpha)}"
        )
    return _extend(model, BallGen(acut, cut0), name, "t")
