"""Separated bases and value sets of finitely generated subspaces."""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Sequence, Tuple

from .linear import GenId, Vector, vec_combine
from .tower import Model, valuate


def _value_block(model: Model, x: Vector, value_gen: GenId) -> List[GenId]:
    value_of = model.value_gen_of
    return [g for g in x.support if value_of[g] == value_gen]


def separated_basis(model: Model, vs: Sequence[Vector]) -> List[Vector]:
    """Basis of span(vs) whose combinations take the least value of their members.

    Rows are grouped by value. A new vector is reduced against the rows of its
    current value; if its block of least-value coordinates vanishes its value
    rises and reduction continues at the new value, otherwise it becomes a row
    with a fresh pivot inside that block.
    """
    model.require(*vs)
    rows: Dict[GenId, List[Tuple[Vector, GenId]]] = {}
    basis: List[Vector] = []
    for v in vs:
        x = v
        while not x.is_zero:
            value_gen = valuate(model, x).top
            for row, pivot in rows.get(value_gen, []):
                c = x.coefficient(pivot)
                if c != 0:
                    x = vec_combine(1, x, -c / row.coefficient(pivot), row)
            block = _value_block(model, x, value_gen)
            if block:
                rows.setdefault(value_gen, []).append((x, block[0]))
                basis.append(x)
                break
    return basis


def subspace_values(model: Model, vs: Sequence[Vector]) -> FrozenSet[Vector]:
    """The values of the nonzero elements of span(vs)."""
    return frozenset(valuate(model, b) for b in separated_basis(model, vs))


def sorted_values(model: Model, values) -> List[Vector]:
    rank = model.value_rank
    return sorted(values, key=lambda value: rank[value.top])
