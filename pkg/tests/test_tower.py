import pytest

from hamel_spaces.core.errors import (
    MalformedCutError,
    ModeError,
    ModelMismatchError,
    NameConflictError,
    OutsideBallError,
)
from hamel_spaces.core.linear import INFINITY, ZERO, Ordering
from hamel_spaces.core.presentation import parse_model_text
from hamel_spaces.core.tower import (
    AlphaCut,
    Cut,
    Model,
    abs_order,
    adjoin_ball,
    adjoin_free,
    adjoin_value,
    compare,
    in_closed_ball,
    is_value,
    min_order,
    residue_compare,
    sign,
    valuate,
    valuate_by_extension,
)


LESS, EQUAL, GREATER = Ordering.LESS, Ordering.EQUAL, Ordering.GREATER


def test_m1_values_in_order_zero(m1, el):
    """h1 sits just above 0 and h2 just above h1."""
    assert compare(m1, el("h1"), ZERO, 0) is GREATER
    assert compare(m1, el("h1"), el("h2"), 0) is LESS
    assert compare(m1, el("t"), el("h2"), 0) is GREATER
    assert is_value(m1, el("h1"))
    assert is_value(m1, el("h2"))
    assert not is_value(m1, el("t"))


def test_m1_order_one(m1, el):
    assert compare(m1, el("h2"), el("h1"), 1) is LESS
    assert sign(m1, el("h1"), 1) is GREATER
    assert compare(m1, el("h1 - 3*h2"), ZERO, 1) is GREATER
    assert compare(m1, el("t"), ZERO, 1) is GREATER
    assert compare(m1, el("t"), el("h1"), 1) is LESS


def test_m1_valuation(m1, el):
    assert valuate(m1, el("h1 - 3*h2")) == el("h1")
    assert valuate(m1, el("2*h1 - 3*h2")) == el("h1")
    assert valuate(m1, el("h2 + 5*t")) == el("h1")
    assert valuate(m1, el("t")) == el("h1")
    assert valuate(m1, el("7*h1")) == el("h1")
    assert valuate(m1, el("h2")) == el("h2")
    assert valuate(m1, ZERO) is INFINITY
    assert valuate(m1, INFINITY) is INFINITY


def test_both_valuation_formulas_agree(m1, el):
    for text in ["h1", "h2", "t", "h1 - 3*h2", "h2 + 5*t", "-2*t + h1", "h2 - 1/2*h1 + t"]:
        assert valuate_by_extension(m1, el(text)) == valuate(m1, el(text)), text


def test_infinity_is_above_everything(m1, el):
    assert compare(m1, INFINITY, el("h2"), 0) is GREATER
    assert compare(m1, el("h2"), INFINITY, 1) is LESS
    assert compare(m1, INFINITY, INFINITY, 0) is EQUAL


def test_min_and_abs(m1, el):
    assert min_order(m1, el("h1"), el("h2"), 0) == el("h1")
    assert min_order(m1, el("h1"), el("h2"), 1) == el("h2")
    assert abs_order(m1, el("-1*t"), 1) == el("t")


def test_residue_compare(m1, el):
    h1 = el("h1")
    assert residue_compare(m1, el("t"), ZERO, h1) is GREATER
    assert residue_compare(m1, h1, el("t"), h1) is GREATER
    assert residue_compare(m1, el("t"), el("t"), h1) is EQUAL
    assert in_closed_ball(m1, el("t"), h1)
    assert not in_closed_ball(m1, el("t"), el("h2"))
    with pytest.raises(OutsideBallError):
        residue_compare(m1, el("t"), ZERO, el("h2"))


def test_free_adjunction_realizes_cuts():
    """A weak-below cut puts the generator just above its anchor, an empty cut below everything."""
    model, f = adjoin_free(Model.plain(2), [Cut.weak_below(ZERO, 0), Cut.nothing(1)])
    h = model.generator(f)
    assert compare(model, h, ZERO, 0) is GREATER
    assert compare(model, h, ZERO, 1) is LESS

    model, g = adjoin_free(model, [Cut.strict_below(h, 0), Cut.everything(1)])
    x = model.generator(g)
    assert less_chain(model, [ZERO, x, h], 0)
    assert less_chain(model, [h, ZERO, x], 1)
    assert model.names == ("f1", "f2")


def less_chain(model, points, order):
    return all(compare(model, a, b, order) is LESS for a, b in zip(points, points[1:]))


def test_mode_errors(m1, plain2):
    with pytest.raises(ModeError):
        adjoin_free(m1, [Cut.everything(0), Cut.everything(1)])
    with pytest.raises(ModeError):
        adjoin_value(plain2, Cut.everything(0))
    with pytest.raises(ModeError):
        valuate(plain2, plain2.generator(0))
    with pytest.raises(ModeError):
        compare(plain2, ZERO, ZERO, 2)


def test_malformed_adjunctions(m1, el):
    with pytest.raises(MalformedCutError):
        adjoin_ball(m1, AlphaCut(el("t")), Cut.everything(0))
    with pytest.raises(MalformedCutError):
        adjoin_value(m1, Cut.everything(1))
    with pytest.raises(NameConflictError):
        adjoin_value(m1, Cut.everything(0), name="h1")


def test_generated_names(m1):
    model, h = adjoin_value(m1, Cut.nothing(0))
    model, t = adjoin_ball(model, AlphaCut(model.generator(h)), Cut.nothing(0))
    assert (model.names[h], model.names[t]) == ("h3", "t1")


def test_extensions_keep_old_elements(m1, el):
    """Elements of a model stay usable in its extensions; truncation recovers the prefix."""
    x = el("h2 + 5*t")
    extended, h = adjoin_value(m1, Cut.weak_below(el("h2")))
    assert valuate(extended, x) == el("h1")
    assert compare(extended, el("h2"), extended.generator(h), 0) is LESS
    assert extended.truncate(m1.size) is m1
    with pytest.raises(ModelMismatchError):
        m1.require(extended.generator(h))


def test_unrelated_models_are_rejected(m1, m1_text):
    other = parse_model_text(m1_text)
    with pytest.raises(ModelMismatchError):
        compare(m1, other.generator(0), ZERO, 0)


def test_cut_memberships_are_shared_with_extensions(m1, el):
    """A membership is decided in the prefix that adjoined its generator, never again."""

    def cached(model):
        return sum(len(model.prefix(k).lower_set_cache) for k in range(1, model.size + 1))

    assert compare(m1, el("t"), el("h2 + 2*h1"), 0) is LESS
    before = cached(m1)
    assert before > 0
    extended, h = adjoin_value(m1, Cut.strict_below(el("h1")))
    assert compare(extended, el("t"), el("h2 + 2*h1"), 0) is LESS
    assert compare(extended, extended.generator(h), el("h1"), 0) is LESS
    assert cached(m1) == before
    assert all(gen == h for gen, _, _ in extended.lower_set_cache)
    assert extended.prefix(m1.size) is m1
