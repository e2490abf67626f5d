from fractions import Fraction

import pytest

from hamel_spaces.core.errors import ExpressionSyntaxError, FormulaTypeError
from hamel_spaces.logic.parser import parse_formula, parse_term
from hamel_spaces.logic.syntax import (
    Add,
    And,
    Eq,
    Exists,
    Falsum,
    Forall,
    Implies,
    Inf,
    Le,
    Lt,
    Not,
    Or,
    Scale,
    Val,
    Var,
    Verum,
    Zero,
    free_variables,
    print_formula,
    print_term,
    quantifier_depth,
    substitute,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_parse_quantified_formula():
    assert parse_formula("E x. (0 <0 x & x <1 0)") == Exists(
        "x", And(Lt(0, Zero(), x), Lt(1, x, Zero()))
    )


def test_quantifier_closes_a_connective_chain():
    """A trailing quantifier takes the rest of the formula as its body."""
    assert parse_formula("0 <0 x & E y. y <0 x") == And(
        Lt(0, Zero(), x), Exists("y", Lt(0, y, x))
    )
    assert parse_formula("!E x. x <0 x") == Not(Exists("x", Lt(0, x, x)))
    assert parse_formula("0 = 0 | A y. 0 <=0 y") == Or(
        Eq(Zero(), Zero()), Forall("y", Le(0, Zero(), y))
    )
    assert parse_formula("x = y & E z. z <0 x | z <1 y") == And(
        Eq(x, y), Exists("z", Or(Lt(0, z, x), Lt(1, z, y)))
    )
    assert parse_formula("x = y | x <0 y & !A z. z = x") == Or(
        Eq(x, y), And(Lt(0, x, y), Not(Forall("z", Eq(z, x))))
    )


@pytest.mark.parametrize(
    "text",
    ["0 <0 x & E y. y <0 x", "!E x. x <0 x", "0 = 0 | A y. 0 <=0 y", "!!A y. E x. x <1 y"],
)
def test_trailing_quantifiers_round_trip(text):
    parsed = parse_formula(text)
    assert parse_formula(print_formula(parsed)) == parsed


def test_parse_terms():
    assert parse_term("x - y") == Add(x, Scale(Fraction(-1), y))
    assert parse_term("x - 2*y") == Add(x, Scale(Fraction(-2), y))
    assert parse_term("3/2*(x + y)") == Scale(Fraction(3, 2), Add(x, y))
    assert parse_term("x + inf") == Add(x, Inf())
    assert parse_term("v(x + y)") == Val(Add(x, y))
    assert parse_term("0") == Zero()
    assert parse_term("e(2/4)") == Var("e(1/2)")
    assert parse_term("e3") == Var("e3")


def test_precedence():
    """! binds tighter than &, & tighter than |, | tighter than ->, and -> nests to the right."""
    a, b, c = Eq(x, y), Lt(0, x, y), Le(1, y, z)
    assert parse_formula("!x = y & x <0 y | y <=1 z") == Or(And(Not(a), b), c)
    assert parse_formula("x = y -> x <0 y -> y <=1 z") == Implies(a, Implies(b, c))
    assert parse_formula("A x. x = y | false") == Forall("x", Or(a, Falsum()))
    assert parse_formula("true") == Verum()


@pytest.mark.parametrize(
    "text",
    [
        "E x. (0 <0 x & x <1 0)",
        "x <0 y & y <1 z",
        "!(x = y | x <=0 y)",
        "!x = y",
        "x = y -> y = z -> x = z",
        "(x = y -> y = z) -> x = z",
        "A y. E x. (y <0 x & x <1 y)",
        "(E x. x <0 y) & y = z",
        "x + -2*y <1 3/4*(y + z)",
        "x + (y + z) = inf",
        "v(x + y) <0 v(x) | x = 0",
        "x <0 y -> E z. (x <0 z & z <0 y)",
        "true & !false",
    ],
)
def test_printer_output_parses_back(text):
    parsed = parse_formula(text)
    assert print_formula(parsed) == text
    assert parse_formula(print_formula(parsed)) == parsed


@pytest.mark.parametrize("text", ["x <0", "x <0 y &", "(x = y", "E x x = y"])
def test_syntax_errors_carry_a_position(text):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_formula(text)
    assert info.value.line == 1
    assert info.value.column >= 1


def test_error_column_points_at_the_offending_token():
    with pytest.raises(ExpressionSyntaxError, match="character") as info:
        parse_formula("x # y")
    assert info.value.column == 3
    with pytest.raises(ExpressionSyntaxError, match="token") as info:
        parse_formula("x = = y")
    assert info.value.column == 5


def test_bare_scalars_are_rejected():
    with pytest.raises(ExpressionSyntaxError, match="bare scalar"):
        parse_formula("x = 3")


def test_type_checks():
    with pytest.raises(FormulaTypeError):
        parse_formula("v(x) = x", orders=2, valued=False)
    with pytest.raises(FormulaTypeError):
        parse_formula("x <2 y", orders=2)
    parse_formula("x <1 y", orders=2, valued=False)


def test_free_variables_and_substitution():
    f = parse_formula("E x. (x <0 y & z = x)")
    assert free_variables(f) == {"y", "z"}
    assert quantifier_depth(parse_formula("A y. E x. x <0 y")) == 2
    assert substitute(f, "y", Add(z, z)) == parse_formula("E x. (x <0 z + z & z = x)")
    assert substitute(f, "x", z) == f


def test_print_term():
    assert print_term(Add(Add(x, y), z)) == "x + y + z"
    assert print_term(Add(x, Add(y, z))) == "x + (y + z)"
    assert print_term(Scale(Fraction(-1), Add(x, y))) == "-1*(x + y)"
    assert print_term(Scale(Fraction(2), Val(x))) == "2*v(x)"
