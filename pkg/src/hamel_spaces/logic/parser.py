"""Lark front-end for formulas and linear expressions."""

from __future__ import annotations

import functools
from typing import Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from ..core.errors import ExpressionSyntaxError, HamelError
from ..core.linear import format_scalar, parse_scalar
from .syntax import (
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
    check_formula,
)

# Precedence, loosest first: quantifiers and ->, |, &, !. A quantifier body
# extends as far right as possible, so a quantifier may close a chain of
# `&`, `|` or `!` without parentheses.
# A parenthesized subterm may follow `+`, `-` or `c*` but never opens an atom,
# which keeps formula parentheses and term parentheses apart.
GRAMMAR = r"""
formula: implication

?implication: disjunction
            | disjunction "->" implication -> implies
            | open_disjunction

?open_disjunction: open_conjunction
                 | disjunction "|" open_conjunction -> or_

?open_conjunction: open_unary
                 | conjunction "&" open_unary -> and_

?open_unary: quantified
           | "!" open_unary -> not_

?quantified: "E" NAME "." implication -> exists
           | "A" NAME "." implication -> forall

?disjunction: conjunction
            | disjunction "|" conjunction -> or_

?conjunction: unary
            | conjunction "&" unary -> and_

?unary: "!" unary -> not_
      | "(" implication ")"
      | "true" -> verum
      | "false" -> falsum
      | atom

?atom: term "=" term -> eq
     | term LT term -> lt
     | term LE term -> le

term: sum

?sum: summand
    | sum "+" tail -> add
    | sum "-" tail -> sub

?tail: summand
     | "(" sum ")"

?summand: RAT "*" factor -> scale
        | RAT "*" "(" sum ")" -> scale
        | RAT -> constant
        | factor

?factor: NAME -> var
       | NAME "(" RAT ")" -> indexed
       | "inf" -> inf
       | "v" "(" sum ")" -> val

LT: /<\d+/
LE: /<=\d+/
RAT: /-?\d+(\/\d+)?/
NAME: /[a-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


@functools.lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", start=["formula", "term"])


def _negate(t: Term) -> Term:
    if isinstance(t, Zero):
        return t
    if isinstance(t, Scale):
        return Scale(-t.coefficient, t.term)
    return Scale(parse_scalar("-1"), t)


@v_args(inline=True)
class _ToSyntax(Transformer):
    def formula(self, f):
        return f

    def term(self, t):
        return t

    def implies(self, a, b):
        return Implies(a, b)

    def exists(self, name, body):
        return Exists(str(name), body)

    def forall(self, name, body):
        return Forall(str(name), body)

    def or_(self, a, b):
        return Or(a, b)

    def and_(self, a, b):
        return And(a, b)

    def not_(self, a):
        return Not(a)

    def verum(self):
        return Verum()

    def falsum(self):
        return Falsum()

    def eq(self, a, b):
        return Eq(a, b)

    def lt(self, a, op, b):
        return Lt(int(op[1:]), a, b)

    def le(self, a, op, b):
        return Le(int(op[2:]), a, b)

    def add(self, a, b):
        return Add(a, b)

    def sub(self, a, b):
        return Add(a, _negate(b))

    def scale(self, c, t):
        return Scale(parse_scalar(c), t)

    def constant(self, token: Token):
        if parse_scalar(token) != 0:
            raise ExpressionSyntaxError(
                f"bare scalar '{token}' is not a term, write it as a multiple of an element",
                line=token.line,
                column=token.column,
            )
        return Zero()

    def var(self, name):
        return Var(str(name))

    def indexed(self, name, index):
        return Var(f"{name}({format_scalar(parse_scalar(index))})")

    def inf(self):
        return Inf()

    def val(self, t):
        return Val(t)


def _syntax_error(error: UnexpectedInput, text: str) -> ExpressionSyntaxError:
    if isinstance(error, UnexpectedEOF):
        lines = text.splitlines() or [""]
        return ExpressionSyntaxError(
            "unexpected end of input", text, len(lines), len(lines[-1]) + 1
        )
    if isinstance(error, UnexpectedToken) and error.token.type == "$END":
        message = "unexpected end of input"
    elif isinstance(error, UnexpectedToken):
        message = f"unexpected token '{error.token}'"
    elif isinstance(error, UnexpectedCharacters):
        message = f"unexpected character '{error.char}'"
    else:
        message = "syntax error"
    return ExpressionSyntaxError(message, text, error.line, error.column)


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as error:
        raise _syntax_error(error, text) from None
    try:
        return _ToSyntax().transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, HamelError):
            raise error.orig_exc from None
        raise


def parse_formula(
    text: str, orders: Optional[int] = None, valued: bool = True
) -> Formula:
    """Parses a formula; with `orders` given, also type-checks it."""
    formula = _parse(text, "formula")
    if orders is not None:
        check_formula(formula, orders, valued)
    return formula


def parse_term(text: str) -> Term:
    return _parse(text, "term")
