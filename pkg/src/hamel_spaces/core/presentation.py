"""Reading and writing model presentation files, plus point and bound parsing.

    model hamel
    gen h1 = value cut0=(<= 0)
    gen h2 = value cut0=(<= h1)
    gen t = ball alpha=h1 pivot=0 weak=true cut0=(<= h2)   # v(t) = h1

Plain models use `model plain orders=<k>` and `gen f = free cut0=(...) cut1=(...)`.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Union

from .errors import ExpressionSyntaxError, FormulaTypeError, HamelError, ModelFileError
from .linear import INFINITY, MINUS_INFINITY, PLUS_INFINITY, Bound, Point, Vector
from .tower import (
    AlphaCut,
    BallGen,
    Cut,
    CutShape,
    FreeGen,
    GeneratorRecord,
    Model,
    ValueGen,
    adjoin_ball,
    adjoin_free,
    adjoin_value,
)

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^model\s+(?:(hamel)|plain\s+orders=(\d+))$")
_GEN = re.compile(r"^gen\s+([a-z_][A-Za-z0-9_]*)\s*=\s*(value|ball|free)\b\s*(.*)$")
_FIELD_SPLIT = re.compile(r"\s+(?=(?:alpha|pivot|weak|cut\d+)=)")
_CUT = re.compile(r"^\((<=|<|all|none)\s*(.*)\)$")
_RESERVED = {"inf", "v", "true", "false"}

_FIELDS = {
    "value": {"cut0"},
    "ball": {"alpha", "pivot", "weak", "cut0"},
}


def term_to_vector(model: Model, text: str) -> Vector:
    """Linear expression over generator names to a vector of `model`."""
    from ..logic.linear_form import normalize_term
    from ..logic.parser import parse_term

    try:
        form = normalize_term(parse_term(text))
    except FormulaTypeError:
        raise ExpressionSyntaxError(f"v(...) is not allowed in '{text}'", text) from None
    if form.infinite:
        raise ExpressionSyntaxError(f"'{text}' is infinite where an element is required", text)
    for name in sorted(form.variables):
        if model.index_of(name) is None:
            raise ExpressionSyntaxError(f"unknown generator '{name}'", text)
    return model.element(form.as_dict())


def parse_point(model: Model, text: str) -> Point:
    """An expression over generator names, `inf`, or `v(...)`, evaluated in `model`."""
    from ..logic.evaluate import evaluate_term
    from ..logic.parser import parse_term

    return evaluate_term(model, parse_term(text))


def parse_bound(model: Model, text: str) -> Bound:
    raw = text.strip()
    if raw == "-inf":
        return MINUS_INFINITY
    if raw == "+inf":
        return PLUS_INFINITY
    point = parse_point(model, raw)
    if point is INFINITY:
        raise ExpressionSyntaxError("write interval ends at infinity as '-inf' or '+inf'", text)
    return point


def _parse_cut(model: Model, text: str, order: int) -> Cut:
    match = _CUT.match(text.strip())
    if match is None:
        raise ExpressionSyntaxError(f"malformed cut '{text}', expected (<op> <expr>)", text)
    op, expr = match.group(1), match.group(2).strip()
    if op in ("all", "none"):
        if expr:
            raise ExpressionSyntaxError(f"cut '({op})' takes no expression", text)
        return Cut.everything(order) if op == "all" else Cut.nothing(order)
    if not expr:
        raise ExpressionSyntaxError(f"cut '({op})' needs an expression", text)
    anchor = term_to_vector(model, expr)
    return Cut.weak_below(anchor, order) if op == "<=" else Cut.strict_below(anchor, order)


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ExpressionSyntaxError(f"expected true or false, got '{text}'", text)
    return text == "true"


def _parse_fields(rest: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for item in _FIELD_SPLIT.split(rest.strip()) if rest.strip() else []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ExpressionSyntaxError(f"expected key=value, got '{item}'", item)
        if key in fields:
            raise ExpressionSyntaxError(f"field '{key}' given twice", item)
        fields[key] = value.strip()
    return fields


def _check_fields(kind: str, fields: Dict[str, str], model: Model) -> None:
    expected = _FIELDS.get(kind) or {f"cut{i}" for i in range(model.orders)}
    missing = sorted(expected - set(fields))
    unknown = sorted(set(fields) - expected)
    if missing:
        raise ExpressionSyntaxError(f"{kind} generator is missing {', '.join(missing)}")
    if unknown:
        raise ExpressionSyntaxError(f"{kind} generator does not take {', '.join(unknown)}")


def _adjoin_line(model: Model, name: str, kind: str, rest: str) -> Model:
    if name in _RESERVED:
        raise ExpressionSyntaxError(f"'{name}' is reserved and cannot name a generator", name)
    fields = _parse_fields(rest)
    _check_fields(kind, fields, model)
    if kind == "value":
        model, _ = adjoin_value(model, _parse_cut(model, fields["cut0"], 0), name)
    elif kind == "ball":
        acut = AlphaCut(
            term_to_vector(model, fields["alpha"]),
            term_to_vector(model, fields["pivot"]),
            _parse_bool(fields["weak"]),
        )
        model, _ = adjoin_ball(model, acut, _parse_cut(model, fields["cut0"], 0), name)
    else:
        cuts = [_parse_cut(model, fields[f"cut{i}"], i) for i in range(model.orders)]
        model, _ = adjoin_free(model, cuts, name)
    return model


def parse_model_text(text: str, path: str = "<model>") -> Model:
    model: Optional[Model] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if model is None:
                header = _HEADER.match(line)
                if header is None:
                    raise ExpressionSyntaxError(
                        "expected header 'model hamel' or 'model plain orders=<k>'"
                    )
                model = Model.hamel() if header.group(1) else Model.plain(int(header.group(2)))
                continue
            gen = _GEN.match(line)
            if gen is None:
                raise ExpressionSyntaxError("expected 'gen <name> = value|ball|free ...'")
            model = _adjoin_line(model, *gen.groups())
        except ModelFileError:
            raise
        except HamelError as error:
            raise ModelFileError(str(error), path, number) from error
    if model is None:
        raise ModelFileError("missing model header", path)
    logger.debug("loaded %s with %d generators (%s)", path, model.size, model.mode)
    return model


def load_model(path: Union[str, Path]) -> Model:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise ModelFileError(f"cannot read model file: {error.strerror}", str(path)) from error
    return parse_model_text(text, str(path))


def _format_cut(model: Model, cut: Cut) -> str:
    if cut.shape is CutShape.EVERYTHING:
        return "(all)"
    if cut.shape is CutShape.NOTHING:
        return "(none)"
    return f"({cut.shape.value} {model.format(cut.anchor)})"


def _format_record(model: Model, record: GeneratorRecord) -> str:
    if isinstance(record, ValueGen):
        return f"value cut0={_format_cut(model, record.cut0)}"
    if isinstance(record, BallGen):
        acut = record.acut
        return (
            f"ball alpha={model.format(acut.alpha)} pivot={model.format(acut.pivot)} "
            f"weak={'true' if acut.weak else 'false'} cut0={_format_cut(model, record.cut0)}"
        )
    assert isinstance(record, FreeGen)
    return "free " + " ".join(
        f"cut{i}={_format_cut(model, cut)}" for i, cut in enumerate(record.cuts)
    )


def format_model(model: Model) -> str:
    lines: List[str] = [f"model {model.mode}"]
    for name, record in zip(model.names, model.gens):
        lines.append(f"gen {name} = {_format_record(model, record)}")
    return "\n".join(lines) + "\n"


def save_model(model: Model, path: Union[str, Path]) -> None:
    Path(path).write_text(format_model(model), encoding="utf-8")
    logger.info("wrote %d generators to %s", model.size, path)
