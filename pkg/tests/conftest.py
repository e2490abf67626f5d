from pathlib import Path

import pytest

from hamel_spaces.core.presentation import parse_model_text, term_to_vector
from hamel_spaces.core.tower import Model

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"

M1_TEXT = """model hamel
gen h1 = value cut0=(<= 0)
gen h2 = value cut0=(<= h1)
gen t = ball alpha=h1 pivot=0 weak=true cut0=(<= h2)
"""

PLAIN2_TEXT = """model plain orders=2
gen f1 = free cut0=(<= 0) cut1=(none)
gen f2 = free cut0=(< f1) cut1=(all)
"""


@pytest.fixture
def m1() -> Model:
    """The three-generator example tower: values h1 <0 h2 and a ball generator t of value h1."""
    return parse_model_text(M1_TEXT, "m1.model")


@pytest.fixture
def plain2() -> Model:
    return parse_model_text(PLAIN2_TEXT, "plain2.model")


@pytest.fixture
def el(m1):
    """Element of M1 from an expression such as `h2 + 5*t`."""
    return lambda text: term_to_vector(m1, text)


@pytest.fixture
def m1_text() -> str:
    return M1_TEXT
