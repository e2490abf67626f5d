import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hamel_spaces.logic.parser import parse_formula
from hamel_spaces.logic.qe import _project, conjuncts_to_formula, qe, to_dnf
from hamel_spaces.logic.syntax import Exists, print_formula

formula = "E x. ((a <0 x | x = b) & x <1 c & (x <0 d -> c <1 d))"
if len(sys.argv) > 1:
    formula = sys.argv[1]

f = parse_formula(formula, valued=False)
if not isinstance(f, Exists):
    sys.exit("expected a formula of the form 'E x. matrix'")

print(f"Formula: {print_formula(f)}")
matrix = qe(f.body)
print(f"Matrix:  {print_formula(matrix)}\n")

for i, conjunct in enumerate(to_dnf(matrix)):
    residue = _project(f.var, conjunct)
    print(f"[{i + 1}] {print_formula(conjuncts_to_formula([conjunct]))}")
    if residue is None:
        print("    -> inconsistent")
    else:
        print(f"    -> {print_formula(conjuncts_to_formula([residue]))}")

print(f"\nResult:  {print_formula(qe(f))}")
