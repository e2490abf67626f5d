import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hamel_spaces.core.presentation import format_model, load_model
from hamel_spaces.core.tower import compare, valuate


def print_model(file_path: str):
    print(f"Printing model: {file_path}")
    model = load_model(file_path)
    print(format_model(model), end="")

    units = [(model.names[g], model.generator(g)) for g in range(model.size)]
    for order in range(model.orders):
        key = functools.cmp_to_key(lambda a, b: int(compare(model, a[1], b[1], order)))
        print(f"<{order}: " + " < ".join(name for name, _ in sorted(units, key=key)))

    if model.is_hamel:
        for name, unit in units:
            print(f"v({name}) = {model.format(valuate(model, unit))}")


if __name__ == "__main__":
    model_file = "models/m1.model"
    if len(sys.argv) > 1:
        model_file = sys.argv[1]

    if Path(model_file).exists():
        print_model(model_file)
    else:
        print(f"File {model_file} not found.")
