from hamel_spaces.core.basis import separated_basis, sorted_values, subspace_values
from hamel_spaces.core.tower import valuate


def growth(model, base, added):
    return len(subspace_values(model, base + added)) - len(subspace_values(model, base))


def test_values_of_spans_in_m1(m1, el):
    assert subspace_values(m1, [el("h1"), el("h2")]) == {el("h1"), el("h2")}
    assert subspace_values(m1, [el("h2 + 5*t")]) == {el("h1")}
    assert subspace_values(m1, []) == frozenset()


def test_value_growth_in_m1(m1, el):
    """A new value raises the count by one; a ball element of an old value does not."""
    assert growth(m1, [el("h1")], [el("h2")]) == 1
    assert growth(m1, [el("h1")], [el("h2 + 5*t")]) == 0
    assert growth(m1, [el("h1")], []) == 0


def test_separated_basis_takes_least_values(m1, el):
    vectors = [el("h1"), el("h2 + 5*t"), el("h1 + h2 + 5*t"), el("t")]
    basis = separated_basis(m1, vectors)
    assert len(basis) == 3
    # any combination with nonzero coefficients takes the least value of its members
    combination = basis[0].scale(2) + basis[1].scale(-3) + basis[2]
    values = [valuate(m1, b) for b in basis]
    least = sorted_values(m1, set(values))[0]
    assert valuate(m1, combination) == least


def test_separated_basis_drops_dependent_vectors(m1, el):
    basis = separated_basis(m1, [el("h2"), el("2*h2"), el("h2 - t"), el("t")])
    assert len(basis) == 2


def test_sorted_values_follow_order_zero(m1, el):
    assert sorted_values(m1, {el("h2"), el("h1")}) == [el("h1"), el("h2")]
