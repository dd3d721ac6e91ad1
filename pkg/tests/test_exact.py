import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hibiconic.exact import (
    Constraint,
    SingularMatrixError,
    as_fraction,
    determinant,
    format_rational,
    integer_determinants,
    parse_rational,
    rank,
    solve_linear_system,
    strict_feasibility,
)


def fourier_motzkin(constraints, dim):
    """Feasibility oracle: eliminate variables one by one, tracking strictness."""
    rows = []
    for c in constraints:
        a, b = list(c.coefficients), c.bound
        if c.sense in (">", ">="):
            a, b = [-v for v in a], -b
        if c.sense == "=":
            rows.append((a, b, False))
            rows.append(([-v for v in a], -b, False))
        else:
            rows.append((a, b, c.sense in ("<", ">")))
    for k in range(dim):
        pos = [r for r in rows if r[0][k] > 0]
        neg = [r for r in rows if r[0][k] < 0]
        rest = [r for r in rows if r[0][k] == 0]
        for (ap, bp, sp), (an, bn, sn) in itertools.product(pos, neg):
            u, w = -an[k], ap[k]
            rest.append(([u * x + w * y for x, y in zip(ap, an)], u * bp + w * bn, sp or sn))
        rows = rest
    return all((0 < b) if strict else (0 <= b) for _, b, strict in rows)


def test_identity_solve():
    assert solve_linear_system([[1, 0], [0, 1]], [Fraction(3, 2), -1]) == (Fraction(3, 2), -1)


def test_singular_system():
    with pytest.raises(SingularMatrixError):
        solve_linear_system([[1, 1], [1, 1]], [1, 2])


def test_hand_elimination():
    assert solve_linear_system([[1, 0], [-1, 1]], [1, 0]) == (1, 1)


def test_interval_feasible():
    res = strict_feasibility([Constraint([1], ">", -1), Constraint([1], "<=", 0)], 1)
    assert res.feasible
    assert -1 < res.witness[0] <= 0
    assert res.margin > 0


def test_empty_interval():
    res = strict_feasibility([Constraint([1], "<=", 0), Constraint([1], ">", 0)], 1)
    assert not res.feasible and res.witness is None


def test_equality_constraints():
    res = strict_feasibility([Constraint([1, 1], "=", 3), Constraint([1, -1], ">", 0)], 2)
    assert res.feasible
    x, y = res.witness
    assert x + y == 3 and x > y


def test_no_constraints():
    assert strict_feasibility([], 3).feasible


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        strict_feasibility([Constraint([1, 2], "<", 0)], 1)


def test_determinant_examples():
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert determinant([[1, 2], [2, 4]]) == 0


def leibniz(A):
    n = len(A)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = Fraction((-1) ** inversions)
        for i in range(n):
            term *= A[i][perm[i]]
        total += term
    return total


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(A):
    assert determinant(A) == leibniz(A)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_integer_determinants_match(A):
    assert integer_determinants([A]) == [determinant(A)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_of_integer_and_rational_agree(A):
    assert rank(A) == rank([[Fraction(v, 2) for v in row] for row in A])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_solution_satisfies_system(A):
    b = list(range(1, len(A) + 1))
    if determinant(A) == 0:
        with pytest.raises(SingularMatrixError):
            solve_linear_system(A, b)
    else:
        x = solve_linear_system(A, b)
        assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


constraint = st.builds(
    Constraint,
    st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    st.sampled_from(["<", "<=", ">", ">=", "="]),
    st.integers(-3, 3),
)


@settings(max_examples=150, deadline=None)
@given(st.lists(constraint, max_size=5))
def test_strict_feasibility_against_fourier_motzkin(cons):
    res = strict_feasibility(cons, 2)
    assert res.feasible == fourier_motzkin(cons, 2)
    if res.feasible:
        assert all(c.holds(res.witness) for c in cons)


@settings(max_examples=60, deadline=None)
@given(st.lists(constraint, max_size=4), constraint)
def test_adding_constraints_never_helps(cons, extra):
    if not strict_feasibility(cons, 2).feasible:
        assert not strict_feasibility(cons + [extra], 2).feasible


def test_closure_relaxes_strict():
    c = Constraint([1, -1], "<", 2)
    assert c.is_strict and not c.closure().is_strict
    assert not c.holds([2, 0]) and c.closure().holds([2, 0])


def test_rational_round_trip():
    for q in [Fraction(0), Fraction(-7, 3), Fraction(5), Fraction(1, 1000)]:
        assert parse_rational(format_rational(q)) == q
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(ValueError):
        Constraint([1], "!=", 0)
