from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopforders.linalg import SparseEchelon, nullspace, solve, solve_combination

small = st.integers(-4, 4).map(Fraction)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_nullspace_matches_sympy(rows, cols, data):
    M = [[data.draw(small) for _ in range(cols)] for _ in range(rows)]
    eqs = [{j: v for j, v in enumerate(r) if v} for r in M]
    basis = nullspace(eqs, list(range(cols)))
    assert len(basis) == cols - sympy.Matrix(M).rank()
    for vec in basis:
        for r in M:
            assert sum(r[j] * vec.get(j, 0) for j in range(cols)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_solve_combination(nvec, dim, data):
    vecs = [[data.draw(small) for _ in range(dim)] for _ in range(nvec)]
    coeffs = [data.draw(small) for _ in range(nvec)]
    target = [sum(c * v[k] for c, v in zip(coeffs, vecs)) for k in range(dim)]
    sol = solve_combination(vecs, target)
    assert sol is not None
    assert [sum(c * v[k] for c, v in zip(sol, vecs)) for k in range(dim)] == target


def test_inconsistent_system():
    eqs = [{0: Fraction(1)}, {0: Fraction(1)}]
    assert solve(eqs, [Fraction(1), Fraction(2)], [0]) is None
    assert solve(eqs, [Fraction(3), Fraction(3)], [0]) == {0: Fraction(3)}


def test_echelon_tracks_dependencies():
    ech = SparseEchelon(track=True)
    assert ech.add({0: Fraction(1), 1: Fraction(2)}) is None
    assert ech.add({1: Fraction(1)}) is None
    dep = ech.add({0: Fraction(1), 1: Fraction(5)})
    # v2 - v0 - 3 v1 == 0
    assert dep == {2: 1, 0: -1, 1: -3}
    assert ech.contains({0: Fraction(7)}) and len(ech) == 2
