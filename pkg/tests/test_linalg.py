import json
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from tripartite.linalg import (
    DimensionMismatch,
    Matrix,
    NotSymmetric,
    Polynomial,
    Singular,
    charpoly,
    congruence_signature,
    det,
    diag,
    dumps_matrix,
    eigen_quadratic,
    identity,
    inverse,
    kron,
    loads_matrix,
    matrix_from_json,
    rank_kernel,
    rref,
    solve_linear,
    zeros,
)
from tripartite.scalar import FieldMismatch, quad

from conftest import small_fracs


def sym(m: Matrix) -> sp.Matrix:
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in m.tolist()])


def square(n_min=1, n_max=5):
    return st.integers(n_min, n_max).flatmap(lambda n: st.lists(st.lists(small_fracs, min_size=n, max_size=n), min_size=n, max_size=n)).map(Matrix)


@given(square())
def test_det_matches_sympy(m):
    assert det(m) == sym(m).det()


@given(square())
def test_inverse(m):
    if det(m) == 0:
        with pytest.raises(Singular):
            inverse(m)
    else:
        assert m @ inverse(m) == identity(m.rows)


@given(square(1, 4))
def test_rref_matches_sympy(m):
    R, piv = rref(m)
    Rs, pivs = sym(m).rref()
    assert sym(R) == Rs and tuple(piv) == pivs


@given(square(1, 5))
def test_rank_kernel(m):
    r, ker = rank_kernel(m)
    assert r == sym(m).rank()
    assert len(ker) == m.cols - r
    for v in ker:
        assert (m @ Matrix([[x] for x in v])).is_zero()


@given(square(1, 5))
def test_charpoly_matches_sympy(m):
    p = charpoly(m)
    x = sp.Symbol("x")
    want = sp.Poly(sym(m).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert list(p.coeffs) == [sp.Rational(c) for c in want]


@given(square(1, 6))
def test_cayley_hamilton(m):
    assert charpoly(m).at_matrix(m).is_zero()


def test_cayley_hamilton_quadratic_field():
    r = quad(0, 1, 2)
    m = Matrix([[1, r], [r, Fraction(1, 3)]])
    assert charpoly(m).at_matrix(m).is_zero()


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_eigen_quadratic_rational_roots(roots):
    # companion-like: similarity of a diagonal by a unimodular matrix
    n = len(roots)
    D = diag(*roots)
    rng = random.Random(sum(roots))
    U = identity(n)
    for _ in range(3):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            E = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
            E[i][j] = Fraction(rng.randint(-2, 2))
            U = U @ Matrix(E)
    sp_ = eigen_quadratic(U @ D @ inverse(U))
    assert sp_.exact
    assert sorted(sp_.flat()) == sorted(Fraction(r) for r in roots)


def test_eigen_quadratic_surds():
    m = Matrix([[1, 1], [1, 0]])  # golden ratio
    s = eigen_quadratic(m)
    assert s.exact
    half = Fraction(1, 2)
    assert s.flat() == [quad(half, half, 5), quad(half, -half, 5)]


def test_eigen_quadratic_float_fallback():
    m = Matrix([[0, 0, 2], [1, 0, 0], [0, 1, 0]])  # x^3 - 2
    s = eigen_quadratic(m)
    assert not s.exact and s.residual < 1e-10
    assert any(abs(v - 2 ** (1 / 3)) < 1e-9 for v, _ in s.values)


@given(square(1, 5))
def test_congruence_signature_matches_eigen_signs(m):
    S = m + m.T
    p, n, z = congruence_signature(S)
    ev = np.linalg.eigvalsh(S.to_numpy().real)
    scale = max(1.0, np.abs(ev).max())
    assert (p, n, z) == (int((ev > 1e-9 * scale).sum()), int((ev < -1e-9 * scale).sum()), int((abs(ev) <= 1e-9 * scale).sum()))


def test_congruence_signature_zero_diagonal():
    assert congruence_signature(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert congruence_signature(Matrix([[2, 0, 0], [0, 0, 1], [0, 1, 0]])) == (2, 1, 0)
    with pytest.raises(NotSymmetric):
        congruence_signature(Matrix([[0, 1], [0, 0]]))


def test_kron_matches_numpy():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, Fraction(1, 2)]])
    assert np.allclose(kron(a, b).to_numpy(), np.kron(a.to_numpy(), b.to_numpy()))


def test_solve_linear():
    A = Matrix([[1, 2], [2, 4]])
    assert solve_linear(A, [1, 3]) is None
    x = solve_linear(Matrix([[2, 1], [1, 3]]), [3, 5])
    assert x == (Fraction(4, 5), Fraction(7, 5))


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(DimensionMismatch):
        Matrix([[1]]) + Matrix([[1, 2]])


def test_immutable():
    m = Matrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.array[0, 0] = 5


def test_polynomial_from_roots():
    p = Polynomial.from_roots([1, 2])
    assert list(p.coeffs) == [2, -3, 1]
    assert p(2) == 0


@given(square(1, 4))
def test_json_roundtrip(m):
    assert loads_matrix(dumps_matrix(m)) == m


def test_json_roundtrip_quadratic():
    r = quad(Fraction(1, 2), Fraction(-1, 3), 2)
    m = Matrix([[r, 1], [0, r]])
    assert loads_matrix(dumps_matrix(m)) == m
    assert json.loads(dumps_matrix(m))["field"] == {"type": "quadratic", "d": 2}


def test_json_diagnostics():
    good = json.loads(dumps_matrix(Matrix([[1, 2], [3, 4]])))
    bad = dict(good, entries=[["1", "2"], ["3", "x"]])
    with pytest.raises(ValueError, match=r"entries\[1\]\[1\]"):
        matrix_from_json(bad)
    with pytest.raises(ValueError, match="rows"):
        matrix_from_json(dict(good, rows=3))
    with pytest.raises(ValueError, match="irrational"):
        matrix_from_json(dict(good, entries=[["1", "0+1*sqrt(2)"], ["3", "4"]]))
    with pytest.raises(FieldMismatch):
        matrix_from_json(dict(good, field={"type": "quadratic", "d": 3}, entries=[["1", "0+1*sqrt(2)"], ["3", "4"]]))
