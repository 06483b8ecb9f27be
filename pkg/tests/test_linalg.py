import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matlang.errors import DimensionMismatch, NotSquare, NotSymmetric
from matlang.linalg import (ExactMatrix, GaussianRational, char_poly, char_poly_faddeev, determinant, eig_sym,
                            inverse, mat_mul, matrix_power, rank)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussianRational, fracs, fracs)


def int_matrices(n_max=5, lo=-3, hi=3, square=True):
    def build(draw):
        r = draw(st.integers(1, n_max))
        c = r if square else draw(st.integers(1, n_max))
        return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]

    return st.composite(lambda draw: build(draw))()


def naive_mul(a, b):
    return [[sum(Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def leibniz_det(a):
    n = len(a)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= a[i][p[i]]
        total += term
    return total


# scalars


@given(gauss, gauss, gauss)
def test_gaussian_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.abs2() == (x * x.conj()).re


@given(gauss)
def test_gaussian_parse_roundtrip(x):
    assert GaussianRational.parse(str(x)) == x


def test_gaussian_examples():
    assert GaussianRational.parse("1/2-3/4i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert str(GaussianRational(0, -1)) == "-i"
    assert GaussianRational(2) ** 10 == 1024
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / 0
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


# matrices


@st.composite
def mul_pair(draw):
    r, k, c = (draw(st.integers(1, 4)) for _ in range(3))
    ent = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    a = [[draw(ent) for _ in range(k)] for _ in range(r)]
    b = [[draw(ent) for _ in range(c)] for _ in range(k)]
    return a, b


@given(mul_pair())
def test_mat_mul_matches_naive(pair):
    a, b = pair
    assert mat_mul(ExactMatrix(a), ExactMatrix(b)) == ExactMatrix(naive_mul(a, b))


@given(int_matrices(5))
def test_complex_entries_and_transpose(a):
    m = ExactMatrix(a)
    z = m.scale(GaussianRational(1, 1))
    assert z.conj_transpose().conj_transpose() == z
    assert mat_mul(z, z.conj_transpose()).trace().is_real()
    assert (m + m) == m.scale(2)
    assert (m - m) == ExactMatrix.zeros(*m.shape)


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        mat_mul(ExactMatrix([[1, 2]]), ExactMatrix([[1, 2]]))
    with pytest.raises(NotSquare):
        ExactMatrix([[1, 2]]).trace()
    with pytest.raises(NotSquare):
        char_poly(ExactMatrix([[1, 2]]))


@given(int_matrices(4))
def test_determinant_matches_leibniz(a):
    assert determinant(ExactMatrix(a)) == leibniz_det(a)


@settings(max_examples=60)
@given(int_matrices(5))
def test_char_poly_two_routes_and_leibniz(a):
    m = ExactMatrix(a)
    p, q = char_poly(m), char_poly_faddeev(m)
    assert p == q
    n = len(a)
    assert p.degree == n
    for t in (-2, 0, 3):
        shifted = [[(t if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        assert p(t) == leibniz_det(shifted)


@given(int_matrices(5))
def test_inverse_and_rank(a):
    m = ExactMatrix(a)
    r = rank(m)
    assert r == np.linalg.matrix_rank(np.array(a, dtype=float))
    inv = inverse(m)
    if r == len(a):
        assert mat_mul(m, inv) == ExactMatrix.identity(len(a))
    else:
        assert inv is None


@given(int_matrices(4), st.integers(0, 6))
def test_matrix_power(a, k):
    m = ExactMatrix(a)
    want = ExactMatrix.identity(len(a))
    for _ in range(k):
        want = mat_mul(want, m)
    assert matrix_power(m, k) == want


def test_exact_matrix_parsing_and_hash():
    m = ExactMatrix([["1/2", 0], [GaussianRational(0, 1), 3]])
    assert m.entry(0, 0) == Fraction(1, 2)
    assert not m.is_real()
    assert hash(m) == hash(ExactMatrix([[Fraction(1, 2), 0], [GaussianRational(0, 1), 3]]))
    assert ExactMatrix.from_int_array(np.eye(2, dtype=int)) == ExactMatrix.identity(2)


# float eigensolver


@st.composite
def symmetric(draw):
    n = draw(st.integers(1, 8))
    vals = [draw(st.floats(-5, 5, allow_nan=False)) for _ in range(n * n)]
    a = np.array(vals).reshape(n, n)
    return (a + a.T) / 2


@settings(max_examples=60)
@given(symmetric())
def test_eig_sym_matches_numpy(a):
    w, v = eig_sym(a)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-8)
    assert np.allclose(a @ v, v * w, atol=1e-8)
    assert np.allclose(v.T @ v, np.eye(a.shape[0]), atol=1e-8)


def test_eig_sym_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotSquare):
        eig_sym(np.zeros((2, 3)))
