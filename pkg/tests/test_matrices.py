from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import integer_invariant_factors, laurent_det_cofactor, leibniz_det
from seifert.algebra import LaurentPolynomial, ONE, RationalFunction, T, laurent_gcd
from seifert.errors import InvalidInput, SingularMatrix
from seifert.matrices import (Matrix, column_span_basis, hermite_normal_form, integer_kernel,
                              smith_normal_form, standard_j, symplectic_reduction)

small_ints = st.integers(-6, 6)


def square_int_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))


def int_matrices(max_n=4):
    return st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(
        lambda s: st.lists(st.lists(small_ints, min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0]))


@st.composite
def laurent_matrices(draw, n):
    def entry():
        low = draw(st.integers(-1, 1))
        coeffs = draw(st.lists(st.integers(-2, 2), max_size=2))
        return LaurentPolynomial(coeffs, low)
    return Matrix([[entry() for _ in range(n)] for _ in range(n)], n)


W7 = Matrix([[1 - T, LaurentPolynomial.constant(-1)], [T, 2 * T - 2]])


# ---- determinants --------------------------------------------------------------

def test_determinant_examples():
    assert W7.determinant() == -2 * T ** 2 + 5 * T - 2
    for n in range(5):
        assert Matrix.identity(n).determinant() == 1
    assert Matrix([[LaurentPolynomial(), -ONE], [T, LaurentPolynomial()]]).determinant() == T


def test_determinant_non_square():
    with pytest.raises(InvalidInput):
        Matrix([[1, 2, 3], [4, 5, 6]]).determinant()


@given(square_int_matrices(5))
def test_determinant_matches_permutation_expansion(rows):
    assert Matrix(rows).determinant() == leibniz_det(rows)


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(laurent_matrices(n), laurent_matrices(n))))
def test_laurent_determinant_multiplicative(pair):
    a, b = pair
    assert (a @ b).determinant() == a.determinant() * b.determinant()
    assert a.determinant() == laurent_det_cofactor(a)


@given(square_int_matrices(), square_int_matrices())
def test_determinant_multiplicative(a, b):
    if len(a) == len(b):
        a, b = Matrix(a), Matrix(b)
        assert (a @ b).determinant() == a.determinant() * b.determinant()


# ---- inverses ----------------------------------------------------------------

def test_inverse_examples():
    assert Matrix.diagonal([2, Fraction(1, 2)]).inverse() == Matrix.diagonal([Fraction(1, 2), 2])
    assert Matrix([[-1, 0], [1, 2]]).inverse() == Matrix([[-1, 0], [Fraction(1, 2), Fraction(1, 2)]])
    inv = W7.inverse()
    assert all(isinstance(x, (RationalFunction, LaurentPolynomial, int)) for x in inv.entries())
    assert W7 @ inv == Matrix.identity(2).map(LaurentPolynomial.constant)
    delta = -2 * T ** 2 + 5 * T - 2
    assert inv[0, 0] == RationalFunction(2 * T - 2, delta)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        Matrix([[1, 2], [2, 4]]).inverse()


@given(square_int_matrices())
def test_inverse_contract(rows):
    m = Matrix(rows)
    if m.determinant() != 0:
        assert m @ m.inverse() == Matrix.identity(m.nrows)
        assert m.inverse() @ m == Matrix.identity(m.nrows)


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(laurent_matrices))
def test_laurent_inverse_contract(m):
    if m.determinant():
        prod = m @ m.inverse()
        assert prod == Matrix.identity(m.nrows).map(LaurentPolynomial.constant)


# ---- Smith normal form ---------------------------------------------------------

def test_smith_examples():
    assert smith_normal_form(Matrix.diagonal([4, 6])).diag == (2, 12)
    assert smith_normal_form(Matrix.identity(3)).diag == (1, 1, 1)
    snf = smith_normal_form(W7)
    assert snf.diag[0].is_unit()
    assert snf.diag[1].unit_normal() == (2 * T ** 2 - 5 * T + 2)


@given(int_matrices(4))
def test_integer_smith_matches_minor_gcds(rows):
    m = Matrix(rows)
    snf = smith_normal_form(m)
    assert snf.left @ m @ snf.right == snf.diagonal_matrix()
    assert abs(snf.left.determinant()) == 1 and abs(snf.right.determinant()) == 1
    nonneg = [abs(d) for d in snf.diag]
    assert nonneg == integer_invariant_factors(rows)
    for a, b in zip(nonneg, nonneg[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(laurent_matrices))
def test_laurent_smith_matches_minor_gcds(m):
    snf = smith_normal_form(m)
    assert snf.left @ m @ snf.right == snf.diagonal_matrix()
    assert snf.left.determinant().is_unit() and snf.right.determinant().is_unit()
    n = m.nrows
    from helpers import minors
    prod = ONE
    for k in range(1, n + 1):
        g = LaurentPolynomial()
        for x in minors(m.rows, k):
            g = laurent_gcd(g, x if isinstance(x, LaurentPolynomial) else LaurentPolynomial.constant(x))
        prod = prod * snf.diag[k - 1]
        if not g:
            assert not prod
        else:
            assert prod.unit_normal() == g.unit_normal() or prod.primitive() == g.primitive()
    for a, b in zip(snf.diag, snf.diag[1:]):
        assert (not b) or (a and a.divides(b))


# ---- Hermite normal form --------------------------------------------------------

def _is_column_hermite(h: Matrix) -> bool:
    row = 0
    for j in range(h.ncols):
        while row < h.nrows and h[row, j] == 0 and all(h[row, k] == 0 for k in range(j, h.ncols)):
            row += 1
        if row == h.nrows:
            return all(h[i, k] == 0 for i in range(h.nrows) for k in range(j, h.ncols))
        if h[row, j] <= 0 or any(h[row, k] for k in range(j + 1, h.ncols)):
            return False
        if any(not (0 <= h[row, k] < h[row, j]) for k in range(j)):
            return False
        row += 1
    return True


def test_hermite_examples():
    u, h = hermite_normal_form(Matrix([[2, 0], [0, 2]]))
    assert h == Matrix([[2, 0], [0, 2]])
    u, h = hermite_normal_form(Matrix([[2, 1], [0, 1]]))
    assert h == Matrix([[1, 0], [1, 2]])
    assert h[0, 0] == 1 and h[0, 1] == 0
    assert abs(h.determinant()) == 2
    u, h = hermite_normal_form(Matrix.zeros(0, 0))
    assert h.shape == (0, 0)


@given(int_matrices(4))
def test_hermite_contract(rows):
    m = Matrix(rows)
    u, h = hermite_normal_form(m)
    assert abs(u.determinant()) == 1
    assert m @ u == h
    assert _is_column_hermite(h)


# ---- lattice helpers -------------------------------------------------------------

@given(int_matrices(4))
def test_integer_kernel(rows):
    kernel = integer_kernel(rows)
    m = Matrix(rows)
    for k in kernel:
        assert m @ Matrix.column(k) == Matrix.zeros(m.nrows, 1)
    rank = sum(1 for d in smith_normal_form(m).diag if d)
    assert len(kernel) == m.ncols - rank


def test_column_span_basis_drops_dependencies():
    basis = column_span_basis([[2, 0], [0, 2], [1, 1]], 2)
    assert len(basis) == 2
    assert abs(Matrix.from_columns(basis).determinant()) == 2


@settings(max_examples=50)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_symplectic_reduction_scrambled(g, rnd):
    n = 2 * g
    u = Matrix.identity(n)
    for _ in range(6):
        i, j = rnd.sample(range(n), 2)
        e = Matrix.identity(n).rows
        rows = [list(r) for r in e]
        rows[i][j] = rnd.randint(-3, 3)
        u = u @ Matrix(rows)
    gram = u.T @ (-standard_j(n)) @ u
    w = symplectic_reduction(gram)
    assert w.T @ gram @ w == -standard_j(n)
    assert abs(w.determinant()) == 1


def test_symplectic_reduction_with_first_vector():
    w = symplectic_reduction(-standard_j(4), first=[1, 2, 3, 5])
    assert list(w.col(0)) == [1, 2, 3, 5]
    assert w.T @ (-standard_j(4)) @ w == -standard_j(4)


def test_matrix_json_roundtrip():
    m = Matrix([[1, Fraction(-1, 2)], [0, 3]])
    assert Matrix.from_json(m.to_json()) == m
    assert m.to_json() == {"rows": [["1", "-1/2"], ["0", "3"]]}
    assert Matrix.from_json(W7.to_json(), laurent=True) == W7


def test_empty_matrix_shapes():
    assert Matrix.zeros(0, 3).T.shape == (3, 0)
    assert (Matrix.zeros(2, 0) @ Matrix.zeros(0, 3)) == Matrix.zeros(2, 3)
