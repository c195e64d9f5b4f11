"""Factoring rational symplectic matrices and realizing the diagonal factors
by S-equivalence moves."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .algebra import q, qdiv
from .core import (Certificate, ElementaryMove, Flavor, SeifertMatrix, col_enlarge,
                   congruence, enlargement_data, is_symplectic, row_enlarge)
from .errors import DivisibilityError, IntegralityRequired, InvalidInput
from .matrices import Matrix, standard_j, symplectic_reduction


def _check_n(n) -> Fraction:
    n = Fraction(n)
    if n <= 0 or (n.numerator != 1 and n.denominator != 1):
        raise InvalidInput(f"n must be a positive integer or its reciprocal, got {n}")
    return n


def delta(n, size: int = 2) -> Matrix:
    """``diag(n, 1/n, 1, ..., 1)`` of even ``size``.

    >>> delta(3, 4)
    Matrix([['3', '0', '0', '0'], ['0', '1/3', '0', '0'], ['0', '0', '1', '0'], ['0', '0', '0', '1']])
    """
    n = _check_n(n)
    if size < 2 or size % 2:
        raise InvalidInput("size must be even and positive")
    return Matrix.diagonal([q(n), q(1 / n)] + [1] * (size - 2))


@dataclass(frozen=True)
class DeltaFactor:
    n: object
    size: int

    def matrix(self) -> Matrix:
        return delta(self.n, self.size)

    def to_json(self):
        from .algebra import format_rational
        return {"kind": "delta", "n": format_rational(self.n)}


@dataclass(frozen=True)
class IntegralFactor:
    P: Matrix

    @property
    def size(self) -> int:
        return self.P.nrows

    def matrix(self) -> Matrix:
        return self.P

    def to_json(self):
        return {"kind": "integral", "P": self.P.to_json()}


Factor = Union[DeltaFactor, IntegralFactor]


@dataclass(frozen=True)
class SymplecticFactorization:
    """``P`` as an ordered product of integral symplectic matrices and
    ``delta(n)`` factors, leftmost first."""
    factors: Tuple[Factor, ...]
    size: int

    def product(self) -> Matrix:
        out = Matrix.identity(self.size)
        for f in self.factors:
            out = out @ f.matrix()
        return out

    def to_json(self):
        return {"factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, obj, size: int) -> "SymplecticFactorization":
        from .algebra import parse_rational
        out = []
        for f in obj["factors"]:
            if f.get("kind") == "delta":
                out.append(DeltaFactor(q(parse_rational(f["n"])), size))
            elif f.get("kind") == "integral":
                out.append(IntegralFactor(Matrix.from_json(f["P"])))
            else:
                raise InvalidInput(f"unknown factor {f!r}")
        return cls(tuple(out), size)


def _lcm_den(values) -> int:
    d = 1
    for x in values:
        den = Fraction(x).denominator
        d = d * den // math.gcd(d, den)
    return d


def _sp_inverse(p: Matrix) -> Matrix:
    j = standard_j(p.nrows)
    return -(j @ p.T @ j)


def _scale(r: Fraction, size: int) -> Matrix:
    """``diag(r, 1/r, 1, ..., 1)`` for any positive rational ``r``."""
    return Matrix.diagonal([q(r), q(1 / r)] + [1] * (size - 2))


def _deltas(r: Fraction, size: int) -> List[Factor]:
    """``delta(r)`` split into a positive integer and a reciprocal factor."""
    out: List[Factor] = []
    if r.numerator != 1:
        out.append(DeltaFactor(r.numerator, size))
    if r.denominator != 1:
        out.append(DeltaFactor(Fraction(1, r.denominator), size))
    return out


def _block_swap(size: int) -> Matrix:
    rows = [[0] * size for _ in range(size)]
    perm = [2, 3, 0, 1] + list(range(4, size))
    for i, j in enumerate(perm):
        rows[i][j] = 1
    return Matrix._raw(rows, size)


def _embed(factors: List[Factor], size: int) -> List[Factor]:
    """Lift a factorization of the trailing ``size - 2`` block."""
    out: List[Factor] = []
    for f in factors:
        if isinstance(f, IntegralFactor):
            out.append(IntegralFactor(Matrix.block_diag(Matrix.identity(2), f.P)))
        else:
            swap = _block_swap(size)
            out += [IntegralFactor(swap), DeltaFactor(f.n, size), IntegralFactor(swap)]
    return out


def _factor(p: Matrix) -> List[Factor]:
    size = p.nrows
    if size == 0:
        return []
    if p.is_integral():
        return [IntegralFactor(p)]
    front: List[Factor] = []
    back: List[Factor] = []

    # make the first column e_1
    first = list(p.col(0))
    e1 = [1] + [0] * (size - 1)
    if first != e1:
        d = _lcm_den(first)
        scaled = [int(x * d) for x in first]
        g = 0
        for x in scaled:
            g = math.gcd(g, x)
        r = Fraction(d, g)
        v = [x // g for x in scaled]
        qmat = symplectic_reduction(-standard_j(size), first=v)
        p = _sp_inverse(qmat) @ p @ _scale(r, size)
        front.append(IntegralFactor(qmat))
        back = _deltas(1 / r, size) + back

    # clear the second column with a symplectic shear
    x = list(_sp_inverse(p).col(1))
    rows = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    rows[0][1] = x[0]
    for i in range(2, size):
        rows[i][1] = x[i]
    for k in range(2, size, 2):
        rows[0][k] = -x[k + 1]
        rows[0][k + 1] = x[k]
    shear = Matrix(rows, size)
    assert is_symplectic(shear)
    if shear != Matrix.identity(size):
        p = p @ shear
        n = _lcm_den(x)
        if n == 1:
            back = [IntegralFactor(_sp_inverse(shear))] + back
        else:
            m = delta(n, size) @ shear @ delta(Fraction(1, n), size)
            back = [DeltaFactor(Fraction(1, n), size), IntegralFactor(_sp_inverse(m)),
                    DeltaFactor(n, size)] + back

    head = p.submatrix(0, 2, 0, size)
    assert head.submatrix(0, 2, 0, 2) == Matrix.identity(2)
    assert head.submatrix(0, 2, 2, size).is_zero() and p.submatrix(2, size, 0, 2).is_zero()
    middle = _embed(_factor(p.submatrix(2, size, 2, size)), size)
    return front + middle + back


def _simplify_factors(factors: List[Factor], size: int) -> List[Factor]:
    out: List[Factor] = []
    for f in factors:
        if isinstance(f, IntegralFactor) and out and isinstance(out[-1], IntegralFactor):
            out[-1] = IntegralFactor(out[-1].P @ f.P)
        else:
            out.append(f)
    ident = Matrix.identity(size)
    return [f for f in out if not (isinstance(f, IntegralFactor) and f.P == ident)
            and not (isinstance(f, DeltaFactor) and f.n == 1)]


def factor_symplectic(p) -> SymplecticFactorization:
    """Write a rational symplectic ``P`` as integral symplectic matrices and
    ``delta(n)`` factors.

    >>> f = factor_symplectic(Matrix([[1, Fraction(1, 2)], [0, 1]]))
    >>> [x.to_json() for x in f.factors]
    [{'kind': 'delta', 'n': '1/2'}, {'kind': 'integral', 'P': {'rows': [['1', '2'], ['0', '1']]}}, {'kind': 'delta', 'n': '2'}]
    """
    p = p if isinstance(p, Matrix) else Matrix(p)
    if not p.is_square() or not p.is_scalar() or not is_symplectic(p):
        raise InvalidInput("P must be a rational matrix with P J P^t = J")
    factors = _simplify_factors(_factor(p), p.nrows)
    return SymplecticFactorization(tuple(factors), p.nrows)


# ---------------------------------------------------------------------------
# realizing delta(n) by moves

@dataclass(frozen=True)
class DeltaRealization:
    """``tilde_w == P tilde_v P^t``; ``tilde_v`` enlarges ``V`` and
    ``tilde_w`` enlarges ``delta(n) V delta(n)``."""
    tilde_v: SeifertMatrix
    P: Matrix
    tilde_w: SeifertMatrix
    certificate: Certificate

    @property
    def target(self) -> SeifertMatrix:
        return SeifertMatrix(self.tilde_w.matrix.submatrix(2, self.tilde_w.size,
                                                           2, self.tilde_w.size))


def _swap_matrix(n: int, size: int) -> Matrix:
    core = Matrix([[0, n, 0, -1], [0, 0, 1, 0], [1, 0, n, 0], [0, 1, 0, 0]])
    return Matrix.block_diag(core, Matrix.identity(size - 2))


def _integer_step(v: SeifertMatrix, n: int):
    """Column enlargement of ``V``, congruence matrix, row enlargement of
    ``delta(n) V delta(n)``."""
    m = v.matrix
    size = v.size
    r, s = m[1, 0], m[1, 1]
    rho = [m[k, 1] for k in range(2, size)]
    tilde_v = col_enlarge(v, qdiv(s, n * n), [qdiv(r, n), qdiv(s, n)] + [qdiv(x, n) for x in rho])
    w = congruence(v, delta(n, size)) if size else v
    p_ = m[0, 0]
    omega = [m[k, 0] for k in range(2, size)]
    tilde_w = row_enlarge(w, p_, [n * p_, qdiv(r, n)] + omega)
    return tilde_v, _swap_matrix(n, size), tilde_w


def _check_divisible(v: SeifertMatrix, n: int) -> None:
    if not v.integral:
        raise IntegralityRequired("integral realization needs an integral Seifert matrix")
    row = v.matrix.row(1)
    if any(x % n for x in row):
        raise DivisibilityError(f"second row of V is not divisible by {n}")
    if row[1] % (n * n):
        raise DivisibilityError(f"V[2,2] is not divisible by {n * n}")


def realize_delta(v, n, require_integral: bool = False) -> DeltaRealization:
    """Moves turning ``V`` into ``delta(n) V delta(n)``.

    For an integer ``n`` the certificate is a column enlargement, one
    congruence and a row reduction; for ``n = 1/m`` it is the reverse
    construction (row enlargement, congruence, column reduction).  Every
    congruence is integral; with ``require_integral`` all intermediate
    matrices are integral as well, which needs the second row of ``V`` to be
    divisible by ``n`` and ``V[2,2]`` by ``n^2`` (for ``n = 1/m`` the same
    conditions on ``delta(n) V delta(n)`` with ``m``).

    >>> r = realize_delta([[-1, 0], [1, 2]], 2)
    >>> r.target.matrix
    Matrix([['-4', '0'], ['1', '1/2']])
    """
    v = v if isinstance(v, SeifertMatrix) else SeifertMatrix.of(v)
    n = _check_n(n)
    if v.size == 0:
        raise InvalidInput("cannot realize delta on the empty matrix")
    if n.denominator == 1:
        m = n.numerator
        if require_integral:
            _check_divisible(v, m)
        tilde_v, p, tilde_w = _integer_step(v, m)
        x, rho = enlargement_data(tilde_v)
        moves = (ElementaryMove.col_enlarge(x, rho), ElementaryMove.congruence(p),
                 ElementaryMove.row_reduce())
    else:
        m = n.denominator
        w = congruence(v, delta(n, v.size))
        if require_integral:
            if not w.integral:
                raise IntegralityRequired(
                    f"delta(1/{m}) V delta(1/{m}) is not integral")
            _check_divisible(w, m)
        col_w, p_m, row_v = _integer_step(w, m)
        tilde_v, p, tilde_w = row_v, _sp_inverse(p_m), col_w
        x, rho = enlargement_data(tilde_v)
        moves = (ElementaryMove.row_enlarge(x, rho), ElementaryMove.congruence(p),
                 ElementaryMove.col_reduce())
    assert congruence(tilde_v, p) == tilde_w
    integral = v.integral and tilde_v.integral and tilde_w.integral
    flavor = Flavor.INTEGRAL if integral else Flavor.SEMI_INTEGRAL
    return DeltaRealization(tilde_v, p, tilde_w, Certificate(moves, flavor))
