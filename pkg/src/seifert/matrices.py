"""Dense exact matrices over Z, Q, Q[t, 1/t] and Q(t).

A single immutable :class:`Matrix` type holds entries of any of these rings;
algorithms dispatch on the entry types they find.  Determinants are computed
by fraction-free (Bareiss) elimination, inverses over Q[t, 1/t] by
fraction-free Gauss-Jordan, and Smith forms by Euclidean pivoting with
least-size pivots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .algebra import (LaurentPolynomial, RationalFunction, format_laurent,
                      format_rational, is_integer, parse_rational, q, qdiv)
from .errors import InvalidInput, SingularMatrix


def _norm_entry(x):
    if isinstance(x, (LaurentPolynomial, RationalFunction)):
        return x
    return q(x)


class Matrix:
    """Immutable dense matrix.

    >>> m = Matrix([[1, 2], [3, 4]])
    >>> m.determinant()
    -2
    >>> (m @ m.inverse()) == Matrix.identity(2)
    True
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rows = tuple(tuple(_norm_entry(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise InvalidInput("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows, ncols):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(obj, "nrows", len(obj.rows))
        object.__setattr__(obj, "ncols", ncols)
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "Matrix":
        m = n if m is None else m
        return cls._raw([[0] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls([[x] for x in entries], 1)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[r + i][c + j] = b.rows[i][j]
            r += b.nrows
            c += b.ncols
        return cls._raw(out, m)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return cls.zeros(0, 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)], len(cols))

    # -- access ------------------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> Tuple:
        return self.rows[i]

    def col(self, j: int) -> Tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> List[Tuple]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entries(self):
        for r in self.rows:
            yield from r

    def is_integral(self) -> bool:
        """All entries are integers (or integral Laurent polynomials)."""
        for x in self.entries():
            if isinstance(x, LaurentPolynomial):
                if not x.is_integral():
                    return False
            elif isinstance(x, RationalFunction):
                if not (x.is_laurent() and x.num.is_integral()):
                    return False
            elif type(x) is not int:
                return False
        return True

    def is_scalar(self) -> bool:
        return all(type(x) is int or isinstance(x, Fraction) for x in self.entries())

    def is_zero(self) -> bool:
        return not any(self.entries())

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw([r[c0:c1] for r in self.rows[r0:r1]], max(0, c1 - c0))

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def map(self, fn: Callable) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows], self.ncols)

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix._raw([[] for _ in range(self.ncols)], 0)
        return Matrix._raw([list(c) for c in zip(*self.rows)], self.nrows)

    # -- arithmetic --------------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise InvalidInput(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return Matrix._raw([[_simplify(a * c) for a in r] for r in self.rows], self.ncols)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Matrix":
        return Matrix._raw([[_simplify(_div(a, c)) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InvalidInput(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(_simplify(acc))
            out.append(row)
        return Matrix._raw(out, other.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    # -- algebra -----------------------------------------------------------------

    def determinant(self):
        return determinant(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def substitute(self, point) -> "Matrix":
        """Evaluate every (Laurent or rational-function) entry at ``point``."""
        def ev(x):
            if isinstance(x, (LaurentPolynomial, RationalFunction)):
                return x(point)
            return x
        return self.map(ev)

    # -- formatting --------------------------------------------------------------

    def __repr__(self):
        return f"Matrix({[[_fmt(x) for x in r] for r in self.rows]})"

    def pretty(self) -> str:
        """Aligned text rendering."""
        if not self.nrows or not self.ncols:
            return f"[] ({self.nrows}x{self.ncols})"
        cells = [[_fmt(x) for x in r] for r in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.nrows)) for j in range(self.ncols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]"
                         for r in cells)

    def to_json(self):
        return {"rows": [[entry_to_json(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj, laurent: bool = False) -> "Matrix":
        if isinstance(obj, dict):
            if "rows" not in obj:
                raise InvalidInput("matrix object needs a 'rows' key")
            rows = obj["rows"]
        else:
            rows = obj
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InvalidInput("matrix rows must be a list of lists")
        ncols = len(rows[0]) if rows else 0
        return cls([[entry_from_json(x, laurent) for x in r] for r in rows], ncols)


def _fmt(x) -> str:
    if isinstance(x, LaurentPolynomial):
        return format_laurent(x)
    if isinstance(x, RationalFunction):
        return str(x)
    return format_rational(x)


def entry_to_json(x):
    if isinstance(x, LaurentPolynomial):
        return x.to_json()
    if isinstance(x, RationalFunction):
        if x.is_laurent():
            return x.num.to_json()
        return x.to_json()
    return format_rational(x)


def entry_from_json(x, laurent: bool = False):
    if isinstance(x, dict):
        if "num" in x:
            return RationalFunction.from_json(x)
        return LaurentPolynomial.from_json(x)
    value = parse_rational(x)
    return LaurentPolynomial.constant(value) if laurent else value


def _simplify(x):
    if isinstance(x, (int, Fraction)):
        return q(x)
    return x


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return qdiv(a, b)
    if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
        return RationalFunction._coerce(a) / b
    if isinstance(b, (int, Fraction)):
        return a / b
    return RationalFunction(a, b)


def _exact_div(a, b):
    """Division known to be exact within the ring of the operands."""
    if type(a) is int and type(b) is int:
        d, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return d
    if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
        return RationalFunction._coerce(a) / b
    if isinstance(a, LaurentPolynomial) or isinstance(b, LaurentPolynomial):
        return LaurentPolynomial._coerce(a).exact_div(LaurentPolynomial._coerce(b))
    return qdiv(a, b)


def _size(x):
    if isinstance(x, LaurentPolynomial):
        return (x.span, len(str(x)))
    if isinstance(x, RationalFunction):
        return (x.num.span + x.den.span, 0)
    return (0, abs(x))


# ---------------------------------------------------------------------------

def determinant(m: Matrix):
    """Exact determinant by fraction-free elimination.

    >>> from seifert.algebra import T
    >>> str(determinant(Matrix([[1 - T, -1], [T, 2 * T - 2]])))
    '-2t^2 + 5t - 2'
    """
    if not m.is_square():
        raise InvalidInput(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if a[i][k]:
                if piv is None or _size(a[i][k]) < _size(a[piv][k]):
                    piv = i
        if piv is None:
            return _zero_like(m)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                val = akk * row_i[j] - aik * row_k[j]
                row_i[j] = _exact_div(val, prev) if prev != 1 else val
            row_i[k] = 0
        prev = akk
    d = a[n - 1][n - 1]
    d = -d if sign < 0 else d
    return _simplify(d)


def _zero_like(m: Matrix):
    for x in m.entries():
        if isinstance(x, LaurentPolynomial):
            return LaurentPolynomial()
        if isinstance(x, RationalFunction):
            return RationalFunction(0)
    return 0


def inverse(m: Matrix) -> Matrix:
    """Inverse over the fraction field of the entries' ring.

    Scalar matrices give rational matrices; Laurent matrices give matrices of
    :class:`RationalFunction` computed as adjugate over determinant.
    """
    if not m.is_square():
        raise InvalidInput("inverse of a non-square matrix")
    if any(isinstance(x, LaurentPolynomial) for x in m.entries()) and \
            not any(isinstance(x, RationalFunction) for x in m.entries()):
        adj, det = adjugate_and_determinant(m)
        return adj.map(lambda x: RationalFunction(LaurentPolynomial._coerce(x), det))
    return _gauss_jordan_inverse(m)


def _gauss_jordan_inverse(m: Matrix) -> Matrix:
    n = m.nrows
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [_simplify(_div(x, p)) for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [_simplify(x - f * y) for x, y in zip(a[i], a[k])]
    return Matrix._raw([r[n:] for r in a], n)


def adjugate_and_determinant(m: Matrix) -> Tuple[Matrix, object]:
    """Fraction-free Gauss-Jordan: returns ``(adj, det)`` with
    ``m @ adj == det * I``.  Raises :class:`SingularMatrix` if ``det == 0``."""
    n = m.nrows
    a = [[LaurentPolynomial._coerce(x) if isinstance(x, LaurentPolynomial) else x for x in r]
         + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    prev = 1
    sign = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k]:
                if piv is None or _size(a[i][k]) < _size(a[piv][k]):
                    piv = i
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(2 * n):
                if j == k:
                    continue
                val = akk * row_i[j] - aik * row_k[j] if aik else akk * row_i[j]
                row_i[j] = _exact_div(val, prev) if prev != 1 else val
            row_i[k] = 0
        prev = akk
    # the left block is now prev * I and the right block is prev * m^-1
    det = prev if sign > 0 else -prev
    adj = [[_simplify(x if sign > 0 else -x) for x in r[n:]] for r in a]
    return Matrix._raw(adj, n), _simplify(det)


# ---------------------------------------------------------------------------
# Euclidean rings used by the normal forms

class _Integers:
    name = "ZZ"

    @staticmethod
    def size(x):
        return abs(x)

    @staticmethod
    def divmod(a, b):
        return divmod(a, b)

    @staticmethod
    def unit_for(x):
        return -1 if x < 0 else 1


class _Polynomials:
    """Q[t] with entries represented as LaurentPolynomial, exponents >= 0."""
    name = "Q[t]"

    @staticmethod
    def size(x):
        return x.degree

    @staticmethod
    def divmod(a, b):
        return a.poly_divmod(b)

    @staticmethod
    def unit_for(x):
        lead = x.leading_coefficient
        return qdiv(1, lead)


def _smith(a: List[List], ring) -> Tuple[List[List], List[List], List[List]]:
    """In-place Smith reduction of ``a``; returns ``(L, D, R)``."""
    m = len(a)
    n = len(a[0]) if m else 0
    left = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def add_row(dst, src, f):   # row_dst += f * row_src
        a[dst] = [x + f * y if y else x for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y if y else x for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, f):   # col_dst += f * col_src
        for r in a:
            if r[src]:
                r[dst] = r[dst] + f * r[src]
        for r in right:
            if r[src]:
                r[dst] = r[dst] + f * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j]:
                        s = ring.size(a[i][j])
                        if best is None or s < best[0]:
                            best = (s, i, j)
            if best is None:
                return left, a, right
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
                left[t], left[i] = left[i], left[t]
            if j != t:
                for r in a:
                    r[t], r[j] = r[j], r[t]
                for r in right:
                    r[t], r[j] = r[j], r[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    quo, rem = ring.divmod(a[i][t], p)
                    add_row(i, t, -quo)
                    if rem:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    quo, rem = ring.divmod(a[t][j], p)
                    add_col(j, t, -quo)
                    if rem:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] and ring.divmod(a[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        u = ring.unit_for(a[t][t])
        if u != 1:
            a[t] = [x * u for x in a[t]]
            left[t] = [x * u for x in left[t]]
    return left, a, right


@dataclass(frozen=True)
class SmithForm:
    """``left @ input @ right`` is diagonal with entries ``diag``, each
    dividing the next; ``left`` and ``right`` are invertible over ``ring``."""
    left: Matrix
    diag: Tuple
    right: Matrix
    ring: str

    def diagonal_matrix(self) -> Matrix:
        n, m = self.left.nrows, self.right.ncols
        out = [[0] * m for _ in range(n)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return Matrix(out, m)


def smith_normal_form(m: Matrix) -> SmithForm:
    """Smith form over Z (integer entries) or Q[t, 1/t] (Laurent entries).

    >>> smith_normal_form(Matrix([[4, 0], [0, 6]])).diag
    (2, 12)
    """
    if any(isinstance(x, LaurentPolynomial) for x in m.entries()):
        return _smith_laurent(m)
    if not all(is_integer(x) for x in m.entries()):
        raise InvalidInput("Smith form needs an integer or Laurent matrix")
    a = [[int(x) for x in r] for r in m.rows]
    left, d, right = _smith(a, _Integers)
    k = min(m.nrows, m.ncols)
    return SmithForm(Matrix._raw(left, m.nrows), tuple(d[i][i] for i in range(k)),
                     Matrix._raw(right, m.ncols), "ZZ")


def _smith_laurent(m: Matrix) -> SmithForm:
    lp = LaurentPolynomial._coerce
    rows = [[lp(x) for x in r] for r in m.rows]
    shifts = []
    for r in rows:
        lows = [x.low for x in r if x]
        k = -min(lows) if lows and min(lows) < 0 else 0
        shifts.append(k)
    a = [[x.shift(k) for x in r] for r, k in zip(rows, shifts)]
    left, d, right = _smith(a, _Polynomials)
    k = min(m.nrows, m.ncols)
    diag = []
    # absorb the row shifts, then move units c*t^j of each diagonal entry into left
    left = [[lp(x).shift(shifts[j]) if x else LaurentPolynomial() for j, x in enumerate(r)]
            for r in left]
    for i in range(k):
        e = d[i][i]
        if e:
            norm = e.primitive()
            unit = e.exact_div(norm)        # c * t^j
            inv = unit ** -1
            left[i] = [x * inv for x in left[i]]
            e = norm
        diag.append(e)
    right = [[lp(x) for x in r] for r in right]
    return SmithForm(Matrix._raw(left, m.nrows), tuple(diag),
                     Matrix._raw(right, m.ncols), "Q[t,1/t]")


# ---------------------------------------------------------------------------
# integer lattices

def _to_int_rows(m: Matrix) -> List[List[int]]:
    if not all(is_integer(x) for x in m.entries()):
        raise InvalidInput("integer matrix required")
    return [[int(x) for x in r] for r in m.rows]


def row_hermite(a: List[List[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Row-style Hermite form: returns ``(H, U)`` with ``U @ a == H``,
    ``U`` unimodular, ``H`` upper echelon with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``."""
    a = [list(r) for r in a]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - f * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hermite_normal_form(m: Matrix) -> Tuple[Matrix, Matrix]:
    """Column Hermite form of an integer matrix.

    Returns ``(transform, hnf)`` with ``hnf == m @ transform``, ``transform``
    unimodular and ``hnf`` lower echelon: positive pivots, entries left of a
    pivot reduced modulo it, zero columns last.  The columns of ``hnf`` span
    the same lattice as the columns of ``m``.

    >>> u, h = hermite_normal_form(Matrix([[2, 1], [0, 1]]))
    >>> h
    Matrix([['1', '0'], ['1', '2']])
    """
    if m.nrows == 0 or m.ncols == 0:
        return Matrix.identity(m.ncols), m
    h, u = row_hermite(_to_int_rows(m.T))
    return Matrix._raw(u, m.ncols).T, Matrix._raw(h, m.nrows).T


def column_span_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Basis (as a list of integer vectors) of the Z-span of ``vectors``."""
    if not vectors:
        return []
    h, _ = row_hermite([list(v) for v in vectors])
    return [r for r in h if any(r)]


def integer_kernel(rows: List[List[int]]) -> List[List[int]]:
    """Basis of ``{x in Z^n : A x = 0}`` for the integer matrix ``A``."""
    if not rows:
        return []
    n = len(rows[0])
    at = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    h, u = row_hermite(at)
    return [u[i] for i in range(n) if not any(h[i])]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout_vector(values: Sequence[int]) -> Tuple[int, List[int]]:
    """``(g, u)`` with ``sum(u_i * v_i) == g == gcd(values)``."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if not v:
            continue
        ng, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = ng
    return g, coeffs


def primitive_vector(v: Sequence) -> List[int]:
    """Clear denominators, divide by the content and make the first nonzero
    entry positive."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return ints
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [x // g for x in ints]


def standard_j(size: int) -> Matrix:
    """Block diagonal matrix with blocks ``[[0, -1], [1, 0]]``."""
    if size % 2:
        raise InvalidInput("J needs an even size")
    out = [[0] * size for _ in range(size)]
    for k in range(0, size, 2):
        out[k][k + 1] = -1
        out[k + 1][k] = 1
    return Matrix._raw(out, size)


def symplectic_reduction(gram: Matrix, first: Optional[Sequence[int]] = None) -> Matrix:
    """Unimodular integer ``U`` with ``U.T @ gram @ U == -J``.

    ``gram`` must be an integral, antisymmetric, unimodular Gram matrix.  If
    ``first`` (a primitive integer vector) is given it becomes the first
    column of ``U``.  Greedy symplectic Gram-Schmidt: pick a vector, find a
    partner pairing to 1 by a Bezout combination, project the rest onto the
    orthogonal complement, recurse.
    """
    g = _to_int_rows(gram)
    n = len(g)

    def form(x, y):
        return sum(x[i] * sum(g[i][j] * y[j] for j in range(n) if y[j]) for i in range(n) if x[i])

    basis = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    out: List[List[int]] = []
    start = list(first) if first is not None else None
    while basis:
        b1 = start if start is not None else basis[0]
        start = None
        s = [form(b1, c) for c in basis]
        d, u = bezout_vector(s)
        if d != 1:
            raise InvalidInput("form is not unimodular on this lattice "
                               "(or the chosen vector is not primitive)")
        b2 = [sum(u[k] * basis[k][i] for k in range(len(basis))) for i in range(n)]
        proj = []
        for c in basis:
            x2 = form(c, b2)
            x1 = form(b1, c)
            proj.append([c[i] - x2 * b1[i] - x1 * b2[i] for i in range(n)])
        out += [b1, b2]
        basis = column_span_basis(proj, n)
    return Matrix.from_columns(out) if out else Matrix.zeros(0, 0)
