"""Seifert matrices, elementary S-equivalence moves and certificates."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .algebra import (LaurentPolynomial, T, format_rational, is_integer, parse_rational, q)
from .errors import (CertificateError, InvalidCongruence, InvalidInput,
                     NotReducible, NotSeifertMatrix, SeifertError)
from .matrices import Matrix, primitive_vector, standard_j, symplectic_reduction


def _as_matrix(m) -> Matrix:
    if isinstance(m, SeifertMatrix):
        return m.matrix
    if isinstance(m, Matrix):
        return m
    return Matrix(m, len(m[0]) if m else 0)


@dataclass(frozen=True)
class SeifertMatrix:
    """A rational ``2g x 2g`` matrix ``V`` with ``V - V^t = J``.

    >>> SeifertMatrix.of([[-1, 0], [1, 2]]).genus
    1
    """
    matrix: Matrix

    def __post_init__(self):
        _check_seifert(self.matrix)

    @classmethod
    def of(cls, rows) -> "SeifertMatrix":
        return cls(_as_matrix(rows))

    @classmethod
    def empty(cls) -> "SeifertMatrix":
        return cls(Matrix.zeros(0, 0))

    @property
    def size(self) -> int:
        return self.matrix.nrows

    @property
    def genus(self) -> int:
        return self.matrix.nrows // 2

    @property
    def integral(self) -> bool:
        return self.matrix.is_integral()

    def __getitem__(self, idx):
        return self.matrix[idx]

    def determinant(self):
        return self.matrix.determinant()

    def is_invertible(self) -> bool:
        return self.size == 0 or self.matrix.determinant() != 0

    def to_json(self):
        return self.matrix.to_json()

    def pretty(self) -> str:
        return self.matrix.pretty()


def _check_seifert(m: Matrix) -> None:
    if not m.is_square():
        raise NotSeifertMatrix(f"matrix of shape {m.nrows}x{m.ncols} is not square")
    if m.nrows % 2:
        raise NotSeifertMatrix(f"size {m.nrows} is odd")
    if not m.is_scalar():
        raise NotSeifertMatrix("entries must be rational numbers")
    j = standard_j(m.nrows)
    for a in range(m.nrows):
        for b in range(m.nrows):
            diff = m[a, b] - m[b, a]
            if diff != j[a, b]:
                raise NotSeifertMatrix(
                    f"entry ({a + 1},{b + 1}): V - V^t is {format_rational(diff)}, "
                    f"J has {j[a, b]}", entry=(a + 1, b + 1))


def validate(m) -> SeifertMatrix:
    """Accept ``m`` iff it is square of even size with ``m - m^t = J``."""
    return SeifertMatrix(_as_matrix(m))


def is_symplectic(p: Matrix) -> bool:
    if not p.is_square() or p.nrows % 2:
        return False
    j = standard_j(p.nrows)
    return p @ j @ p.T == j


# ---------------------------------------------------------------------------
# moves

class MoveKind(str, Enum):
    ROW_ENLARGE = "row_enlarge"
    COL_ENLARGE = "col_enlarge"
    ROW_REDUCE = "row_reduce"
    COL_REDUCE = "col_reduce"
    CONGRUENCE = "congruence"


class Flavor(str, Enum):
    RATIONAL = "rational"
    SEMI_INTEGRAL = "semi-integral"
    INTEGRAL = "integral"


@dataclass(frozen=True)
class ElementaryMove:
    kind: MoveKind
    x: Optional[object] = None
    rho: Optional[Tuple] = None
    P: Optional[Matrix] = None

    def __post_init__(self):
        if self.kind in (MoveKind.ROW_ENLARGE, MoveKind.COL_ENLARGE):
            if self.x is None or self.rho is None:
                raise InvalidInput("enlargement needs x and rho")
            object.__setattr__(self, "x", q(self.x))
            object.__setattr__(self, "rho", tuple(q(r) for r in self.rho))
        elif self.kind is MoveKind.CONGRUENCE:
            if self.P is None:
                raise InvalidInput("congruence needs a matrix P")
            if not is_symplectic(self.P):
                raise InvalidCongruence("congruence matrix does not satisfy P J P^t = J")

    @classmethod
    def row_enlarge(cls, x, rho) -> "ElementaryMove":
        return cls(MoveKind.ROW_ENLARGE, x, tuple(rho))

    @classmethod
    def col_enlarge(cls, x, rho) -> "ElementaryMove":
        return cls(MoveKind.COL_ENLARGE, x, tuple(rho))

    @classmethod
    def row_reduce(cls) -> "ElementaryMove":
        return cls(MoveKind.ROW_REDUCE)

    @classmethod
    def col_reduce(cls) -> "ElementaryMove":
        return cls(MoveKind.COL_REDUCE)

    @classmethod
    def congruence(cls, p) -> "ElementaryMove":
        return cls(MoveKind.CONGRUENCE, P=_as_matrix(p))

    def data_integral(self) -> bool:
        if self.kind is MoveKind.CONGRUENCE:
            return self.P.is_integral()
        if self.kind in (MoveKind.ROW_ENLARGE, MoveKind.COL_ENLARGE):
            return is_integer(self.x) and all(is_integer(r) for r in self.rho)
        return True

    def to_json(self):
        out = {"kind": self.kind.value}
        if self.kind in (MoveKind.ROW_ENLARGE, MoveKind.COL_ENLARGE):
            out["x"] = format_rational(self.x)
            out["rho"] = [format_rational(r) for r in self.rho]
        elif self.kind is MoveKind.CONGRUENCE:
            out["P"] = self.P.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "ElementaryMove":
        try:
            kind = MoveKind(obj["kind"])
        except (KeyError, ValueError, TypeError):
            raise InvalidInput(f"unknown move: {obj!r}") from None
        if kind in (MoveKind.ROW_ENLARGE, MoveKind.COL_ENLARGE):
            return cls(kind, parse_rational(obj.get("x", "0")),
                       tuple(parse_rational(r) for r in obj.get("rho", [])))
        if kind is MoveKind.CONGRUENCE:
            return cls(kind, P=Matrix.from_json(obj["P"]))
        return cls(kind)


@dataclass(frozen=True)
class Certificate:
    """An ordered list of elementary moves with an integrality flavor."""
    moves: Tuple[ElementaryMove, ...] = ()
    flavor: Flavor = Flavor.RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    def __len__(self):
        return len(self.moves)

    def __add__(self, other: "Certificate") -> "Certificate":
        order = [Flavor.RATIONAL, Flavor.SEMI_INTEGRAL, Flavor.INTEGRAL]
        flavor = min(self.flavor, other.flavor, key=order.index)
        return Certificate(self.moves + other.moves, flavor)

    def to_json(self):
        return {"flavor": self.flavor.value, "moves": [m.to_json() for m in self.moves]}

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        if not isinstance(obj, dict) or "moves" not in obj:
            raise InvalidInput("certificate object needs a 'moves' list")
        try:
            flavor = Flavor(obj.get("flavor", "rational"))
        except ValueError:
            raise InvalidInput(f"unknown flavor {obj.get('flavor')!r}") from None
        return cls(tuple(ElementaryMove.from_json(m) for m in obj["moves"]), flavor)


# ---------------------------------------------------------------------------
# elementary operations

def _enlarge(v: SeifertMatrix, x, rho, corner: Tuple[int, int]) -> SeifertMatrix:
    n = v.size
    rho = [q(r) for r in rho]
    if len(rho) != n:
        raise InvalidInput(f"rho has length {len(rho)}, expected {n}")
    x = q(x)
    rows = [[0] * (n + 2) for _ in range(n + 2)]
    rows[1][0], rows[0][1] = corner
    rows[1][1] = x
    for k in range(n):
        rows[1][k + 2] = rho[k]
        rows[k + 2][1] = rho[k]
        for m in range(n):
            rows[k + 2][m + 2] = v.matrix[k, m]
    return SeifertMatrix(Matrix._raw(rows, n + 2))


def row_enlarge(v: SeifertMatrix, x, rho) -> SeifertMatrix:
    """The block matrix ``[[0, 0, 0], [1, x, rho^t], [0, rho, V]]``.

    >>> row_enlarge(SeifertMatrix.empty(), 0, []).matrix
    Matrix([['0', '0'], ['1', '0']])
    """
    return _enlarge(v, x, rho, (1, 0))


def col_enlarge(v: SeifertMatrix, x, rho) -> SeifertMatrix:
    """The block matrix ``[[0, -1, 0], [0, x, rho^t], [0, rho, V]]``."""
    return _enlarge(v, x, rho, (0, -1))


def _matches(w: SeifertMatrix, kind: MoveKind) -> bool:
    m = w.matrix
    n = m.nrows
    if n < 2:
        return False
    first_row = [0, 0] if kind is MoveKind.ROW_REDUCE else [0, -1]
    first_col = [0, 1] if kind is MoveKind.ROW_REDUCE else [0, 0]
    if list(m.row(0)[:2]) != first_row or list(m.col(0)[:2]) != first_col:
        return False
    if any(m[0, j] for j in range(2, n)) or any(m[i, 0] for i in range(2, n)):
        return False
    return all(m[1, k] == m[k, 1] for k in range(2, n))


def enlargement_data(w: SeifertMatrix) -> Tuple[object, Tuple]:
    """``(x, rho)`` of an enlarged matrix (row or column pattern)."""
    m = w.matrix
    return m[1, 1], tuple(m[k, 1] for k in range(2, m.nrows))


def row_reduce(w: SeifertMatrix) -> SeifertMatrix:
    if not _matches(w, MoveKind.ROW_REDUCE):
        raise NotReducible("matrix does not match the row-enlargement pattern")
    return SeifertMatrix(w.matrix.submatrix(2, w.size, 2, w.size))


def col_reduce(w: SeifertMatrix) -> SeifertMatrix:
    if not _matches(w, MoveKind.COL_REDUCE):
        raise NotReducible("matrix does not match the column-enlargement pattern")
    return SeifertMatrix(w.matrix.submatrix(2, w.size, 2, w.size))


def reduce(w: SeifertMatrix) -> Tuple[SeifertMatrix, MoveKind]:
    """Strip the first two rows and columns of a row or column enlargement."""
    for kind, fn in ((MoveKind.ROW_REDUCE, row_reduce), (MoveKind.COL_REDUCE, col_reduce)):
        if _matches(w, kind):
            return fn(w), kind
    raise NotReducible("matrix matches neither enlargement pattern")


def congruence(v: SeifertMatrix, p) -> SeifertMatrix:
    """``P V P^t`` for a symplectic ``P`` (``P J P^t = J``)."""
    p = _as_matrix(p)
    if p.shape != (v.size, v.size):
        raise InvalidCongruence(f"P has shape {p.shape}, expected {(v.size, v.size)}")
    if not is_symplectic(p):
        raise InvalidCongruence("P J P^t != J")
    return SeifertMatrix(p @ v.matrix @ p.T)


# ---------------------------------------------------------------------------
# certificates

class Applied(NamedTuple):
    """Result of a certificate together with the generator transport: column
    ``i`` of ``transport`` expresses the image of the ``i``-th generator of
    the source Alexander module in the generators of the target's."""
    seifert: SeifertMatrix
    transport: Matrix


def _lp(x) -> LaurentPolynomial:
    return x if isinstance(x, LaurentPolynomial) else LaurentPolynomial.constant(x)


def _reduction_transport(w: SeifertMatrix, kind: MoveKind) -> Matrix:
    # relations of t*W - W^t: b_2 = 0 and b_1 = c(t) * sum rho_k b_{k+2}
    n = w.size - 2
    _, rho = enlargement_data(w)
    c = T - 1 if kind is MoveKind.ROW_REDUCE else (T - 1) * T ** -1
    rows = [[LaurentPolynomial()] * (n + 2) for _ in range(n)]
    for k in range(n):
        rows[k][0] = c * rho[k]
        rows[k][k + 2] = LaurentPolynomial.constant(1)
    return Matrix._raw(rows, n + 2)


def _enlargement_transport(n: int) -> Matrix:
    rows = [[0] * n for _ in range(n + 2)]
    for k in range(n):
        rows[k + 2][k] = 1
    return Matrix._raw(rows, n)


def apply_move(v: SeifertMatrix, move: ElementaryMove) -> SeifertMatrix:
    if move.kind is MoveKind.ROW_ENLARGE:
        return row_enlarge(v, move.x, move.rho)
    if move.kind is MoveKind.COL_ENLARGE:
        return col_enlarge(v, move.x, move.rho)
    if move.kind is MoveKind.ROW_REDUCE:
        return row_reduce(v)
    if move.kind is MoveKind.COL_REDUCE:
        return col_reduce(v)
    return congruence(v, move.P)


def apply_certificate(v: SeifertMatrix, cert: Certificate) -> Applied:
    """Apply every move in order, enforcing the certificate's flavor.

    Raises :class:`CertificateError` naming the first offending move.
    """
    flavor = cert.flavor
    if flavor is Flavor.INTEGRAL and not v.integral:
        raise CertificateError(0, "integral certificate applied to a non-integral matrix")
    transport = Matrix.identity(v.size).map(_lp)
    for index, move in enumerate(cert.moves):
        if flavor is not Flavor.RATIONAL and move.kind is MoveKind.CONGRUENCE \
                and not move.P.is_integral():
            raise CertificateError(index, f"{flavor.value} certificate has a non-integral congruence")
        if flavor is Flavor.INTEGRAL and not move.data_integral():
            raise CertificateError(index, "integral certificate has a non-integral enlargement")
        try:
            w = apply_move(v, move)
        except SeifertError as exc:
            raise CertificateError(index, str(exc)) from exc
        if move.kind in (MoveKind.ROW_ENLARGE, MoveKind.COL_ENLARGE):
            step = _enlargement_transport(v.size)
        elif move.kind is MoveKind.CONGRUENCE:
            step = move.P
        else:
            step = _reduction_transport(v, move.kind)
        transport = (step @ transport).map(_lp)
        if flavor is Flavor.INTEGRAL and not w.integral:
            raise CertificateError(index, "integral certificate produced a non-integral matrix")
        v = w
    return Applied(v, transport)


def transport_in_basis(applied: Applied) -> Matrix:
    """Evaluate the generator transport as a rational matrix, using that the
    target generators form a Q-basis (target matrix invertible) on which
    ``t`` acts by ``V^t V^-1``."""
    target = applied.seifert
    if not target.is_invertible():
        raise InvalidInput("target Seifert matrix is not invertible")
    n = target.size
    if n == 0:
        return Matrix.zeros(0, applied.transport.ncols)
    t_act = target.matrix.T @ target.matrix.inverse()
    tr = applied.transport
    lows = [x.low for x in tr.entries() if x]
    highs = [x.degree for x in tr.entries() if x]
    if not lows:
        return Matrix.zeros(n, tr.ncols)
    out = Matrix.zeros(n, tr.ncols)
    lo, hi = min(lows), max(highs)
    power = Matrix.identity(n)
    base = t_act.inverse() if lo < 0 else t_act
    for _ in range(abs(lo)):
        power = power @ base
    for e in range(lo, hi + 1):
        coeff = tr.map(lambda x: x.coefficient(e))
        if not coeff.is_zero():
            out = out + power @ coeff
        power = power @ t_act
    return out


# ---------------------------------------------------------------------------

def left_kernel_vector(m: Matrix) -> Optional[List[int]]:
    """Primitive integer ``u`` with ``u^t m = 0``; lexicographically smallest
    among the primitive echelon basis vectors.  ``None`` if ``m`` is
    invertible."""
    basis = nullspace(m.T)
    if not basis:
        return None
    return min(primitive_vector(b) for b in basis)


def nullspace(m: Matrix) -> List[List]:
    """Basis of the rational right kernel from the reduced row echelon form."""
    n = m.ncols
    a = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [q(Fraction(x) / p) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [q(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][fcol]
        out.append(v)
    return out


def reduce_to_invertible(v: SeifertMatrix) -> Tuple[SeifertMatrix, Certificate]:
    """S-equivalent invertible Seifert matrix (possibly empty).

    While ``det V == 0`` a primitive integer vector ``g1`` of the left kernel
    is completed to an integral symplectic basis for the form ``-J``; the
    congruent matrix then has the row-enlargement pattern and is reduced.
    The certificate uses integral congruences and row reductions only.
    """
    start_integral = v.integral
    moves: List[ElementaryMove] = []
    while v.size and v.determinant() == 0:
        g1 = left_kernel_vector(v.matrix)
        neg_j = -standard_j(v.size)
        basis = symplectic_reduction(neg_j, first=g1)
        p = basis.T
        moves.append(ElementaryMove.congruence(p))
        v = congruence(v, p)
        moves.append(ElementaryMove.row_reduce())
        v = row_reduce(v)
    flavor = Flavor.INTEGRAL if start_integral else Flavor.SEMI_INTEGRAL
    return v, Certificate(tuple(moves), flavor)
