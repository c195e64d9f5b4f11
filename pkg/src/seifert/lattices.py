"""Lattices in a rational scalar Blanchfield space.

A scalar space is ``Q^{2g}`` with an endomorphism ``Z`` (the action of
``(1 - t)^-1``) and a nondegenerate antisymmetric form ``Phi`` satisfying
``Z^t Phi = Phi (I - Z)``.  Lattices are given by a basis matrix whose
columns are the basis vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import Certificate, SeifertMatrix, validate
from .errors import (AmbientMismatch, InvalidInput, NotAdjacent, NotAdmissible, NotSelfDual,
                     RequiresInvertible)
from .matrices import (Matrix, bezout_vector, column_span_basis, integer_kernel,
                       smith_normal_form, standard_j, symplectic_reduction)
from .symplectic import DeltaRealization, delta, realize_delta


@dataclass(frozen=True)
class ScalarSpace:
    Z: Matrix
    Phi: Matrix

    def __post_init__(self):
        z, phi = self.Z, self.Phi
        n = phi.nrows
        if not (z.is_square() and phi.is_square() and z.nrows == n):
            raise InvalidInput("Z and Phi must be square of the same size")
        if not z.is_scalar() or not phi.is_scalar():
            raise InvalidInput("Z and Phi must be rational")
        if phi.T != -phi:
            raise InvalidInput("Phi is not antisymmetric")
        if n and phi.determinant() == 0:
            raise InvalidInput("Phi is degenerate")
        if z.T @ phi != phi @ (Matrix.identity(n) - z):
            raise InvalidInput("Z^t Phi != Phi (I - Z)")

    @property
    def dim(self) -> int:
        return self.Phi.nrows

    def form(self, x: Sequence, y: Sequence):
        return (Matrix.column(x).T @ self.Phi @ Matrix.column(y))[0, 0]

    def to_json(self):
        return {"Z": self.Z.to_json(), "Phi": self.Phi.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ScalarSpace":
        try:
            return cls(Matrix.from_json(obj["Z"]), Matrix.from_json(obj["Phi"]))
        except (KeyError, TypeError):
            raise InvalidInput("scalar space needs 'Z' and 'Phi'") from None


def scalar_space_from_seifert(v) -> ScalarSpace:
    """The space ``(Q^{2g}, Z = -V J, Phi = -J)`` of an invertible ``V``.

    The standard lattice ``Z^{2g}`` is then admissible and its Seifert
    matrix in the standard basis is ``V`` again.
    """
    v = v if isinstance(v, SeifertMatrix) else validate(v)
    if not v.is_invertible():
        raise RequiresInvertible("the Seifert matrix must be invertible")
    j = standard_j(v.size)
    return ScalarSpace(-(v.matrix @ j), -j)


@dataclass(frozen=True)
class Lattice:
    space: ScalarSpace
    basis: Matrix

    def __post_init__(self):
        b = self.basis
        if b.shape != (self.space.dim, self.space.dim):
            raise InvalidInput(f"basis has shape {b.shape}, expected {(self.space.dim,) * 2}")
        if not b.is_scalar():
            raise InvalidInput("basis must be rational")
        if b.nrows and b.determinant() == 0:
            raise InvalidInput("basis vectors are linearly dependent")

    @classmethod
    def standard(cls, space: ScalarSpace) -> "Lattice":
        return cls(space, Matrix.identity(space.dim))

    def with_basis(self, basis: Matrix) -> "Lattice":
        return Lattice(self.space, basis)

    def gram(self) -> Matrix:
        return self.basis.T @ self.space.Phi @ self.basis

    def coordinates(self, vectors: Matrix) -> Matrix:
        return self.basis.inverse() @ vectors

    def contains(self, vectors: Matrix) -> bool:
        return self.coordinates(vectors).is_integral()

    def z_matrix(self) -> Matrix:
        """``Z`` in this basis."""
        return self.coordinates(self.space.Z @ self.basis)

    def same_lattice(self, other: "Lattice") -> bool:
        c = self.coordinates(other.basis)
        return c.is_integral() and abs(c.determinant()) == 1

    def to_json(self):
        return {"space": self.space.to_json(), "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        try:
            return cls(ScalarSpace.from_json(obj["space"]), Matrix.from_json(obj["basis"]))
        except (KeyError, TypeError):
            raise InvalidInput("lattice needs 'space' and 'basis'") from None


def is_self_dual(lattice: Lattice) -> bool:
    g = lattice.gram()
    return g.is_integral() and abs(g.determinant()) == 1


def is_admissible(lattice: Lattice) -> bool:
    """Self-dual and preserved by ``Z``."""
    return is_self_dual(lattice) and lattice.z_matrix().is_integral()


def symplectic_basis(lattice: Lattice) -> Matrix:
    """Basis (columns) of the lattice with Gram matrix ``-J``."""
    if not is_self_dual(lattice):
        raise NotSelfDual("lattice is not self-dual")
    u = symplectic_reduction(lattice.gram())
    return lattice.basis @ u


def is_symplectic_basis(lattice: Lattice, basis: Matrix) -> bool:
    if basis.shape != lattice.basis.shape:
        return False
    gram = basis.T @ lattice.space.Phi @ basis
    return gram == -standard_j(basis.nrows) and lattice.with_basis(basis).same_lattice(lattice)


def seifert_from_lattice(lattice: Lattice, basis: Optional[Matrix] = None) -> SeifertMatrix:
    """Seifert matrix ``(B^-1 Z B) J`` of an admissible lattice in a
    symplectic basis ``B`` (computed if not given)."""
    if not is_admissible(lattice):
        raise NotAdmissible("lattice is not admissible")
    if basis is None:
        basis = symplectic_basis(lattice)
    elif not is_symplectic_basis(lattice, basis):
        raise InvalidInput("given basis is not a symplectic basis of the lattice")
    z = basis.inverse() @ lattice.space.Z @ basis
    return validate(z @ standard_j(basis.nrows))


# ---------------------------------------------------------------------------
# adjacency

def _common_denominator(m: Matrix) -> int:
    d = 1
    for x in m.entries():
        den = Fraction(x).denominator
        d = d * den // math.gcd(d, den)
    return d


def _intersection_coords(a: Lattice, b: Lattice) -> Matrix:
    """Columns: a basis of ``a ∩ b`` in the coordinates of ``a``."""
    m = b.coordinates(a.basis)
    n = m.nrows
    d = _common_denominator(m)
    dm = (m * d)
    # x in Z^n with m x integral  <=>  d m x + d y = 0 for some y in Z^n
    rows = [[int(dm[i, j]) for j in range(n)] + [d if k == i else 0 for k in range(n)]
            for i in range(n)]
    kernel = integer_kernel(rows)
    basis = column_span_basis([k[:n] for k in kernel], n)
    return Matrix.from_columns(basis)


@dataclass(frozen=True)
class QuotientShape:
    """Smith invariants of ``a / (a ∩ b)`` and ``b / (a ∩ b)``."""
    first: Tuple[int, ...]
    second: Tuple[int, ...]


def quotient_shape(a: Lattice, b: Lattice) -> QuotientShape:
    c = _intersection_coords(a, b)
    c2 = b.coordinates(a.basis @ c)

    def nontrivial(m):
        return tuple(abs(x) for x in smith_normal_form(m).diag if abs(x) != 1)
    return QuotientShape(nontrivial(c), nontrivial(c2))


def _same_space(a: Lattice, b: Lattice) -> None:
    if a.space != b.space:
        raise AmbientMismatch("lattices live in different scalar spaces")


def adjacency(a: Lattice, b: Lattice) -> Optional[int]:
    """``n`` if both quotients by the intersection are cyclic of order
    ``n`` (``n = 1`` when the lattices agree), else ``None``."""
    _same_space(a, b)
    shape = quotient_shape(a, b)
    if len(shape.first) > 1 or len(shape.second) > 1:
        return None
    n1 = shape.first[0] if shape.first else 1
    n2 = shape.second[0] if shape.second else 1
    return n1 if n1 == n2 else None


@dataclass(frozen=True)
class AdjacencyWitness:
    """Symplectic basis ``b`` of the first lattice such that
    ``(n b_1, b_2 / n, b_3, ...)`` is a symplectic basis of the second."""
    n: int
    basis: Matrix

    @property
    def second_basis(self) -> Matrix:
        return self.basis @ delta(self.n, self.basis.nrows) if self.basis.nrows else self.basis


def adjacent_symplectic_bases(a: Lattice, b: Lattice) -> AdjacencyWitness:
    _same_space(a, b)
    if not (is_self_dual(a) and is_self_dual(b)):
        raise NotSelfDual("both lattices must be self-dual")
    n = adjacency(a, b)
    if n is None:
        raise NotAdjacent("lattices are not adjacent")
    if n == 1:
        return AdjacencyWitness(1, symplectic_basis(a))
    dim = a.space.dim
    c = _intersection_coords(a, b)
    snf = smith_normal_form(c)
    # left * c * right = diag(1, ..., 1, +-n): columns of left^-1 form a basis
    # of a whose first dim-1 members span a ∩ b modulo n * (last)
    gen = [int(x) for x in snf.left.inverse().col(dim - 1)]
    gram_a = a.gram()
    b1 = a.basis @ Matrix.column(gen)
    nb1 = b1 * n
    pair = (nb1.T @ a.space.Phi @ b.basis).row(0)
    g, u = bezout_vector([int(x) for x in pair])
    if g != 1:
        raise AssertionError("n * b1 is not primitive in the second lattice")
    b2 = (b.basis @ Matrix.column(u)) * n
    b2c = [int(x) for x in a.coordinates(b2).col(0)]

    def form(x, y):
        return (Matrix.column(x).T @ gram_a @ Matrix.column(y))[0, 0]
    proj = []
    for i in range(dim):
        e = [1 if k == i else 0 for k in range(dim)]
        x2, x1 = form(e, b2c), form(gen, e)
        proj.append([e[k] - x2 * gen[k] - x1 * b2c[k] for k in range(dim)])
    rest = column_span_basis([[int(x) for x in p] for p in proj], dim)
    cols = [gen, b2c]
    if rest:
        k = Matrix.from_columns(rest)
        k = k @ symplectic_reduction(k.T @ gram_a @ k)
        cols += [list(col) for col in k.columns()]
    witness = AdjacencyWitness(n, a.basis @ Matrix.from_columns(cols))
    if not (is_symplectic_basis(a, witness.basis) and is_symplectic_basis(b, witness.second_basis)):
        raise AssertionError("adjacency witness failed validation")
    return witness


def _z_into(a: Lattice, b: Lattice) -> bool:
    """Whether ``Z a`` lies in ``b``."""
    return b.contains(a.space.Z @ a.basis)


@dataclass(frozen=True)
class AdjacencyStep:
    """Seifert matrices of two adjacent admissible lattices in compatible
    symplectic bases, and a certificate turning the first into the second."""
    n: int
    source: SeifertMatrix
    target: SeifertMatrix
    realization: Optional[DeltaRealization]

    @property
    def certificate(self) -> Certificate:
        return self.realization.certificate if self.realization else Certificate()


def adjacency_step(a: Lattice, b: Lattice) -> AdjacencyStep:
    """Realize the passage between adjacent admissible lattices by moves.

    With a witness basis ``b`` the two Seifert matrices satisfy
    ``V_a = delta(n) V_b delta(n)``.  If ``Z b ⊆ a`` the second row of
    ``V_b`` is divisible by ``n`` and an integral certificate exists; if
    ``Z a ⊆ b`` the basis is rotated to ``(b_2, -b_1, ...)`` first.
    """
    if not (is_admissible(a) and is_admissible(b)):
        raise NotAdmissible("both lattices must be admissible")
    w = adjacent_symplectic_bases(a, b)
    dim = a.space.dim
    if w.n == 1:
        v = seifert_from_lattice(a, w.basis)
        return AdjacencyStep(1, v, v, None)
    if _z_into(b, a):
        basis = w.basis
        factor = Fraction(1, w.n)
        second = w.second_basis
        integral = True
    else:
        rot = Matrix.block_diag(Matrix([[0, -1], [1, 0]]), Matrix.identity(dim - 2))
        basis = w.basis @ rot
        factor = Fraction(w.n)
        second = basis @ delta(Fraction(1, w.n), dim)
        integral = _z_into(a, b)
    source = seifert_from_lattice(a, basis)
    target = seifert_from_lattice(b, second)
    realization = realize_delta(source, factor, require_integral=integral)
    if realization.target != target:
        raise AssertionError("realization does not reach the second Seifert matrix")
    return AdjacencyStep(w.n, source, target, realization)


@dataclass(frozen=True)
class ChainLink:
    index: int
    ok: bool
    n: Optional[int]
    message: str

    def to_json(self):
        return {"index": self.index, "ok": self.ok, "n": self.n, "message": self.message}


def verify_chain(lattices: Sequence[Lattice]) -> List[ChainLink]:
    """Check that consecutive lattices are admissible, adjacent and related
    by ``Z``-inclusion in one direction."""
    out = []
    for i in range(len(lattices) - 1):
        a, b = lattices[i], lattices[i + 1]
        if a.space != b.space:
            out.append(ChainLink(i, False, None, "different scalar spaces"))
            continue
        if not (is_admissible(a) and is_admissible(b)):
            out.append(ChainLink(i, False, None, "lattice not admissible"))
            continue
        n = adjacency(a, b)
        if n is None:
            out.append(ChainLink(i, False, None, "not adjacent"))
        elif not (_z_into(a, b) or _z_into(b, a)):
            out.append(ChainLink(i, False, n, "no Z-inclusion between the lattices"))
        else:
            out.append(ChainLink(i, True, n, "ok"))
    return out
