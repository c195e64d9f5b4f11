"""Alexander module, Blanchfield pairing and the invariants derived from them."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import (LaurentPolynomial, RationalFunction, T, as_rational_function, chi, format_laurent,
                      format_rational, q, substitute)
from .core import SeifertMatrix, validate
from .errors import IntegralityRequired, InvalidInput, RequiresInvertible
from .matrices import Matrix, determinant, smith_normal_form, standard_j


def _seifert(v) -> SeifertMatrix:
    return v if isinstance(v, SeifertMatrix) else validate(v)


@dataclass(frozen=True)
class Presentation:
    """``W = tV - V^t`` presenting the Alexander module on ``generator_count``
    generators (one relation per row)."""
    matrix: Matrix
    generator_count: int


def presentation(v) -> Presentation:
    v = _seifert(v)
    m = v.matrix
    n = v.size
    rows = [[T * m[i, j] - m[j, i] for j in range(n)] for i in range(n)]
    return Presentation(Matrix(rows, n), n)


def alexander_determinant(v) -> LaurentPolynomial:
    """``det(tV - V^t)`` without any normalization."""
    v = _seifert(v)
    if v.size == 0:
        return LaurentPolynomial.constant(1)
    return LaurentPolynomial._coerce(presentation(v).matrix.determinant())


def alexander_polynomial(v) -> LaurentPolynomial:
    """``det(tV - V^t)`` shifted so its lowest exponent is 0.

    The sign is kept, so the value at ``t = 1`` is 1.  Compare polynomials
    of S-equivalent matrices with :meth:`LaurentPolynomial.unit_normal`.

    >>> str(alexander_polynomial([[-1, 0], [1, 2]]))
    '-2t^2 + 5t - 2'
    """
    d = alexander_determinant(v)
    return d.shift(-d.low) if d else d


def alexander_polynomials_equal(v, w) -> bool:
    return alexander_polynomial(v).unit_normal() == alexander_polynomial(w).unit_normal()


@dataclass(frozen=True)
class ModuleDecomposition:
    """Nonunit invariant factors ``d_1 | d_2 | ...`` of the Alexander module
    over ``Q[t, t^-1]``, normalized up to units of that ring."""
    invariant_factors: Tuple[LaurentPolynomial, ...]

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Q[t,t^-1]/({format_laurent(d)})" for d in self.invariant_factors)

    def to_json(self):
        return [d.to_json() for d in self.invariant_factors]


def module_decomposition(v) -> ModuleDecomposition:
    v = _seifert(v)
    if v.size == 0:
        return ModuleDecomposition(())
    snf = smith_normal_form(presentation(v).matrix)
    return ModuleDecomposition(tuple(d for d in snf.diag if not d.is_unit()))


def _require_invertible(v: SeifertMatrix) -> None:
    if not v.is_invertible():
        raise RequiresInvertible("the Seifert matrix must be invertible over Q")


@dataclass(frozen=True)
class BlanchfieldMatrix:
    """``Phi = (1 - t) W^-1`` with ``phi(b_i, b_k) = Phi[k, i]``.

    ``reduced_entries`` holds the representatives modulo ``Q[t, t^-1]``
    whose numerator degree is below the denominator degree.
    """
    entries: Matrix
    reduced_entries: Matrix

    def pairing(self, i: int, k: int) -> RationalFunction:
        return self.entries[k, i]

    def to_json(self):
        return {"entries": [[x.to_json() for x in r] for r in self.entries.rows],
                "reduced": [[x.to_json() for x in r] for r in self.reduced_entries.rows]}


def blanchfield_matrix(v) -> BlanchfieldMatrix:
    v = _seifert(v)
    w = presentation(v).matrix
    if v.size == 0:
        return BlanchfieldMatrix(w, w)
    phi = w.inverse().map(lambda x: as_rational_function(x) * (1 - T))
    return BlanchfieldMatrix(phi, phi.map(lambda x: as_rational_function(x).reduced()))


def t_action(v) -> Matrix:
    """Matrix of multiplication by ``t`` in the basis of generators: ``V^t V^-1``."""
    v = _seifert(v)
    _require_invertible(v)
    if v.size == 0:
        return v.matrix
    return v.matrix.T @ v.matrix.inverse()


def z_action(v) -> Matrix:
    """``-V J``, the endomorphism ``(1 - t)^-1`` on the generators."""
    v = _seifert(v)
    return -(v.matrix @ standard_j(v.size))


def scalar_form(v) -> Tuple[Matrix, bool]:
    """``S[i, j] = chi(Phi[i, j])`` and whether ``S == J``."""
    v = _seifert(v)
    phi = blanchfield_matrix(v)
    s = phi.reduced_entries.map(chi)
    return s, s == standard_j(v.size)


# ---------------------------------------------------------------------------
# elementary ideals

@dataclass(frozen=True)
class ElementaryIdeal:
    """``E_k``: generated by the ``(n - k + 1)``-minors of ``W`` over ``Z[t, t^-1]``."""
    index: int
    generators: Tuple[LaurentPolynomial, ...]

    def is_unit_ideal(self) -> bool:
        return any(g.is_unit() and g.is_integral() and abs(g.leading_coefficient) == 1
                   for g in self.generators)

    def to_json(self):
        return {"index": self.index, "generators": [g.to_json() for g in self.generators]}


def elementary_ideal(v, k: int) -> ElementaryIdeal:
    v = _seifert(v)
    if not v.integral:
        raise IntegralityRequired("elementary ideals need an integral Seifert matrix")
    if k < 1:
        raise InvalidInput("ideal index must be at least 1")
    n = v.size
    m = n - k + 1
    if m <= 0:
        return ElementaryIdeal(k, (LaurentPolynomial.constant(1),))
    w = presentation(v).matrix
    gens: List[LaurentPolynomial] = []
    seen = set()
    for rows in itertools.combinations(range(n), m):
        for cols in itertools.combinations(range(n), m):
            d = LaurentPolynomial._coerce(determinant(w.select(rows, cols)))
            if d and d not in seen:
                seen.add(d)
                gens.append(d)
    return ElementaryIdeal(k, tuple(gens))


def _strip(n: int, m: int) -> int:
    """Remove from ``n`` every prime factor it shares with ``m``."""
    g = math.gcd(n, m)
    while g > 1:
        n //= g
        g = math.gcd(n, g)
    return n


def evaluate_ideal(ideal: ElementaryIdeal, point) -> int:
    """Nonnegative generator of the image of the ideal under ``t -> point``.

    Sending ``t`` to ``a/b`` lands in ``Z[1/ab]`` (``t`` must map to a unit),
    whose ideals are generated by integers prime to ``ab``.  The result is
    the gcd of the evaluated generators with those primes removed; at
    ``t = 1`` or ``-1`` this is the plain gcd.

    >>> evaluate_ideal(ElementaryIdeal(1, (4 * T + 2,)), 2)
    5
    >>> evaluate_ideal(ElementaryIdeal(1, (4 * T + 2,)), -1)
    2
    """
    point = Fraction(point)
    if point == 0:
        raise InvalidInput("cannot evaluate at t = 0")
    units = point.numerator * point.denominator
    g = 0
    for gen in ideal.generators:
        value = Fraction(substitute(gen, point))
        g = math.gcd(g, value.numerator)
    return _strip(g, units) if g else 0


def _ideal_value(v: SeifertMatrix, k: int, point):
    return evaluate_ideal(elementary_ideal(v, k), point)


@dataclass(frozen=True)
class IdealWitness:
    ideal_index: int
    point: object
    values: Tuple[object, object]

    def to_json(self):
        return {"ideal_index": self.ideal_index, "point": format_rational(self.point),
                "values": [format_rational(x) for x in self.values]}


@dataclass(frozen=True)
class DistinguishReport:
    alexander_equal: bool
    factors_equal: bool
    witness: Optional[IdealWitness]

    @property
    def rationally_equivalent(self) -> bool:
        return self.alexander_equal and self.factors_equal

    @property
    def obstruction(self) -> bool:
        """True iff some computed invariant proves the matrices inequivalent."""
        return not self.rationally_equivalent or self.witness is not None

    def to_json(self):
        return {"rational": {"alexander_equal": self.alexander_equal,
                             "factors_equal": self.factors_equal},
                "integral": {"witness": self.witness.to_json() if self.witness else None}}


def distinguish(v, w, points: Sequence = (-1,)) -> DistinguishReport:
    """Compare rational invariants and, for integral inputs, elementary ideals
    evaluated at the given points; report the first differing ``(k, t0)``.

    >>> r = distinguish([[-1, 0], [1, 2]], [[3, 1], [2, 0]])
    >>> r.rationally_equivalent, r.witness.to_json()
    (True, {'ideal_index': 2, 'point': '-1', 'values': ['1', '3']})
    """
    v, w = _seifert(v), _seifert(w)
    alex = alexander_polynomials_equal(v, w)
    factors = module_decomposition(v) == module_decomposition(w)
    witness = None
    if v.integral and w.integral:
        top = max(v.size, w.size) + 1
        for k in range(1, top + 1):
            found = False
            iv, iw = elementary_ideal(v, k), elementary_ideal(w, k)
            for t0 in points:
                a, b = evaluate_ideal(iv, t0), evaluate_ideal(iw, t0)
                if a != b:
                    witness = IdealWitness(k, q(t0), (a, b))
                    found = True
                    break
            if found:
                break
    return DistinguishReport(alex, factors, witness)
