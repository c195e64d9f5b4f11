import random
from fractions import Fraction

import pytest

from helpers import (SEED_V, random_integral_symplectic, random_rational_symplectic,
                     random_symmetric_seifert)
from seifert.core import (Flavor, MoveKind, SeifertMatrix, apply_certificate, congruence,
                          is_symplectic, reduce)
from seifert.errors import DivisibilityError, IntegralityRequired, InvalidInput
from seifert.invariants import alexander_polynomial
from seifert.matrices import Matrix
from seifert.symplectic import (DeltaFactor, IntegralFactor, SymplecticFactorization, delta,
                                factor_symplectic, realize_delta)

V7 = SeifertMatrix.of(SEED_V)


def test_delta_examples():
    for size in (2, 4, 6):
        assert delta(1, size) == Matrix.identity(size)
        assert delta(2, size) @ delta(Fraction(1, 2), size) == Matrix.identity(size)
        assert is_symplectic(delta(7, size))
    assert delta(2) == Matrix.diagonal([2, Fraction(1, 2)])
    for bad in (0, -2, Fraction(2, 3)):
        with pytest.raises(InvalidInput):
            delta(bad)


def _check_factorization(p: Matrix, f: SymplecticFactorization):
    assert f.product() == p
    for factor in f.factors:
        if isinstance(factor, IntegralFactor):
            assert factor.P.is_integral() and is_symplectic(factor.P)
        else:
            n = Fraction(factor.n)
            assert n > 0 and (n.numerator == 1 or n.denominator == 1)


def test_factor_examples():
    f = factor_symplectic(Matrix.diagonal([2, Fraction(1, 2)]))
    assert [x.to_json() for x in f.factors] == [{"kind": "delta", "n": "2"}]

    p = Matrix([[1, Fraction(1, 2)], [0, 1]])
    f = factor_symplectic(p)
    assert f.factors == (DeltaFactor(Fraction(1, 2), 2), IntegralFactor(Matrix([[1, 2], [0, 1]])),
                         DeltaFactor(2, 2))
    _check_factorization(p, f)

    q = random_integral_symplectic(random.Random(0), 4)
    assert factor_symplectic(q).factors == (IntegralFactor(q),)


def test_factor_rejects_non_symplectic():
    with pytest.raises(InvalidInput):
        factor_symplectic(Matrix.diagonal([2, 2]))


def test_factor_random():
    rng = random.Random(21)
    for _ in range(60):
        size = rng.choice([2, 4, 6])
        p = random_rational_symplectic(rng, size, rng.randint(1, 6))
        f = factor_symplectic(p)
        _check_factorization(p, f)
        assert len(f.factors) <= 40 * size


def test_factorization_json_roundtrip():
    p = random_rational_symplectic(random.Random(3), 4, 5)
    f = factor_symplectic(p)
    g = SymplecticFactorization.from_json(f.to_json(), 4)
    assert g.product() == p


def test_realize_delta_example():
    r = realize_delta(V7, 2)
    h = Fraction(1, 2)
    assert r.tilde_w.matrix == Matrix([[0, 0, 0, 0], [1, -1, -2, h], [0, -2, -4, 0], [0, h, 1, h]])
    assert r.P == Matrix([[0, 2, 0, -1], [0, 0, 1, 0], [1, 0, 2, 0], [0, 1, 0, 0]])
    assert congruence(r.tilde_v, r.P) == r.tilde_w
    assert reduce(r.tilde_v) == (V7, MoveKind.COL_REDUCE)
    assert reduce(r.tilde_w)[0].matrix == Matrix([[-4, 0], [1, h]])
    assert [m.kind for m in r.certificate.moves] == \
        [MoveKind.COL_ENLARGE, MoveKind.CONGRUENCE, MoveKind.ROW_REDUCE]


def test_realize_delta_trivial_n():
    r = realize_delta(V7, 1)
    assert reduce(r.tilde_v)[0] == V7 and reduce(r.tilde_w)[0] == V7


def test_realize_delta_integral_precondition():
    with pytest.raises(DivisibilityError):
        realize_delta(V7, 2, require_integral=True)
    with pytest.raises(IntegralityRequired):
        realize_delta(SeifertMatrix.of([[Fraction(1, 2), 0], [1, 0]]), 2, require_integral=True)
    # second row divisible by 2 and V22 divisible by 4
    v = SeifertMatrix.of([[4, 1, 4, 0], [2, 8, 2, 0], [4, 2, 1, 0], [0, 0, 1, 3]])
    r = realize_delta(v, 2, require_integral=True)
    assert r.certificate.flavor is Flavor.INTEGRAL
    assert apply_certificate(v, r.certificate).seifert == congruence(v, delta(2, 4))
    # second row divisible by 2 but V22 only by 2
    w = SeifertMatrix.of([[4, 1], [2, 2]])
    with pytest.raises(DivisibilityError):
        realize_delta(w, 2, require_integral=True)


def test_realize_reciprocal_integral():
    v = SeifertMatrix.of([[4, 1, 4, 0], [2, 8, 2, 0], [4, 2, 1, 0], [0, 0, 1, 3]])
    w = congruence(v, delta(2, 4))
    r = realize_delta(w, Fraction(1, 2), require_integral=True)
    assert r.certificate.flavor is Flavor.INTEGRAL
    assert apply_certificate(w, r.certificate).seifert == v
    with pytest.raises(IntegralityRequired):
        realize_delta(V7, Fraction(1, 2), require_integral=True)


def test_realize_delta_random():
    rng = random.Random(17)
    for _ in range(40):
        v = random_symmetric_seifert(rng, rng.randint(1, 3), 4)
        n = rng.randint(1, 20)
        if rng.random() < 0.3:
            n = Fraction(1, n)
        r = realize_delta(v, n)
        out = apply_certificate(v, r.certificate).seifert
        assert out == congruence(v, delta(n, v.size))
        assert r.P.is_integral()
        assert alexander_polynomial(out).unit_normal() == alexander_polynomial(v).unit_normal()
