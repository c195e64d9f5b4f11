"""Random generators and independent oracles shared by the test modules."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import List, Optional, Sequence

from seifert.algebra import LaurentPolynomial
from seifert.core import (Certificate, ElementaryMove, Flavor, MoveKind, SeifertMatrix,
                          apply_move, col_enlarge, row_enlarge)
from seifert.matrices import Matrix, standard_j
from seifert.symplectic import delta

SEED_V = [[-1, 0], [1, 2]]
SEED_VP = [[3, 1], [2, 0]]


def random_symmetric_seifert(rng: random.Random, g: int, bound: int = 3) -> SeifertMatrix:
    """Integral Seifert matrix: random symmetric part plus the lower half of J."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    for k in range(0, n, 2):
        rows[k + 1][k] += 1
    return SeifertMatrix(Matrix(rows, n))


def transvection(v: Sequence, a) -> Matrix:
    """``I + a v v^t J``, symplectic for every ``a`` and ``v``."""
    n = len(v)
    col = Matrix.column(v)
    return Matrix.identity(n) + (col @ col.T @ standard_j(n)) * a


def random_integral_symplectic(rng: random.Random, size: int, steps: int = 4,
                               bound: int = 2) -> Matrix:
    p = Matrix.identity(size)
    for _ in range(steps):
        v = [rng.randint(-bound, bound) for _ in range(size)]
        p = p @ transvection(v, rng.choice([-1, 1]))
    return p


def _small_rational(rng: random.Random, bound: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_rational_symplectic(rng: random.Random, size: int, steps: int = 4) -> Matrix:
    """Words in rational transvections, delta(n) and block swaps."""
    p = Matrix.identity(size)
    for _ in range(steps):
        kind = rng.random()
        if kind < 0.5:
            v = [rng.randint(-2, 2) for _ in range(size)]
            p = p @ transvection(v, _small_rational(rng))
        elif kind < 0.8:
            n = rng.randint(2, 5)
            p = p @ delta(Fraction(1, n) if rng.random() < 0.5 else n, size)
        else:
            blocks = list(range(size // 2))
            rng.shuffle(blocks)
            perm = [2 * b + e for b in blocks for e in (0, 1)]
            p = p @ Matrix([[1 if perm[i] == j else 0 for j in range(size)]
                            for i in range(size)], size)
    return p


def random_unimodular(rng: random.Random, n: int, steps: int = 5) -> Matrix:
    """Product of random elementary integer matrices."""
    u = Matrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][j] = rng.randint(-2, 2)
        u = u @ Matrix(rows, n)
    return u


def random_self_dual_basis(rng: random.Random, n: int) -> Matrix:
    """P U with P rational symplectic and U unimodular: Gram U^t (-J) U when
    the form is -J in the reference coordinates."""
    return random_rational_symplectic(rng, n, 3) @ random_unimodular(rng, n)


def integral_seifert_by_moves(rng: random.Random, max_size: int = 8,
                              moves: int = 6) -> SeifertMatrix:
    """Invertible integral Seifert matrix reached from a small seed by random
    integral enlargements, reductions and congruences."""
    from seifert.core import reduce_to_invertible
    while True:
        v = random_symmetric_seifert(rng, 1, 2)
        for _ in range(moves):
            r = rng.random()
            if r < 0.45 and v.size + 2 <= max_size:
                fn = row_enlarge if rng.random() < 0.5 else col_enlarge
                v = fn(v, rng.randint(-3, 3), [rng.randint(-2, 2) for _ in range(v.size)])
            elif r < 0.9 and v.size:
                p = random_integral_symplectic(rng, v.size, steps=2)
                v = SeifertMatrix(p @ v.matrix @ p.T)
            else:
                v = random_symmetric_seifert(rng, rng.randint(1, max_size // 2), 2)
        v, _ = reduce_to_invertible(v)
        if v.size:
            return v


def random_certificate(rng: random.Random, v: SeifertMatrix, length: int,
                       integral: bool = False, max_size: int = 8):
    """A random applicable certificate and the matrix it produces."""
    moves: List[ElementaryMove] = []
    for _ in range(length):
        options = []
        if v.size + 2 <= max_size:
            options += ["row_enlarge", "col_enlarge"]
        if v.size:
            options.append("congruence")
        m = v.matrix
        if v.size >= 2 and not any(m[0, j] for j in range(v.size)):
            options.append("row_reduce")
        if v.size >= 2 and not any(m[i, 0] for i in range(v.size)):
            options.append("col_reduce")
        kind = rng.choice(options)
        if kind.endswith("enlarge"):
            x = rng.randint(-3, 3) if integral else _small_rational(rng)
            rho = [rng.randint(-2, 2) if integral else _small_rational(rng, 2, 2)
                   for _ in range(v.size)]
            move = ElementaryMove(MoveKind(kind), x, tuple(rho))
        elif kind == "congruence":
            p = (random_integral_symplectic(rng, v.size, 2) if integral
                 else random_rational_symplectic(rng, v.size, 2))
            move = ElementaryMove.congruence(p)
        else:
            move = ElementaryMove(MoveKind(kind))
        v = apply_move(v, move)
        moves.append(move)
    flavor = Flavor.INTEGRAL if integral else Flavor.RATIONAL
    return Certificate(tuple(moves), flavor), v


# ---------------------------------------------------------------------------
# oracles

def leibniz_det(rows: Sequence[Sequence]):
    """Determinant by the permutation expansion (independent of elimination)."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = term * rows[i][perm[i]]
            if not term:
                break
        if term:
            total = total + (-term if inversions % 2 else term)
    return total


def minors(rows: Sequence[Sequence], k: int):
    n, m = len(rows), len(rows[0]) if rows else 0
    for r in itertools.combinations(range(n), k):
        for c in itertools.combinations(range(m), k):
            yield leibniz_det([[rows[i][j] for j in c] for i in r])


def integer_invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors from determinantal divisors d_k = gcd of k-minors."""
    n = min(len(rows), len(rows[0])) if rows else 0
    out, prev = [], 1
    for k in range(1, n + 1):
        g = 0
        for x in minors(rows, k):
            g = math.gcd(g, int(x))
        if g == 0:
            out += [0] * (n - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


def subgroup_order_and_exponent(rel: Matrix):
    """Brute-force the subgroup of Q^m/Z^m generated by the columns of
    ``rel``; returns its order and the largest element order."""
    def norm(v):
        return tuple(Fraction(x) - math.floor(Fraction(x)) for x in v)

    gens = [norm(c) for c in rel.columns()]
    zero = tuple(Fraction(0) for _ in range(rel.nrows))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = norm([a + b for a, b in zip(x, g)])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt

    def order(x):
        d = 1
        for a in x:
            d = d * a.denominator // math.gcd(d, a.denominator)
        return d
    return len(seen), max(order(x) for x in seen)


def adjacency_oracle(basis_a: Matrix, basis_b: Matrix) -> Optional[int]:
    """n if (a + b)/a and (a + b)/b are both cyclic of order n.

    ``(a + b)/a`` is isomorphic to ``b/(a ∩ b)``, and it is the subgroup of
    ``Q^m/Z^m`` generated by the ``a``-coordinates of ``b``.
    """
    ord1, exp1 = subgroup_order_and_exponent(basis_a.inverse() @ basis_b)
    ord2, exp2 = subgroup_order_and_exponent(basis_b.inverse() @ basis_a)
    if ord1 != exp1 or ord2 != exp2 or ord1 != ord2:
        return None
    return ord1


def laurent_det_cofactor(m: Matrix):
    """Cofactor expansion along the first row (for Laurent matrices)."""
    n = m.nrows
    if n == 0:
        return LaurentPolynomial.constant(1)
    if n == 1:
        return m[0, 0]
    total = LaurentPolynomial()
    for j in range(n):
        if m[0, j]:
            sub = m.select(range(1, n), [c for c in range(n) if c != j])
            term = m[0, j] * laurent_det_cofactor(sub)
            total = total + (-term if j % 2 else term)
    return total
