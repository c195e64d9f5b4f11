"""Exact scalars, Laurent polynomials and rational functions in ``t``.

Scalars are :class:`fractions.Fraction` (or plain ``int`` when integral).
Polynomial coefficients are normalised so that integral values are stored as
``int``; this keeps integer-heavy computations (presentation matrices of
integral Seifert matrices) on the fast path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import InvalidInput

#: Degree of the zero polynomial.
MINUS_INFINITY = -math.inf

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# scalars

def q(x) -> Scalar:
    """Normalise a rational scalar: integral values become ``int``."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return int(x)
    if isinstance(x, _RationalABC):
        return q(Fraction(x.numerator, x.denominator))
    raise InvalidInput(f"not an exact rational: {x!r}")


def qdiv(a, b) -> Scalar:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if type(a) is int and type(b) is int:
        d, r = divmod(a, b)
        if r == 0:
            return d
        return Fraction(a, b)
    return q(Fraction(a) / b)


def is_integer(x) -> bool:
    return type(x) is int or (isinstance(x, Fraction) and x.denominator == 1)


def parse_rational(text) -> Scalar:
    """Parse ``"p/q"``, ``"p"`` or a JSON integer.  Floats are rejected.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    >>> parse_rational(4)
    4
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise InvalidInput(f"floating point value not allowed: {text!r}")
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise InvalidInput(f"expected a rational string, got {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"malformed rational: {text!r}") from None
    return q(value)


def format_rational(x) -> str:
    x = q(x)
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# dense polynomial kernels (coefficient lists, lowest degree first)

def _trim(c: List) -> List:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence, b: Sequence) -> List:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: Sequence, b: Sequence, sign: int = 1) -> List:
    if len(a) < len(b):
        out = list(a) + [0] * (len(b) - len(a))
    else:
        out = list(a)
    if sign == 1:
        for i, y in enumerate(b):
            out[i] += y
    else:
        for i, y in enumerate(b):
            out[i] -= y
    return _trim(out)


def _pdivmod(a: Sequence, b: Sequence) -> Tuple[List, List]:
    """Euclidean division in Q[t]; ``b`` must be nonzero and trimmed."""
    db = len(b) - 1
    lead = b[-1]
    a = list(a)
    if len(a) <= db:
        return [], _trim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = qdiv(c, lead)
            quo[i - db] = c
            base = i - db
            for j in range(db + 1):
                if b[j]:
                    a[base + j] -= c * b[j]
    rem = _trim([q(x) for x in a[:db]])
    return [q(x) for x in quo], rem


def _pscale(a: Sequence, c) -> List:
    return [q(x * c) for x in a] if c else []


def _monic(a: Sequence) -> List:
    if not a:
        return []
    lead = a[-1]
    if lead == 1:
        return list(a)
    return [qdiv(x, lead) for x in a]


def _int_prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of integer polynomials: ``lc(b)^k a mod b``."""
    db, lead = len(b) - 1, b[-1]
    a = list(a)
    while len(a) - 1 >= db:
        c, base = a[-1], len(a) - 1 - db
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            if y:
                a[base + j] -= c * y
        _trim(a)
    return a


def _pgcd(a: Sequence, b: Sequence) -> List:
    """Monic gcd in Q[t], by the primitive remainder sequence over Z."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        return _monic(a or b)
    a, b = _primitive_list(a)[1], _primitive_list(b)[1]
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _int_prem(a, b)
        if not r:
            return _monic(b)
        a, b = b, _primitive_list(r)[1]
    return [1]


def _pxgcd(a: Sequence, b: Sequence) -> Tuple[List, List, List]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pmul(quo, s1), -1)
        t0, t1 = t1, _padd(t0, _pmul(quo, t1), -1)
    if not r0:
        return [], [], []
    lead = r0[-1]
    return ([qdiv(x, lead) for x in r0], [qdiv(x, lead) for x in s0],
            [qdiv(x, lead) for x in t0])


def _primitive_list(a: Sequence) -> Tuple[Scalar, List[int]]:
    """Split ``a = c * p`` with ``p`` integral, content 1, positive leading."""
    den = 1
    for x in a:
        if type(x) is not int:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if ints and ints[-1] < 0:
        g = -g
    return qdiv(g, den), [x // g for x in ints]


# ---------------------------------------------------------------------------

class LaurentPolynomial:
    """An element of Q[t, 1/t], stored densely from the lowest exponent.

    >>> p = LaurentPolynomial.from_terms({2: -2, 1: 5, 0: -2})
    >>> str(p)
    '-2t^2 + 5t - 2'
    >>> p(1)
    1
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        c = [q(x) for x in coeffs]
        self._set(low, c)

    def _set(self, low, c):
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        _trim(c)
        if start >= len(c):
            object.__setattr__(self, "low", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "low", low + start)
            object.__setattr__(self, "coeffs", tuple(c[start:]))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def _raw(cls, coeffs: List, low: int = 0) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._set(low, coeffs)
        return obj

    @classmethod
    def from_terms(cls, terms: Dict[int, object]) -> "LaurentPolynomial":
        terms = {int(e): q(c) for e, c in terms.items() if c != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        c = [0] * (hi - lo + 1)
        for e, v in terms.items():
            c[e - lo] = v
        return cls._raw(c, lo)

    @classmethod
    def constant(cls, c) -> "LaurentPolynomial":
        return cls._raw([q(c)])

    @classmethod
    def monomial(cls, exponent: int, c=1) -> "LaurentPolynomial":
        return cls._raw([q(c)], exponent)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        """Highest exponent; ``MINUS_INFINITY`` for the zero polynomial."""
        if not self.coeffs:
            return MINUS_INFINITY
        return self.low + len(self.coeffs) - 1

    @property
    def valuation(self):
        """Lowest exponent; ``+inf`` for the zero polynomial."""
        return self.low if self.coeffs else math.inf

    @property
    def span(self) -> int:
        """``degree - valuation``: the degree up to units of Q[t, 1/t]."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, e: int):
        i = e - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> Dict[int, Scalar]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def is_constant(self) -> bool:
        return not self.coeffs or (self.low == 0 and len(self.coeffs) == 1)

    def is_unit(self) -> bool:
        """Units of Q[t, 1/t] are the nonzero monomials."""
        return len(self.coeffs) == 1

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def is_polynomial(self) -> bool:
        return not self.coeffs or self.low >= 0

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPolynomial._raw([q(x)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            return self
        if not self.coeffs:
            return o
        lo = min(self.low, o.low)
        a = [0] * (self.low - lo) + list(self.coeffs)
        b = [0] * (o.low - lo) + list(o.coeffs)
        return LaurentPolynomial._raw(_padd(a, b), lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPolynomial()
            return LaurentPolynomial._raw(_pscale(self.coeffs, other), self.low)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return LaurentPolynomial._raw(_pmul(self.coeffs, other.coeffs),
                                      self.low + other.low)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return LaurentPolynomial._raw([qdiv(c, other) for c in self.coeffs], self.low)
        if isinstance(other, LaurentPolynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(o, self)

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise InvalidInput("only monomials have inverses in Q[t, 1/t]")
            c = self.coeffs[0]
            return LaurentPolynomial.monomial(self.low * n, q(Fraction(1) / c) ** -n)
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.low == 0 and self.coeffs == (other,)
        return NotImplemented

    def __hash__(self):
        if not self.coeffs:
            return hash(0)
        if self.low == 0 and len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash((self.low, self.coeffs))

    # -- transformations -----------------------------------------------------

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return LaurentPolynomial._raw(list(self.coeffs), self.low + k)

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute ``t -> 1/t``."""
        if not self.coeffs:
            return self
        return LaurentPolynomial._raw(list(reversed(self.coeffs)), -self.degree)

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial.from_terms(
            {e - 1: e * c for e, c in self.terms().items() if e != 0})

    def unit_normal(self) -> "LaurentPolynomial":
        """Representative modulo the units ``±t^k``: lowest exponent 0 and
        positive leading coefficient."""
        if not self.coeffs:
            return self
        c = list(self.coeffs)
        if c[-1] < 0:
            c = [-x for x in c]
        return LaurentPolynomial._raw(c, 0)

    def primitive(self) -> "LaurentPolynomial":
        """Representative modulo all units ``c*t^k`` of Q[t, 1/t]: integral,
        content 1, lowest exponent 0, positive leading coefficient."""
        if not self.coeffs:
            return self
        _, p = _primitive_list(self.coeffs)
        return LaurentPolynomial._raw(p, 0)

    def content(self) -> Scalar:
        """The rational ``c`` with ``self == c * t^low * self.primitive()``."""
        if not self.coeffs:
            return 0
        c, _ = _primitive_list(self.coeffs)
        return c

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient in Q[t, 1/t]; raises ``ArithmeticError`` if not divisible."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.coeffs:
            return self
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return LaurentPolynomial._raw([qdiv(x, c) for x in self.coeffs],
                                          self.low - other.low)
        quo, rem = _pdivmod(self.coeffs, other.coeffs)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return LaurentPolynomial._raw(quo, self.low - other.low)

    def divides(self, other: "LaurentPolynomial") -> bool:
        if not self.coeffs:
            return not other.coeffs
        _, rem = _pdivmod(other.coeffs, self.coeffs)
        return not rem

    def poly_divmod(self, other: "LaurentPolynomial"):
        """Euclidean division in Q[t]; both operands must be polynomials."""
        if not (self.is_polynomial() and other.is_polynomial()):
            raise InvalidInput("poly_divmod needs ordinary polynomials")
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        a = [0] * self.low + list(self.coeffs) if self.coeffs else []
        b = [0] * other.low + list(other.coeffs)
        quo, rem = _pdivmod(a, b)
        return LaurentPolynomial._raw(quo), LaurentPolynomial._raw(rem)

    def dense(self) -> List[Scalar]:
        """Coefficient list of an ordinary polynomial, constant term first."""
        if not self.coeffs:
            return []
        if self.low < 0:
            raise InvalidInput("negative exponents present")
        return [0] * self.low + list(self.coeffs)

    # -- evaluation ------------------------------------------------------------

    def __call__(self, point):
        return substitute(self, point)

    def evaluate_matrix(self, m):
        """Evaluate at a square matrix (negative powers use its inverse)."""
        from .matrices import Matrix
        n = m.nrows
        result = Matrix.zeros(n, n)
        if not self.coeffs:
            return result
        base = m.inverse() if self.low < 0 else m
        power = Matrix.identity(n)
        for _ in range(abs(self.low)):
            power = power @ base
        for c in self.coeffs:
            if c:
                result = result + power * c
            power = power @ m
        return result

    # -- formatting ------------------------------------------------------------

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPolynomial({format_laurent(self)!r})"

    def to_json(self) -> Dict[str, str]:
        return {str(e): format_rational(c) for e, c in sorted(self.terms().items())}

    @classmethod
    def from_json(cls, obj) -> "LaurentPolynomial":
        if isinstance(obj, (int, str)):
            return cls.constant(parse_rational(obj))
        if not isinstance(obj, dict):
            raise InvalidInput(f"expected a Laurent polynomial object, got {obj!r}")
        try:
            return cls.from_terms({int(e): parse_rational(c) for e, c in obj.items()})
        except ValueError as exc:
            raise InvalidInput(f"malformed Laurent polynomial: {obj!r}") from exc


#: The variable ``t``.
T = LaurentPolynomial((1,), 1)
ONE = LaurentPolynomial.constant(1)


def format_laurent(p: LaurentPolynomial, var: str = "t") -> str:
    """Human readable form, highest exponent first.

    >>> format_laurent(LaurentPolynomial.from_terms({-1: Fraction(1, 2), 2: -3}))
    '-3t^2 + 1/2*t^-1'
    """
    if not p.coeffs:
        return "0"
    parts = []
    for e in range(p.degree, p.low - 1, -1):
        c = p.coefficient(e)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = format_rational(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if a == 1:
                body = mono
            elif type(a) is int:
                body = f"{a}{mono}"
            else:
                body = f"{format_rational(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def as_laurent(x) -> LaurentPolynomial:
    p = LaurentPolynomial._coerce(x)
    if p is None:
        raise InvalidInput(f"not a Laurent polynomial: {x!r}")
    return p


def substitute(f: LaurentPolynomial, point) -> Scalar:
    """Evaluate ``f`` at a rational point.

    >>> substitute(LaurentPolynomial.from_terms({-1: 1}), 2)
    Fraction(1, 2)
    """
    point = q(point)
    f = as_laurent(f)
    if not f.coeffs:
        return 0
    if point == 0:
        if f.low < 0:
            raise InvalidInput("cannot evaluate negative powers of t at 0")
        return f.coefficient(0)
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * point + c
    if f.low >= 0:
        return q(acc * point ** f.low)
    return qdiv(acc, point ** -f.low)


def laurent_gcd(a, b) -> LaurentPolynomial:
    """Greatest common divisor in Q[t, 1/t], normalised to an integral
    polynomial with content 1, lowest exponent 0 and positive leading
    coefficient.  ``gcd(0, 0) == 0``.

    >>> str(laurent_gcd(T**2, T**5))
    '1'
    """
    a, b = as_laurent(a), as_laurent(b)
    if not a.coeffs and not b.coeffs:
        return LaurentPolynomial()
    if not a.coeffs:
        return b.primitive()
    if not b.coeffs:
        return a.primitive()
    g = _pgcd(a.coeffs, b.coeffs)
    return LaurentPolynomial._raw(g).primitive()


def laurent_xgcd(a: LaurentPolynomial, b: LaurentPolynomial):
    """Return ``(g, s, u)`` with ``s*a + u*b == g`` for ordinary polynomials;
    ``g`` is monic."""
    g, s, u = _pxgcd(a.dense(), b.dense())
    return (LaurentPolynomial._raw(g), LaurentPolynomial._raw(s),
            LaurentPolynomial._raw(u))


# ---------------------------------------------------------------------------

class RationalFunction:
    """An element of Q(t) in reduced form.

    The denominator is an ordinary polynomial with nonzero constant term,
    integral with content 1 and positive leading coefficient; all units of
    Q[t, 1/t] are absorbed into the numerator, so equal functions have equal
    representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = as_laurent(num), as_laurent(den)
        if not den.coeffs:
            raise InvalidInput("zero denominator")
        if not num.coeffs:
            self._set(LaurentPolynomial(), ONE)
            return
        if len(den.coeffs) > 1:
            g = _pgcd(num.coeffs, den.coeffs)
            if len(g) > 1:
                gp = LaurentPolynomial._raw(g)
                num = num.exact_div(gp)
                den = den.exact_div(gp)
        c, p = _primitive_list(den.coeffs)
        num = LaurentPolynomial._raw([qdiv(x, c) for x in num.coeffs], num.low - den.low)
        self._set(num, LaurentPolynomial._raw(p))

    def _set(self, num, den):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction, LaurentPolynomial)):
            return RationalFunction._raw(as_laurent(x), ONE)
        return None

    @property
    def numerator(self) -> LaurentPolynomial:
        return self.num

    @property
    def denominator(self) -> LaurentPolynomial:
        return self.den

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def as_laurent(self) -> LaurentPolynomial:
        if self.den != ONE:
            raise InvalidInput(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == ONE:
            return hash(self.num)
        return hash((self.num, self.den))

    def __call__(self, point):
        d = substitute(self.den, point)
        if d == 0:
            raise InvalidInput(f"pole at t = {format_rational(point)}")
        return qdiv(substitute(self.num, point), d)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(self.num.derivative() * self.den - self.num * self.den.derivative(),
                                self.den * self.den)

    def invert_variable(self) -> "RationalFunction":
        return RationalFunction(self.num.invert_variable(), self.den.invert_variable())

    def reduced(self) -> "RationalFunction":
        """Canonical representative modulo Q[t, 1/t]: numerator of degree
        below the denominator's, no negative exponents."""
        if self.den.is_constant():
            return RationalFunction._raw(LaurentPolynomial(), ONE)
        den = self.den.coeffs
        num = self.num
        if num.low >= 0:
            _, rem = _pdivmod(num.dense(), den)
        else:
            # t is invertible modulo den because den(0) != 0
            _, t_inv, _ = _pxgcd([0, 1], den)
            base = list(num.coeffs)
            _, rem = _pdivmod(base, den)
            for _ in range(-num.low):
                _, rem = _pdivmod(_pmul(rem, t_inv), den)
        return RationalFunction._raw(LaurentPolynomial._raw(rem), self.den)

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self!s})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        if isinstance(obj, dict) and "num" in obj:
            return cls(LaurentPolynomial.from_json(obj["num"]),
                       LaurentPolynomial.from_json(obj.get("den", "1")))
        return cls(LaurentPolynomial.from_json(obj))


def as_rational_function(x) -> RationalFunction:
    r = RationalFunction._coerce(x)
    if r is None:
        raise InvalidInput(f"not a rational function: {x!r}")
    return r


# ---------------------------------------------------------------------------
# the chi functional

@dataclass(frozen=True)
class ChiDecomposition:
    """``f = lambda_part + proper_part`` with ``lambda_part`` in
    Q[t, 1/t, 1/(1-t)] and ``proper_part`` a proper fraction whose
    denominator is prime to ``t`` and ``1 - t``."""
    lambda_part: RationalFunction
    proper_part: RationalFunction


_T_MINUS_ONE = [-1, 1]


def decompose_chi(f) -> ChiDecomposition:
    """Split ``f`` along Q(t) = Lambda (+) E.

    >>> d = decompose_chi(RationalFunction(ONE, T * (T + 2)))
    >>> print(d.lambda_part, '|', d.proper_part)
    1/2*t^-1 | (-1/2)/(t + 2)
    """
    f = as_rational_function(f)
    if f.den.is_constant():
        return ChiDecomposition(f, RationalFunction(0))
    num = f.num
    t_power = max(0, -num.low)
    num0 = num.shift(t_power).dense()   # f = num0 / (t^t_power * den)
    cof = list(f.den.coeffs)
    one_minus_t = 0
    while True:
        quo, rem = _pdivmod(cof, _T_MINUS_ONE)
        if rem:
            break
        cof = quo
        one_minus_t += 1
    if len(cof) == 1:
        return ChiDecomposition(f, RationalFunction(0))
    special = _pmul([0] * t_power + [1], _pow_list(_T_MINUS_ONE, one_minus_t))
    g, u, v = _pxgcd(cof, special)
    assert g == [1], "cofactor must be prime to t and 1 - t"
    # 1 = u*cof + v*special, so num0/(special*cof) = num0*u/special + num0*v/cof
    quo, rem = _pdivmod(_pmul(num0, v), cof)
    cof_p = LaurentPolynomial._raw(cof)
    proper = RationalFunction(LaurentPolynomial._raw(rem), cof_p)
    lam = f - proper
    return ChiDecomposition(lam, proper)


def _pow_list(a: List, n: int) -> List:
    out = [1]
    for _ in range(n):
        out = _pmul(out, a)
    return out


def chi(f) -> Scalar:
    """The Q-linear functional vanishing on Q[t, 1/t, 1/(1-t)] and sending a
    proper fraction ``E`` with denominator prime to ``t(1-t)`` to ``E'(1)``.

    >>> chi(RationalFunction(T - 1, T + 2))
    Fraction(1, 3)
    """
    proper = decompose_chi(f).proper_part
    if proper.is_zero():
        return 0
    return proper.derivative()(1)
