"""Exact arithmetic in k[q, q^-1] (k = Q) and its fraction field k(q).

``LaurentPoly`` is the coefficient type of every integral object.  ``QFrac``
only appears when a presentation needs rational-function coefficients to
write down a k(q)-basis (the SPANNING lattices); it collapses back to a
``LaurentPoly`` whenever the denominator cancels.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from gmpy2 import mpq, mpz

from . import kernel
from .errors import MathError

INF = math.inf

Rational = Union[int, Fraction]

_MPQ = type(mpq())
_MPZ = type(mpz())
# accepted exact rationals; non-integers are stored as gmpy2 mpq, which is an
# order of magnitude faster than fractions.Fraction in the gcd-heavy paths
RATIONAL_TYPES = (int, Fraction, _MPQ, _MPZ)


class NotDivisible(MathError):
    """Raised when an exact division by a power of (q-1) is impossible."""


def _norm_rat(c) -> Rational:
    t = type(c)
    if t is int:
        return c
    if t is _MPQ:
        return int(c.numerator) if c.denominator == 1 else c
    if t is _MPZ:
        return int(c)
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else mpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return int(c)
    if isinstance(c, str):
        return _norm_rat(mpq(c))
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Finite Q-combination of integer powers of q.

    Stored as a map exponent -> nonzero rational.  Instances are immutable
    and hashable; ``int`` and ``Fraction`` operands are coerced to constants.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _norm_rat(c)
                if c:
                    t[int(e)] = c
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        c = _norm_rat(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> "LaurentPoly":
        c = _norm_rat(c)
        return cls._raw({e: c} if c else {})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    # ring structure -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, RATIONAL_TYPES):
            if not other:
                return not self._t
            return self._t == {0: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            if not self._t:
                self._h = hash(0)
            elif len(self._t) == 1 and 0 in self._t:
                self._h = hash(self._t[0])
            else:
                self._h = hash(frozenset(self._t.items()))
        return self._h

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __pos__(self) -> "LaurentPoly":
        return self

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernel.poly_add(self._t, other._t))
        if isinstance(other, RATIONAL_TYPES):
            return LaurentPoly._raw(kernel.poly_add(self._t, {0: other} if other else {}))
        if isinstance(other, QFrac):
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (LaurentPoly, QFrac, RATIONAL_TYPES)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._raw(kernel.poly_mul(self._t, other._t))
        if isinstance(other, RATIONAL_TYPES):
            other = _norm_rat(other)
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _norm_rat(c * other) for e, c in self._t.items()})
        if isinstance(other, QFrac):
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * _norm_rat(mpq(1) / mpq(other))
        if isinstance(other, LaurentPoly):
            return QFrac(self, other)
        if isinstance(other, QFrac):
            return QFrac(self * other.den, other.num)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return QFrac(LaurentPoly.const(other), self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._t) == 1:
                (e, c), = self._t.items()
                return LaurentPoly._raw({e * k: _norm_rat(mpq(1) / mpq(c) ** (-k))})
            return QFrac(LaurentPoly.const(1), self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # inspection -----------------------------------------------------------

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant(self) -> Rational:
        return self._t.get(0, 0)

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def valuation(self):
        """Order of vanishing at q = 1 (``math.inf`` for zero)."""
        if not self._t:
            return INF
        lo = min(self._t)
        coeffs = [self._t.get(e, 0) for e in range(lo, max(self._t) + 1)]
        return _poly_val1(coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by (q-1)^k, raising NotDivisible if k < 0 is not exact."""
        if k >= 0:
            return self * Q_MINUS_1 ** k
        if not self._t:
            return self
        if self.valuation() < -k:
            raise NotDivisible(f"({self}) is not divisible by (q-1)^{-k}")
        lo = min(self._t)
        coeffs = [mpq(self._t.get(e, 0)) for e in range(lo, max(self._t) + 1)]
        for _ in range(-k):
            coeffs = _div_q1(coeffs)
        return LaurentPoly({lo + i: c for i, c in enumerate(coeffs)})

    def eval1(self) -> Rational:
        return _norm_rat(sum((mpq(c) for c in self._t.values()), mpq(0)))

    def evaluate(self, x):
        return sum(c * x ** e for e, c in self._t.items())

    def subs_q_inverse(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    # rendering ------------------------------------------------------------

    def to_str(self, descending: bool = False) -> str:
        if not self._t:
            return "0"
        exps = sorted(self._t, reverse=descending)
        parts = []
        for i, e in enumerate(exps):
            c = self._t[e]
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                qs = "q" if e == 1 else f"q^{e}"
                body = qs if a == 1 else f"{a}*{qs}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()!r})"

    def num_terms(self) -> int:
        return len(self._t)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})
Q_INV = LaurentPoly._raw({-1: 1})
Q_MINUS_1 = LaurentPoly._raw({0: -1, 1: 1})


# dense polynomial helpers (ascending coefficient lists over Q) --------------

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_val1(coeffs: list) -> int:
    v = 0
    cur = [mpq(c) for c in coeffs]
    while True:
        if sum(cur) != 0:
            return v
        cur = _div_q1(cur)
        v += 1


def _div_q1(coeffs: list) -> list:
    # synthetic division by (q - 1); caller guarantees exactness
    n = len(coeffs) - 1
    out = [mpq(0)] * n
    acc = mpq(0)
    for i in range(n, 0, -1):
        acc = coeffs[i] + acc
        out[i - 1] = acc
    return out


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    quo = [mpq(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = c / lb
            quo[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return _trim(quo), _trim(a[:db])


def _pgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    lc = a[-1]
    return [c / lc for c in a]


def _split(p: LaurentPoly) -> tuple[int, list]:
    """p = q^lo * poly with poly(0) != 0."""
    lo = p.min_exp()
    return lo, [mpq(p._t.get(e, 0)) for e in range(lo, p.max_exp() + 1)]


def _from_dense(lo: int, coeffs: list) -> LaurentPoly:
    return LaurentPoly({lo + i: c for i, c in enumerate(coeffs) if c})


_Q1_POWERS: dict = {}
_REDUCED: dict = {}  # (num, den) -> lowest terms
_Q1_DENS: dict = {}


def _q1_power(dc: list):
    """k if dc is a scalar multiple of (q - 1)^k, else None."""
    if not _Q1_POWERS:
        cur = [mpq(1)]
        for k in range(41):
            _Q1_POWERS[tuple(cur)] = k
            _Q1_DENS[k] = _from_dense(0, cur)
            cur = [(cur[i - 1] if i else 0) - (cur[i] if i < len(cur) else 0) for i in range(len(cur) + 1)]
    lc = dc[-1]
    key = tuple(c / lc for c in dc) if lc != 1 else tuple(dc)
    return _Q1_POWERS.get(key)


def _over_q1_power(shift: int, nc: list, k: int, d0):
    # nc / (c * (q-1)^k) with d0 = c * (-1)^k; cancel (q-1) factors by synthetic division
    lc = (-1) ** k * d0  # leading coefficient of the original denominator
    while k and sum(nc) == 0:
        nc = _div_q1(nc)
        k -= 1
    nc = [c / lc for c in nc]
    n = _from_dense(shift, nc)
    if not k:
        return n
    obj = object.__new__(QFrac)
    obj.num = n
    obj.den = _Q1_DENS[k]
    obj._h = None
    return obj


class QFrac:
    """Element of k(q): ``num / den`` in lowest terms.

    ``den`` is a monic polynomial with nonzero constant term; powers of q are
    absorbed into ``num``.  Construction returns a ``LaurentPoly`` when the
    denominator cancels completely, so callers should treat the result as a
    generic coefficient.
    """

    __slots__ = ("num", "den", "_h")

    def __new__(cls, num, den=1):
        num = _as_lp(num)
        den = _as_lp(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ZERO
        key = (num, den)
        hit = _REDUCED.get(key)
        if hit is None:
            if len(_REDUCED) > 100_000:
                _REDUCED.clear()
            hit = _REDUCED[key] = cls._reduce(num, den)
        return hit

    @classmethod
    def _reduce(cls, num, den):
        dlo, dc = _split(den)
        nlo, nc = _split(num)
        k = _q1_power(dc)
        if k is not None:
            return _over_q1_power(nlo - dlo, nc, k, dc[0])
        g = _pgcd(nc, dc)
        if len(g) > 1:
            nc, _ = _pdivmod(nc, g)
            dc, _ = _pdivmod(dc, g)
        lc = dc[-1]
        nc = [c / lc for c in nc]
        dc = [c / lc for c in dc]
        n = _from_dense(nlo - dlo, nc)
        if len(dc) == 1:
            return n
        obj = object.__new__(cls)
        obj.num = n
        obj.den = _from_dense(0, dc)
        obj._h = None
        return obj

    def __bool__(self) -> bool:
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, QFrac):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, RATIONAL_TYPES)):
            return False
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __neg__(self):
        return _make(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, QFrac):
            if self.den == other.den:
                return QFrac(self.num + other.num, self.den)
            return QFrac(self.num * other.den + other.num * self.den, self.den * other.den)
        if isinstance(other, (LaurentPoly, RATIONAL_TYPES)):
            return _make(self.num + other * self.den, self.den)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (QFrac, LaurentPoly, RATIONAL_TYPES)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QFrac):
            return QFrac(self.num * other.num, self.den * other.den)
        if isinstance(other, LaurentPoly):
            return QFrac(self.num * other, self.den)
        if isinstance(other, RATIONAL_TYPES):
            if not other:
                return ZERO
            return _make(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QFrac):
            return QFrac(self.num * other.den, self.den * other.num)
        if isinstance(other, (LaurentPoly, RATIONAL_TYPES)):
            return QFrac(self.num, self.den * other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (LaurentPoly, RATIONAL_TYPES)):
            return QFrac(self.den * other, self.num)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return QFrac(self.den ** (-k), self.num ** (-k))
        return QFrac(self.num ** k, self.den ** k)

    def valuation(self):
        return self.num.valuation() - self.den.valuation()

    def shift(self, k: int):
        if k >= 0:
            return self * Q_MINUS_1 ** k
        return QFrac(self.num, self.den * Q_MINUS_1 ** (-k))

    def eval1(self) -> Rational:
        if self.valuation() < 0:
            raise NotDivisible(f"({self}) has a pole at q = 1")
        # lowest terms: a nonnegative valuation means den(1) != 0
        return _norm_rat(mpq(self.num.eval1()) / mpq(self.den.eval1()))

    def is_constant(self) -> bool:
        return False

    def to_str(self, descending: bool = False) -> str:
        return f"({self.num.to_str(descending)})/({self.den.to_str(descending)})"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"QFrac({self.to_str()!r})"

    def num_terms(self) -> int:
        return 2


def _make(num: LaurentPoly, den: LaurentPoly):
    # num/den already coprime up to the scalar change; skip the gcd
    if not num:
        return ZERO
    obj = object.__new__(QFrac)
    obj.num = num
    obj.den = den
    obj._h = None
    return obj


Coeff = Union[LaurentPoly, QFrac]


def _as_lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, RATIONAL_TYPES):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {x!r} as a Laurent polynomial")


def as_coeff(x) -> Coeff:
    if isinstance(x, (LaurentPoly, QFrac)):
        return x
    return _as_lp(x)


def is_laurent(c) -> bool:
    return isinstance(c, (LaurentPoly, RATIONAL_TYPES))


def valuation(c):
    """(q-1)-adic valuation of any coefficient."""
    if isinstance(c, RATIONAL_TYPES):
        return INF if not c else 0
    return c.valuation()


def eval1(c) -> Rational:
    if isinstance(c, RATIONAL_TYPES):
        return _norm_rat(c)
    return c.eval1()


def shift_q1(c, k: int):
    """c * (q-1)^k.  Exact for QFrac; NotDivisible for LaurentPoly when impossible."""
    return as_coeff(c).shift(k)


# spec-level names -------------------------------------------------------

def lp_canonical(raw: Iterable[tuple[int, Rational]]) -> LaurentPoly:
    acc: dict = {}
    for e, c in raw:
        acc[e] = acc.get(e, 0) + _norm_rat(c)
    return LaurentPoly(acc)


def lp_q1_valuation(a: LaurentPoly):
    return a.valuation()


def lp_shift_q1(a: LaurentPoly, k: int) -> LaurentPoly:
    return a.shift(k)


def lp_eval1(a: LaurentPoly) -> Rational:
    return a.eval1()


def q_int(n: int) -> LaurentPoly:
    """The balanced quantum integer (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return ZERO
    sign = 1 if n > 0 else -1
    n = abs(n)
    return LaurentPoly({n - 1 - 2 * i: sign for i in range(n)})


def parse_coeff(text: str) -> Coeff:
    """Parse the rendered form, e.g. ``-1/2*q^-2 + q``."""
    from .cli import parse_scalar

    return parse_scalar(text)
