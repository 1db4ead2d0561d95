"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`Scalar` stores ``(a + b*i) / d`` with integers ``a, b, d``,
``d > 0`` and ``gcd(a, b, d) == 1``.  That triple is canonical, so equality
and hashing are structural.  The real and imaginary parts are available as
reduced :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational


class ScalarDivisionError(ZeroDivisionError):
    """Raised on division by the zero scalar."""


class NotASquareError(ValueError):
    """Raised when a square root does not exist in Q(i)."""


class Scalar:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Scalar":
        obj = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        obj._set(a, b, d)
        return obj

    # -- accessors -------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def is_imaginary(self) -> bool:
        """True for nonzero purely imaginary values."""
        return self._a == 0 and self._b != 0

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._d == other._d:
            return Scalar._raw(self._a + other._a, self._b + other._b, self._d)
        d1, d2 = self._d, other._d
        return Scalar._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, e = self._a, self._b, other._a, other._b
        return Scalar._raw(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ScalarDivisionError("division by zero scalar")
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        return Scalar._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Scalar":
        return Scalar._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Squared modulus ``|z|^2``."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._d))
            else:
                self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- text ------------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar._raw(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        return Scalar(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, Scalars or scalar text to a :class:`Scalar`."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return s


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)


def _frac_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: Scalar) -> str:
    """Text form, e.g. ``1/2+3/4*i``, ``-i``, ``5``; parses back exactly."""
    re, im = z.re, z.im
    if im == 0:
        return _frac_text(re)
    if im == 1:
        imt = "i"
    elif im == -1:
        imt = "-i"
    else:
        imt = f"{_frac_text(im)}*i"
    if re == 0:
        return imt
    if imt.startswith("-"):
        return f"{_frac_text(re)}{imt}"
    return f"{_frac_text(re)}+{imt}"


def parse_scalar(text: str) -> Scalar:
    from .parsing import parse, SCALAR_RING

    return parse(text, SCALAR_RING)


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt(z: Scalar) -> Scalar:
    """A square root of ``z`` inside Q(i).

    The root returned has positive real part, or positive imaginary part
    when the real part is zero.  Raises :class:`NotASquareError` when ``z``
    is not a square in Q(i).
    """
    z = as_scalar(z)
    if z.is_zero():
        return ZERO
    a, b = z.re, z.im
    r = _rational_sqrt(a * a + b * b)
    if r is None:
        raise NotASquareError(f"{z} is not a square in Q(i)")
    x = _rational_sqrt((a + r) / 2)
    y = _rational_sqrt((r - a) / 2)
    if x is None or y is None:
        raise NotASquareError(f"{z} is not a square in Q(i)")
    # x^2 - y^2 = a holds; fix the sign of y so that 2xy = b
    if x != 0 and 2 * x * y != b:
        y = -y
    root = Scalar(x, y)
    if root * root != z:
        raise NotASquareError(f"{z} is not a square in Q(i)")
    if root.re < 0 or (root.re == 0 and root.im < 0):
        root = -root
    return root
