"""Exact scalars: rationals (``fractions.Fraction``) and quadratic extensions Q(sqrt d).

A scalar is either a ``Fraction`` or a :class:`QuadExt`.  Arithmetic that
produces a zero irrational part collapses back to ``Fraction`` so that equal
values always share one representation (and one hash).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Optional, Union

__all__ = [
    "QuadExt",
    "Scalar",
    "FieldMismatch",
    "NegativeInput",
    "as_scalar",
    "field_of",
    "common_field",
    "quad",
    "sign",
    "is_real",
    "sqrt_in_field",
    "squarefree_split",
    "modulus_sq",
    "modulus",
    "to_float",
    "to_complex",
    "complex_conjugate",
    "galois_conjugate",
    "parse_scalar",
    "format_scalar",
]


class FieldMismatch(ValueError):
    """Two values from different quadratic fields were combined."""


class NegativeInput(ValueError):
    """A square root was requested of a provably negative value."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@lru_cache(maxsize=256)
def _is_squarefree(d: int) -> bool:
    n = abs(d)
    if n == 1:
        return True
    from sympy import factorint

    return all(e == 1 for e in factorint(n).values())


class QuadExt:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d``.

    Instances are immutable.  Use :func:`quad` to build values; it returns a
    plain ``Fraction`` when ``b == 0``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        d = int(d)
        if d in (0, 1) or not _is_squarefree(d):
            raise ValueError(f"d must be a squarefree integer other than 0, 1; got {d}")
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt, (self.a, self.b, self.d))

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, e = o
        return quad(self.a * c + self.d * self.b * e, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d b^2`` (product with the Galois conjugate)."""
        return self.a * self.a - self.d * self.b * self.b

    def _inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        return quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
            return self * other._inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return quad(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other) * self._inverse()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.d < 0:
            raise TypeError("abs() of a non-real value; use modulus()")
        return -self if sign(self) < 0 else self

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and (self.d == other.d or self.b == 0)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        if not isinstance(other, (int, Fraction, QuadExt)):
            raise TypeError
        return sign(self - other)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conjugations / conversion -----------------------------------------

    def galois_conjugate(self):
        return quad(self.a, -self.b, self.d)

    def conjugate(self):
        """Complex conjugate (identity on real fields)."""
        return self.galois_conjugate() if self.d < 0 else self

    def __float__(self):
        return to_float(self)

    def __complex__(self):
        return to_complex(self)

    def __repr__(self):
        return f"QuadExt({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QuadExt]


def quad(a, b, d: int) -> Scalar:
    """Build ``a + b*sqrt(d)``, collapsing to ``Fraction`` when ``b == 0``."""
    b = _frac(b)
    if b == 0:
        return _frac(a)
    return QuadExt(a, b, d)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, QuadExt and scalar strings; floats are rejected."""
    if isinstance(x, QuadExt):
        return x if x.b != 0 else x.a
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact scalar: {x!r} ({type(x).__name__})")


def field_of(x) -> Optional[int]:
    """``d`` for a QuadExt with nonzero irrational part, else ``None``."""
    if isinstance(x, QuadExt) and x.b != 0:
        return x.d
    return None


def common_field(values) -> Optional[int]:
    d = None
    for v in values:
        e = field_of(v)
        if e is None:
            continue
        if d is None:
            d = e
        elif d != e:
            raise FieldMismatch(f"entries mix sqrt({d}) and sqrt({e})")
    return d


def is_real(x) -> bool:
    return not (isinstance(x, QuadExt) and x.d < 0 and x.b != 0)


def sign(x) -> int:
    """Exact sign of a real scalar."""
    if isinstance(x, QuadExt):
        if x.b == 0:
            return (x.a > 0) - (x.a < 0)
        if x.d < 0:
            raise TypeError(f"sign of non-real value {x}")
        sa = (x.a > 0) - (x.a < 0)
        sb = (x.b > 0) - (x.b < 0)
        if sa == sb or sa == 0:
            return sb
        # signs differ: compare a^2 with d b^2
        diff = x.a * x.a - x.d * x.b * x.b
        return sa if diff > 0 else sb
    x = _frac(x)
    return (x > 0) - (x < 0)


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def squarefree_split(q) -> tuple[Fraction, int]:
    """Write a nonzero rational ``q`` as ``k**2 * D`` with ``D`` a squarefree integer."""
    from sympy import factorint

    q = _frac(q)
    if q == 0:
        raise ValueError("zero has no squarefree part")
    n = abs(q.numerator) * q.denominator
    k, dpart = 1, 1
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            dpart *= p
    D = dpart if q > 0 else -dpart
    return Fraction(k, q.denominator), D


def sqrt_in_field(x, d: Optional[int] = None) -> Optional[Scalar]:
    """Nonnegative square root of a nonnegative real ``x`` inside its own field.

    For a ``Fraction`` the root is searched in Q, and additionally in
    Q(sqrt d) when ``d`` is given.  For ``a + b*sqrt(d)`` with ``d > 0`` the
    root is searched in Q(sqrt d).  Returns ``None`` when no root exists
    there; raises :class:`NegativeInput` for provably negative ``x``.
    """
    x = as_scalar(x)
    if isinstance(x, Fraction):
        if x < 0:
            raise NegativeInput(f"sqrt of negative value {x}")
        r = _rational_sqrt(x)
        if r is not None or d is None:
            return r
        if d < 0:
            return None
        # x = c^2 d  <=>  x/d is a rational square
        c = _rational_sqrt(x / d)
        return None if c is None else quad(0, c, d)
    if d is not None and d != x.d:
        raise FieldMismatch(f"value lives in sqrt({x.d}), requested sqrt({d})")
    if x.d < 0:
        raise TypeError(f"sqrt_in_field needs a real value, got {x}")
    if sign(x) < 0:
        raise NegativeInput(f"sqrt of negative value {x}")
    if sign(x.galois_conjugate()) < 0:
        # the conjugate of a square is a square: no root in the field
        return None
    n = _rational_sqrt(x.norm())
    if n is None:
        return None
    for p2 in ((x.a + n) / 2, (x.a - n) / 2):
        p = _rational_sqrt(p2)
        if p is None or p == 0:
            continue
        q = x.b / (2 * p)
        s = quad(p, q, x.d)
        if s * s == x:
            return -s if sign(s) < 0 else s
    return None


def modulus_sq(x) -> Fraction | Scalar:
    """``|x|^2 = x * conj(x)``."""
    x = as_scalar(x)
    return as_scalar(x * complex_conjugate(x))


def modulus(x) -> Union[Scalar, float]:
    """Exact ``|x|`` when it lies in the field of ``x`` (or Q), else a float."""
    x = as_scalar(x)
    if is_real(x):
        return -x if sign(x) < 0 else x
    r = sqrt_in_field(modulus_sq(x))
    return r if r is not None else abs(to_complex(x))


def complex_conjugate(x) -> Scalar:
    if isinstance(x, QuadExt) and x.d < 0:
        return x.galois_conjugate()
    return x


def galois_conjugate(x) -> Scalar:
    if isinstance(x, QuadExt):
        return x.galois_conjugate()
    return x


def _sqrt_fraction(q: Fraction, bits: int = 160) -> Fraction:
    """High-precision rational approximation of sqrt(q), relative error < 2**-bits."""
    n, m = q.numerator, q.denominator
    nm = n * m
    k = max(0, (2 * bits - nm.bit_length()) // 2 + 1)
    return Fraction(math.isqrt(nm << (2 * k)), m << k)


def to_float(x):
    """Double-precision value; a (real, imag) pair for values in an imaginary field."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return float(x)
    if x.d < 0:
        return (float(x.a), float(x.b * _sqrt_fraction(Fraction(-x.d))))
    root = _sqrt_fraction(Fraction(x.d))
    if sign(x.a) * sign(x.b) >= 0:
        return float(x.a + x.b * root)
    # a and b*sqrt(d) cancel: divide the norm by the non-cancelling conjugate
    return float(x.norm() / (x.a - x.b * root))


def to_complex(x) -> complex:
    v = to_float(x)
    if isinstance(v, tuple):
        return complex(*v)
    return complex(v)


# -- text grammar ------------------------------------------------------------

_TERM = r"-?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<a>{_TERM})(?:(?P<op>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>-?\d+)\))?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``a``, ``a/b`` or ``a/b+c/e*sqrt(D)`` (no inner whitespace)."""
    m = _SCALAR_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    a = Fraction(m.group("a"))
    if m.group("b") is None:
        return a
    b = Fraction(m.group("b"))
    if m.group("op") == "-":
        b = -b
    return quad(a, b, int(m.group("d")))


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; canonical and round-trip exact."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return _fmt_frac(x)
    op = "+" if x.b > 0 else "-"
    return f"{_fmt_frac(x.a)}{op}{_fmt_frac(abs(x.b))}*sqrt({x.d})"
