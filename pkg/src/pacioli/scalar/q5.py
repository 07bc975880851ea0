"""Exact arithmetic in the quadratic field Q(sqrt 5)."""
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from numbers import Rational

from ..errors import DivisionByZero


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None if it is irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
class ExactQ5:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``.

    The pair ``(a, b)`` is unique for each value, so equality and hashing work on
    the pair directly.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("ExactQ5 is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ExactQ5):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, str):
            return cls(Fraction(x))
        return NotImplemented

    # field operations

    def __add__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return ExactQ5(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ExactQ5(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return ExactQ5(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        return ExactQ5(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return ExactQ5(self.a, -self.b)

    def norm(self):
        """Field norm ``a**2 - 5 b**2``; zero only for zero."""
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero("division by zero in Q(sqrt 5)")
        return ExactQ5(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** -n
        result, base = ExactQ5(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order

    def sign(self):
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a**2 with 5 b**2
        return sa if a * a > 5 * b * b else sb

    def __eq__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        other = ExactQ5.coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_rational(self):
        return self.b == 0

    def sqrt(self):
        """Exact nonnegative square root inside Q(sqrt 5), or None if there is none."""
        if self.sign() < 0:
            return None
        a, b = self.a, self.b
        m = rational_sqrt(self.norm())
        if m is None:
            return None
        for c2 in ((a + m) / 2, (a - m) / 2):
            c = rational_sqrt(c2)
            if c is None:
                continue
            if c:
                d = b / (2 * c)
            else:
                d = rational_sqrt(a / 5)
                if d is None:
                    continue
            root = ExactQ5(c, d)
            if root * root == self:
                return -root if root.sign() < 0 else root
        return None

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __repr__(self):
        return f"ExactQ5({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}*sqrt5"


SQRT5 = ExactQ5(0, 1)
PHI = ExactQ5(Fraction(1, 2), Fraction(1, 2))


def q5_arith(x, y, op):
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` exactly."""
    x, y = ExactQ5.coerce(x), ExactQ5.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")
