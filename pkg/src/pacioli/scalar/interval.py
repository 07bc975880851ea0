"""Intervals with dyadic endpoints and outward rounding.

An endpoint is ``man * 2**exp`` with Python integers, so every rounding step is
an exact integer operation and results do not depend on the platform's floats.
Rounding to ``prec`` bits keeps ``prec`` significant bits of the mantissa;
lower endpoints round toward -inf and upper endpoints toward +inf.
"""
from decimal import Decimal, ROUND_CEILING, ROUND_FLOOR, localcontext
from fractions import Fraction
from math import isqrt
from typing import NamedTuple


class Dyadic(NamedTuple):
    man: int
    exp: int

    @classmethod
    def of(cls, man, exp=0):
        if man == 0:
            return ZERO
        tz = (man & -man).bit_length() - 1
        return cls(man >> tz, exp + tz)

    def __float__(self):
        return float(self.fraction())

    def fraction(self):
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def sign(self):
        return (self.man > 0) - (self.man < 0)

    def to_decimal(self):
        """Exact decimal value (dyadics always have a terminating expansion)."""
        if self.exp >= 0:
            return Decimal(self.man << self.exp)
        # man / 2**k == man * 5**k / 10**k
        k = -self.exp
        # string construction is exact; Decimal arithmetic would round to the context
        return Decimal(f"{self.man * 5 ** k}e-{k}")

    def __repr__(self):
        return f"Dyadic({self.man}, {self.exp})"


ZERO = Dyadic(0, 0)


def _round(man, exp, prec, up):
    n = abs(man).bit_length()
    if n <= prec:
        return Dyadic.of(man, exp)
    shift = n - prec
    q = man >> shift
    if up and (q << shift) != man:
        q += 1
    return Dyadic.of(q, exp + shift)


def _add_exact(x, y):
    if x.man == 0:
        return y
    if y.man == 0:
        return x
    e = min(x.exp, y.exp)
    return Dyadic.of((x.man << (x.exp - e)) + (y.man << (y.exp - e)), e)


def _neg(x):
    return Dyadic(-x.man, x.exp)


def _mul_exact(x, y):
    return Dyadic.of(x.man * y.man, x.exp + y.exp)


def _cmp(x, y):
    return _add_exact(x, _neg(y)).sign()


def _div(x, y, prec, up):
    if x.man == 0:
        return ZERO
    num, den = x.man, y.man
    if den < 0:
        num, den = -num, -den
    k = max(0, prec + den.bit_length() - abs(num).bit_length() + 2)
    num <<= k
    q = -((-num) // den) if up else num // den
    return _round(q, x.exp - y.exp - k, prec, up)


def _sqrt(x, prec, up):
    if x.man == 0:
        return ZERO
    man, exp = x.man, x.exp
    s = max(0, 2 * prec + 2 - man.bit_length())
    if (exp - s) % 2:
        s += 1
    m = man << s
    r = isqrt(m)
    if up and r * r != m:
        r += 1
    return _round(r, (exp - s) // 2, prec, up)


def round_down(x, prec):
    return _round(x.man, x.exp, prec, False)


def round_up(x, prec):
    return _round(x.man, x.exp, prec, True)


def _min(*xs):
    out = xs[0]
    for x in xs[1:]:
        if _cmp(x, out) < 0:
            out = x
    return out


def _max(*xs):
    out = xs[0]
    for x in xs[1:]:
        if _cmp(x, out) > 0:
            out = x
    return out


class Interval:
    """Closed interval ``[lo, hi]`` with dyadic endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        if _cmp(lo, hi) > 0:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    @classmethod
    def point(cls, d):
        return cls(d, d)

    @classmethod
    def from_int(cls, n, prec):
        d = Dyadic.of(n)
        return cls(round_down(d, prec), round_up(d, prec))

    @classmethod
    def from_fraction(cls, q, prec):
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if den & (den - 1) == 0:
            d = Dyadic.of(num, -(den.bit_length() - 1))
            return cls(round_down(d, prec), round_up(d, prec))
        x, y = Dyadic.of(num), Dyadic.of(den)
        return cls(_div(x, y, prec, False), _div(x, y, prec, True))

    # queries

    def contains(self, value):
        """True if the rational (or dyadic) ``value`` lies in the interval."""
        if isinstance(value, Dyadic):
            return _cmp(self.lo, value) <= 0 <= _cmp(self.hi, value)
        v = Fraction(value)
        return self.lo.fraction() <= v <= self.hi.fraction()

    def overlaps(self, other):
        return _cmp(self.lo, other.hi) <= 0 and _cmp(other.lo, self.hi) <= 0

    def intersect(self, other):
        return Interval(_max(self.lo, other.lo), _min(self.hi, other.hi))

    def width(self):
        return _add_exact(self.hi, _neg(self.lo))

    def midpoint(self):
        s = _add_exact(self.lo, self.hi)
        return Dyadic.of(s.man, s.exp - 1)

    def magnitude(self):
        """Largest absolute value in the interval."""
        return _max(Dyadic(abs(self.lo.man), self.lo.exp), Dyadic(abs(self.hi.man), self.hi.exp))

    def excludes_zero(self):
        return self.lo.man > 0 or self.hi.man < 0

    def sign(self):
        """+1 or -1 when the interval excludes zero, else 0."""
        if self.lo.man > 0:
            return 1
        if self.hi.man < 0:
            return -1
        return 0

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    # arithmetic at a working precision

    def add(self, other, prec):
        return Interval(round_down(_add_exact(self.lo, other.lo), prec),
                        round_up(_add_exact(self.hi, other.hi), prec))

    def sub(self, other, prec):
        return Interval(round_down(_add_exact(self.lo, _neg(other.hi)), prec),
                        round_up(_add_exact(self.hi, _neg(other.lo)), prec))

    def neg(self):
        return Interval(_neg(self.hi), _neg(self.lo))

    def mul(self, other, prec):
        ps = [_mul_exact(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(round_down(_min(*ps), prec), round_up(_max(*ps), prec))

    def square(self, prec):
        lo, hi = self.lo, self.hi
        if lo.man >= 0:
            a, b = _mul_exact(lo, lo), _mul_exact(hi, hi)
        elif hi.man <= 0:
            a, b = _mul_exact(hi, hi), _mul_exact(lo, lo)
        else:
            a, b = ZERO, _max(_mul_exact(lo, lo), _mul_exact(hi, hi))
        return Interval(round_down(a, prec), round_up(b, prec))

    def div(self, other, prec):
        """Quotient; the caller guarantees ``other`` excludes zero."""
        assert other.excludes_zero()
        qs_lo = [_div(a, b, prec, False) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        qs_hi = [_div(a, b, prec, True) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(_min(*qs_lo), _max(*qs_hi))

    def sqrt(self, prec):
        """Square root of the nonnegative part; the caller handles negative operands."""
        lo = self.lo if self.lo.man > 0 else ZERO
        return Interval(_sqrt(lo, prec, False), _sqrt(self.hi, prec, True))

    # decimal output

    def to_decimal_strings(self, digits=40):
        """Decimal endpoints rounded outward to ``digits`` significant digits."""
        return (_decimal_str(self.lo, digits, ROUND_FLOOR),
                _decimal_str(self.hi, digits, ROUND_CEILING))


def _decimal_str(d, digits, rounding):
    exact = d.to_decimal()
    if exact == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        value = +exact
    return format_decimal(value)


def format_decimal(value):
    """Plain notation for moderate exponents, otherwise scientific; no trailing zeros."""
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = len(value.as_tuple().digits)
        value = value.normalize()
    adj = value.adjusted()
    if -7 <= adj <= 20:
        text = format(value, "f")
    else:
        text = format(value, "e")
        mant, _, exp = text.partition("e")
        text = f"{mant}e{int(exp)}"
    return text
