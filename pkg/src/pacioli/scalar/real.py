"""Immutable real-number expression graphs with certified interval evaluation.

A :class:`Real` is a node in a DAG whose leaves are integers, rationals or exact
Q(sqrt 5) values. Whenever all inputs of a node are exact and the operation stays
inside Q(sqrt 5), the node also carries the exact value (``node.exact``), which is
what lets :func:`sign` answer ``EXACT_ZERO`` honestly. Everything else is decided
by outward-rounded interval evaluation at increasing precision.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational

from ..errors import DivisionByZero, DivisorStraddlesZero, SqrtOfNegative
from .interval import Interval
from .q5 import ExactQ5

DEFAULT_START_BITS = 64
DEFAULT_MAX_BITS = 4096
MIN_BITS = 8


class _Straddle(ArithmeticError):
    def __init__(self, kind, node):
        self.kind = kind
        self.node = node


class Real:
    __slots__ = ("op", "args", "exact")

    def __init__(self, op, args, exact=None):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Real is immutable")

    # construction

    @classmethod
    def of(cls, x):
        if isinstance(x, Real):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return cls("int", (x,), ExactQ5(x))
        if isinstance(x, Rational):
            q = Fraction(x)
            return cls("rat", (q,), ExactQ5(q))
        if isinstance(x, ExactQ5):
            return cls("q5", (x,), x)
        if isinstance(x, (float, str)):
            q = Fraction(x)
            return cls("rat", (q,), ExactQ5(q))
        raise TypeError(f"cannot make a Real from {type(x).__name__}")

    @staticmethod
    def _binary(op, x, y):
        x, y = Real.of(x), Real.of(y)
        exact = None
        if x.exact is not None and y.exact is not None:
            if op == "add":
                exact = x.exact + y.exact
            elif op == "sub":
                exact = x.exact - y.exact
            elif op == "mul":
                exact = x.exact * y.exact
            elif op == "div":
                if not y.exact:
                    raise DivisionByZero("exact division by zero")
                exact = x.exact / y.exact
        elif op == "div" and y.exact is not None and not y.exact:
            raise DivisionByZero("exact division by zero")
        elif op == "mul" and ((x.exact is not None and not x.exact) or (y.exact is not None and not y.exact)):
            exact = ExactQ5(0)
        return Real(op, (x, y), exact)

    def __add__(self, other):
        return Real._binary("add", self, other)

    def __radd__(self, other):
        return Real._binary("add", other, self)

    def __sub__(self, other):
        return Real._binary("sub", self, other)

    def __rsub__(self, other):
        return Real._binary("sub", other, self)

    def __mul__(self, other):
        return Real._binary("mul", self, other)

    def __rmul__(self, other):
        return Real._binary("mul", other, self)

    def __truediv__(self, other):
        return Real._binary("div", self, other)

    def __rtruediv__(self, other):
        return Real._binary("div", other, self)

    def __neg__(self):
        return Real("neg", (self,), None if self.exact is None else -self.exact)

    def __pos__(self):
        return self

    def square(self):
        """``x * x`` built as a syntactic square (evaluated as a nonnegative interval)."""
        return Real._binary("mul", self, self)

    def sqrt(self):
        exact = None
        if self.exact is not None:
            if self.exact.sign() < 0:
                raise SqrtOfNegative(f"sqrt of negative exact value {self.exact}")
            exact = self.exact.sqrt()
        return Real("sqrt", (self,), exact)

    @property
    def is_syntactic_square(self):
        return self.op == "mul" and self.args[0] is self.args[1]

    def __float__(self):
        return float(evaluate(self, 64).midpoint())

    def __repr__(self):
        if self.exact is not None:
            return f"Real({self.exact})"
        return f"Real<{self.op}>"

    # Value comparisons are deliberately not overloaded: use sign().
    __hash__ = object.__hash__


def sqrt(x):
    return Real.of(x).sqrt()


# evaluation

def _q5_interval(v, prec):
    lo = Interval.from_fraction(v.a, prec)
    if v.b == 0:
        return lo
    root5 = Interval.from_int(5, prec).sqrt(prec)
    return lo.add(Interval.from_fraction(v.b, prec).mul(root5, prec), prec)


def _eval(node, prec, memo):
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit
    op = node.op
    if op == "int":
        out = Interval.from_int(node.args[0], prec)
    elif op == "rat":
        out = Interval.from_fraction(node.args[0], prec)
    elif op == "q5":
        out = _q5_interval(node.args[0], prec)
    elif op == "neg":
        out = _eval(node.args[0], prec, memo).neg()
    elif op == "sqrt":
        arg = node.args[0]
        x = _eval(arg, prec, memo)
        if x.hi.man < 0:
            raise SqrtOfNegative("sqrt operand is certainly negative")
        if x.lo.man < 0 and not arg.is_syntactic_square:
            raise _Straddle("sqrt", node)
        out = x.sqrt(prec)
    else:
        a, b = node.args
        x = _eval(a, prec, memo)
        if op == "mul" and a is b:
            out = x.square(prec)
        else:
            y = _eval(b, prec, memo)
            if op == "add":
                out = x.add(y, prec)
            elif op == "sub":
                out = x.sub(y, prec)
            elif op == "mul":
                out = x.mul(y, prec)
            elif op == "div":
                if not y.excludes_zero():
                    raise _Straddle("div", node)
                out = x.div(y, prec)
            else:
                raise ValueError(f"unknown node {op!r}")
    memo[key] = out
    return out


def evaluate_at(x, precision):
    """One evaluation at exactly ``precision`` bits; may raise ``_Straddle``."""
    return _eval(Real.of(x), precision, {})


def _raise_straddle(err, bits):
    if err.kind == "div":
        raise DivisorStraddlesZero(f"divisor interval contains 0 at {bits} bits") from None
    raise SqrtOfNegative(f"sqrt operand interval straddles 0 at {bits} bits") from None


def evaluate_with_bits(x, precision, max_bits=DEFAULT_MAX_BITS):
    """Interval enclosure of ``x`` and the precision that produced it.

    Evaluation starts at ``precision`` bits. If a divisor or a (non-square) sqrt
    operand straddles zero, the precision doubles until ``max_bits``; after that
    the straddle is an error.
    """
    if precision < MIN_BITS:
        raise ValueError(f"precision must be at least {MIN_BITS} bits")
    x = Real.of(x)
    bits = precision
    while True:
        try:
            return _eval(x, bits, {}), bits
        except _Straddle as err:
            if bits >= max_bits:
                _raise_straddle(err, bits)
            bits = min(2 * bits, max(max_bits, precision))


def evaluate(x, precision, max_bits=DEFAULT_MAX_BITS):
    return evaluate_with_bits(x, precision, max(max_bits, precision))[0]


# sign decisions

@dataclass(frozen=True)
class SignPolicy:
    start_bits: int = DEFAULT_START_BITS
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.start_bits < MIN_BITS:
            raise ValueError(f"start_bits must be at least {MIN_BITS}")
        if self.start_bits > self.max_bits:
            raise ValueError("start_bits must not exceed max_bits")

    def ladder(self):
        bits = self.start_bits
        while bits < self.max_bits:
            yield bits
            bits *= 2
        yield self.max_bits


DEFAULT_POLICY = SignPolicy()


class Sign(Enum):
    NEGATIVE = -1
    EXACT_ZERO = 0
    POSITIVE = 1
    UNDECIDED = None


@dataclass(frozen=True)
class SignVerdict:
    """Outcome of a sign decision.

    ``precision`` is the working precision of the deciding evaluation (0 when
    decided by the exact layer) and ``interval`` the enclosure it produced, if any.
    """
    sign: Sign
    precision: int
    interval: Interval = None

    @property
    def certified(self):
        return self.sign in (Sign.NEGATIVE, Sign.POSITIVE, Sign.EXACT_ZERO)

    @property
    def nonzero(self):
        return self.sign in (Sign.NEGATIVE, Sign.POSITIVE)

    @property
    def final_width(self):
        return None if self.interval is None else self.interval.width()

    @property
    def value(self):
        return self.sign.value


def sign(x, policy=DEFAULT_POLICY):
    """Certified sign of ``x``.

    POSITIVE/NEGATIVE require an enclosure excluding zero; EXACT_ZERO comes only
    from the exact Q(sqrt 5) layer. Anything else is UNDECIDED, carrying the
    enclosure reached at ``policy.max_bits``.
    """
    x = Real.of(x)
    if x.exact is not None:
        s = x.exact.sign()
        return SignVerdict(Sign(s), 0, None)
    last = None
    for bits in policy.ladder():
        try:
            iv = _eval(x, bits, {})
        except _Straddle as err:
            if bits >= policy.max_bits:
                _raise_straddle(err, bits)
            continue
        last = (iv, bits)
        s = iv.sign()
        if s:
            return SignVerdict(Sign(s), bits, iv)
    iv, bits = last
    return SignVerdict(Sign.UNDECIDED, bits, iv)


def certified_enclosure(x, policy=DEFAULT_POLICY):
    """``(interval, bits)`` for the first ladder step whose enclosure excludes zero.

    Unlike :func:`sign` this always evaluates, so exact values get an enclosure
    too. If no step excludes zero the ``policy.max_bits`` enclosure is returned.
    """
    x = Real.of(x)
    iv = bits = None
    for bits in policy.ladder():
        try:
            iv = _eval(x, bits, {})
        except _Straddle as err:
            if bits >= policy.max_bits:
                _raise_straddle(err, bits)
            continue
        if iv.excludes_zero():
            break
    return iv, bits


def enclose(x, width, policy=DEFAULT_POLICY):
    """Enclosure of ``x`` no wider than ``width``, intersecting the ladder's results.

    Returns ``(interval, bits)``; ``interval`` may still be wider than ``width``
    when ``policy.max_bits`` is reached, which the caller must check.
    """
    x = Real.of(x)
    target = Fraction(width)
    best = None
    for bits in policy.ladder():
        try:
            iv = _eval(x, bits, {})
        except _Straddle as err:
            if bits >= policy.max_bits:
                _raise_straddle(err, bits)
            continue
        best = iv if best is None else best.intersect(iv)
        if best.width().fraction() <= target:
            return best, bits
    return best, bits

