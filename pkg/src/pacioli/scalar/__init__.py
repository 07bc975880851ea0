"""Numeric kernel: exact Q(sqrt 5) values and certified interval evaluation."""
from .interval import Dyadic, Interval
from .q5 import PHI, SQRT5, ExactQ5, q5_arith
from .real import (
    DEFAULT_POLICY,
    Real,
    Sign,
    SignPolicy,
    SignVerdict,
    certified_enclosure,
    enclose,
    evaluate,
    evaluate_with_bits,
    sign,
    sqrt,
)

__all__ = [
    "DEFAULT_POLICY", "Dyadic", "ExactQ5", "Interval", "PHI", "Real", "SQRT5", "Sign",
    "SignPolicy", "SignVerdict", "certified_enclosure", "enclose", "evaluate", "evaluate_with_bits", "q5_arith",
    "sign", "sqrt",
]
