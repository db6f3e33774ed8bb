"""Extended rational weights: exact rationals plus a distinguished minus infinity."""

from fractions import Fraction
from math import lcm
from numbers import Rational

__all__ = ["NEG_INF", "NegInf", "as_weight", "parse_rational", "format_rational", "wsum", "common_scale"]


class NegInf:
    """The weight of an absent edge.

    Absorbs addition and compares below every rational.  There is exactly one
    instance, ``NEG_INF``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (NegInf, ())

    def __add__(self, other):
        if other is self or isinstance(other, Rational):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("regiongraph.NEG_INF")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, Rational):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, Rational):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, Rational):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, Rational):
            return False
        return NotImplemented


NEG_INF = NegInf()


def as_weight(value):
    """Coerce ints, Fractions, ``"p/q"`` strings and ``NEG_INF`` to an extended weight.

    Floats are rejected: they cannot carry exact verdicts.
    """
    if value is NEG_INF or value is None:
        return NEG_INF
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        if value.strip().lower() in ("-inf", "neg_inf", "-infinity"):
            return NEG_INF
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact weight")


def parse_rational(text):
    text = str(text).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        from .errors import InputError

        raise InputError(f"not a rational number: {text!r}") from exc


def format_rational(value):
    """Render a rational as ``"p/q"`` (or ``"p"`` for integers); ``NEG_INF`` as ``"-inf"``."""
    if value is NEG_INF:
        return "-inf"
    return str(Fraction(value))


def wsum(values):
    """Sum extended weights with NEG_INF absorbing."""
    total = Fraction(0)
    for v in values:
        if v is NEG_INF:
            return NEG_INF
        total += v
    return total


def common_scale(values):
    """Least common multiple of the denominators of the finite values."""
    scale = 1
    for v in values:
        if v is not NEG_INF and v is not None:
            scale = lcm(scale, Fraction(v).denominator)
    return scale
