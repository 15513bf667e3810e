"""
Angles are rational multiples of pi and are stored as the rational factor, so ``Fraction(1, 6)`` is pi/6.
Nothing here ever touches floating point.
"""
import re
from collections import namedtuple
from fractions import Fraction

from .exceptions import GraphSyntaxException

AngularValue = Fraction

PI = Fraction(1)
HALF_PI = Fraction(1, 2)

_ANGLE = re.compile(r'^\s*(?:(?P<num>\d+)\s*\*?\s*)?(?:(?P<pi>pi)\s*)?(?:/\s*(?P<den>\d+))?\s*(?P<pi2>pi)?\s*$')


class AtLeast(namedtuple("AtLeastTuple", ["bound"])):
    """
    A distance known only to be at least ``bound``: every path realising it leaves the constructed ball.
    """

    def __str__(self):
        return f">= {format_angle(self.bound)}"


def type2_edge(m: int) -> AngularValue:
    return Fraction(1, 2 * m)


def type1_edge() -> AngularValue:
    return HALF_PI


def exceeds(distance, threshold: AngularValue) -> bool:
    """
    True when ``distance`` (exact or a lower bound) is provably at least ``threshold``.

    >>> exceeds(AtLeast(Fraction(7, 6)), PI), exceeds(Fraction(1, 6), HALF_PI)
    (True, False)
    """
    if isinstance(distance, AtLeast):
        return distance.bound >= threshold
    return distance >= threshold


def parse_angle(text: str) -> AngularValue:
    """
    >>> parse_angle("pi"), parse_angle("pi/6"), parse_angle("3pi/4"), parse_angle("7/6 pi"), parse_angle("1/2")
    (Fraction(1, 1), Fraction(1, 6), Fraction(3, 4), Fraction(7, 6), Fraction(1, 2))
    """
    match = _ANGLE.match(text)
    if not match or not (match.group('num') or match.group('pi') or match.group('pi2')):
        raise GraphSyntaxException(f"Cannot read an angle from {text!r}; use forms like pi, pi/6 or 7/6 pi")
    num = int(match.group('num') or 1)
    den = int(match.group('den') or 1)
    if den == 0:
        raise GraphSyntaxException(f"Zero denominator in angle {text!r}")
    return Fraction(num, den)


def format_angle(value: AngularValue) -> str:
    """
    >>> format_angle(Fraction(1, 6)), format_angle(Fraction(1)), format_angle(Fraction(0))
    ('pi/6', 'pi', '0')
    """
    if value == 0:
        return '0'
    num = '' if value.numerator == 1 else str(value.numerator)
    return f"{num}pi" if value.denominator == 1 else f"{num}pi/{value.denominator}"


def angle_to_json(value) -> dict:
    if isinstance(value, AtLeast):
        return {"at_least": angle_to_json(value.bound)}
    return {"num": value.numerator, "den": value.denominator}


def angle_from_json(document):
    try:
        if "at_least" in document:
            return AtLeast(angle_from_json(document["at_least"]))
        num, den = document["num"], document["den"]
    except (KeyError, TypeError):
        raise GraphSyntaxException(f"Angle must be an object with num and den, got {document!r}")
    if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
        raise GraphSyntaxException(f"Angle needs integer num and positive den, got {document!r}")
    return Fraction(num, den)
