"""Exact eventually-periodic digit expansions of rationals in [0, 1).

Every value is kept in canonical form, so two strings compare equal exactly
when they denote the same rational.  Positions are 1-based::

    >>> s = parse("0.0[01]")
    >>> s.digit(3), to_rational(s)
    (0, Fraction(1, 990))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational

from .errors import MalformedInput, OutOfDomain

BASE = 10
DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"

_NOTATION = re.compile(r"0\.([0-9a-z]*)\[([0-9a-z]+)\]\Z")


def _primitive(period):
    n = len(period)
    for p in range(1, n):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


def _canonical_parts(preperiod, period, base):
    if not isinstance(base, int) or base < 2:
        raise MalformedInput(f"base must be an integer >= 2, got {base!r}")
    pre = tuple(preperiod)
    per = tuple(period)
    if not per:
        raise MalformedInput("period must be nonempty")
    everything = pre + per
    if not set(map(type, everything)) <= {int} or min(everything) < 0 or max(everything) >= base:
        bad = next(d for d in everything if type(d) is not int or not 0 <= d < base)
        raise MalformedInput(f"digit {bad!r} is not valid in base {base}")
    per = _primitive(per)
    while pre and pre[-1] == per[-1]:
        per = (pre[-1],) + per[:-1]
        pre = pre[:-1]
    if per == (base - 1,):
        # 0.x(b-1)(b-1)... == 0.(x+1)000...
        if not pre:
            raise OutOfDomain("expansion 0.[b-1] equals 1, outside [0, 1)")
        pre = pre[:-1] + (pre[-1] + 1,)
        per = (0,)
        while pre and pre[-1] == 0:
            pre = pre[:-1]
    return pre, per


@dataclass(frozen=True)
class PeriodicDigitString:
    """A canonical expansion ``0.(preperiod)(period)(period)...``.

    The constructor canonicalizes its arguments, so instances built from
    different spellings of one value are equal and hash alike.
    """

    preperiod: tuple
    period: tuple
    base: int = BASE

    def __post_init__(self):
        pre, per = _canonical_parts(self.preperiod, self.period, self.base)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def digit(self, n):
        return digit_at(self, n)

    def digits(self, count):
        """The first ``count`` digits as a tuple."""
        k = len(self.preperiod)
        if count <= k:
            return self.preperiod[:count]
        p = len(self.period)
        reps = (count - k) // p + 1
        return (self.preperiod + self.period * reps)[:count]

    @property
    def alphabet(self):
        return frozenset(self.preperiod) | frozenset(self.period)

    @property
    def is_terminating(self):
        return self.period == (0,)

    def rendering(self, count=12):
        """Decimal-looking rendering, truncated with an ellipsis unless terminating."""
        if self.is_terminating and len(self.preperiod) <= count:
            body = self.preperiod or (0,)
            return "0." + "".join(DIGIT_CHARS[d] for d in body)
        return "0." + "".join(DIGIT_CHARS[d] for d in self.digits(count)) + "…"

    def __str__(self):
        return format_notation(self)

    def __repr__(self):
        if self.base == BASE:
            return f"PeriodicDigitString({format_notation(self)!r})"
        return f"PeriodicDigitString({format_notation(self)!r}, base={self.base})"


def canonicalize(preperiod, period, base=BASE):
    return PeriodicDigitString(tuple(preperiod), tuple(period), base)


def terminating(digits, base=BASE):
    """The terminating expansion ``0.d1 d2 ... dk 000...``."""
    return PeriodicDigitString(tuple(digits), (0,), base)


def digit_at(s, n):
    if n < 1:
        raise OutOfDomain(f"digit positions start at 1, got {n}")
    k = len(s.preperiod)
    if n <= k:
        return s.preperiod[n - 1]
    return s.period[(n - k - 1) % len(s.period)]


def _digits_value(digits, base):
    v = 0
    for d in digits:
        v = v * base + d
    return v


def to_rational(s):
    b = s.base
    k = len(s.preperiod)
    p = len(s.period)
    cycle = b**p - 1
    num = _digits_value(s.preperiod, b) * cycle + _digits_value(s.period, b)
    return Fraction(num, b**k * cycle)


def from_rational(r, base=BASE):
    """Expand ``r`` in ``base`` by long division with cycle detection."""
    if not isinstance(r, Rational):
        raise MalformedInput(f"expected a rational number, got {r!r}")
    r = Fraction(r)
    if not 0 <= r < 1:
        raise OutOfDomain(f"{r} is outside [0, 1)")
    num, den = r.numerator, r.denominator

    # Preperiod length: strip from den every prime it shares with base.
    k = 0
    rest = den
    g = gcd(rest, base)
    while g > 1:
        while rest % g == 0:
            rest //= g
        g = gcd(rest, base)
    smooth = den // rest
    power = 1
    while power % smooth:
        power *= base
        k += 1

    head, rem = divmod(num * base**k, den)
    pre = []
    for _ in range(k):
        head, d = divmod(head, base)
        pre.append(d)
    pre.reverse()

    # After k shifts the fractional part is purely periodic: the remainder
    # returns to its starting value.
    per = []
    start = rem
    while True:
        rem *= base
        d, rem = divmod(rem, den)
        per.append(d)
        if rem == start:
            break
    return PeriodicDigitString(tuple(pre), tuple(per), base)


def parse(text, base=BASE):
    """Parse ``0.(pre)[per]`` notation, e.g. ``0.01[0]`` or ``0.[1]``."""
    m = _NOTATION.match(text.strip())
    if m is None:
        raise MalformedInput(f"cannot parse {text!r}; expected 0.<digits>[<digits>]")
    try:
        pre = tuple(DIGIT_CHARS.index(c) for c in m.group(1))
        per = tuple(DIGIT_CHARS.index(c) for c in m.group(2))
    except ValueError:  # pragma: no cover - regex admits only DIGIT_CHARS
        raise MalformedInput(f"bad digit in {text!r}") from None
    return PeriodicDigitString(pre, per, base)


def format_notation(s):
    pre = "".join(DIGIT_CHARS[d] for d in s.preperiod)
    per = "".join(DIGIT_CHARS[d] for d in s.period)
    return f"0.{pre}[{per}]"
