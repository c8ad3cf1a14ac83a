"""Ordinal-indexed lists of order type ω + k.

A :class:`TransfiniteList` is a finite explicit prefix at positions 1..P, a
generator family filling every later finite position, and a finite tail at
the limit positions ω, ω+1, ..., ω+k-1.

Generator families form a closed set.  Each built-in family knows its digits
in closed form, can solve ``entry(j) == s`` for ``j`` without scanning, and
can bound the shape of any affine diagonal through its rows.  The diagonal
module relies on that last property to prove, not sample, what a diagonal
converges to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from math import lcm

from .errors import ConstructionError, MalformedInput, OutOfDomain
from .exactdigits import BASE, PeriodicDigitString, digit_at, format_notation, terminating


# -- positions -----------------------------------------------------------


@total_ordering
class OrdinalPosition:
    __slots__ = ()

    def _key(self):
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, OrdinalPosition):
            return NotImplemented
        return self._key() < other._key()


@dataclass(frozen=True, eq=True)
class Finite(OrdinalPosition):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise OutOfDomain(f"finite positions start at 1, got {self.n}")

    def _key(self):
        return (0, self.n)

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True, eq=True)
class Limit(OrdinalPosition):
    """The position ω + k."""

    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise OutOfDomain(f"limit offset must be >= 0, got {self.k}")

    def _key(self):
        return (1, self.k)

    def __str__(self):
        return "ω" if self.k == 0 else f"ω+{self.k}"


def parse_position(text):
    text = text.strip()
    for omega in ("ω", "omega", "w"):
        if text == omega:
            return Limit(0)
        if text.startswith(omega + "+"):
            return Limit(int(text[len(omega) + 1 :]))
    return Finite(int(text))


def position_label(p):
    """ASCII spelling used in machine reports: ``7``, ``omega``, ``omega+1``."""
    if isinstance(p, Finite):
        return str(p.n)
    return "omega" if p.k == 0 else f"omega+{p.k}"


# -- generator families --------------------------------------------------


class Family:
    """Base class for generator families indexed by j >= 1.

    ``symbolic`` families have closed-form digits, ``solve`` and ``shape``.
    ``injective`` is True (proved), False (known to repeat) or None (unknown).
    """

    symbolic = True
    injective = True

    def entry(self, j):
        raise NotImplementedError

    def digit(self, j, m):
        return digit_at(self.entry(j), m)

    def alphabet(self):
        return None

    def period_signature(self):
        """The period shared by every entry, if there is one."""
        return None

    def solve(self, s, start=1):
        """Least ``j >= start`` with ``entry(j) == s``, or None."""
        raise NotImplementedError

    def shape(self, a, b):
        """Bound the sequence ``j -> digit(j, a*j + b)`` for a >= 1.

        Returns ``(K, p)`` meaning the sequence is periodic with period ``p``
        for all j > K, or None when no proof is available.
        """
        return None

    def expr(self):
        raise NotImplementedError

    def __str__(self):
        return self.expr()


@dataclass(frozen=True)
class GeometricOnes(Family):
    """j -> sum of 10^-i for i = 1..j, i.e. 0.11...1 with j ones."""

    def entry(self, j):
        return terminating((1,) * j)

    def digit(self, j, m):
        return 1 if m <= j else 0

    def alphabet(self):
        return frozenset({0, 1})

    def period_signature(self):
        return (0,)

    def solve(self, s, start=1):
        pre = s.preperiod
        if s.base != BASE or s.period != (0,) or not pre or set(pre) != {1}:
            return None
        return len(pre) if len(pre) >= start else None

    def shape(self, a, b):
        # digit is 1 iff (a-1)*j + b <= 0
        if a == 1:
            return (0, 1)
        return (max(0, -b), 1)

    def expr(self):
        return "geometric_ones"


@dataclass(frozen=True)
class SpacedPair(Family):
    """j -> 1/(99 * 10^(step*(j-1))), i.e. 0.0...0[01] with step*(j-1) zeros.

    ``step=1`` is the plain family; ``step=2`` places the entry for list row
    2j-1 of an interleave at exponent (2j-1)-1, matching the displayed table.
    """

    step: int = 1

    def __post_init__(self):
        if self.step < 1:
            raise MalformedInput(f"spaced_pair step must be >= 1, got {self.step}")

    def _zeros(self, j):
        return self.step * (j - 1)

    def entry(self, j):
        return PeriodicDigitString((0,) * self._zeros(j), (0, 1))

    def digit(self, j, m):
        e = self._zeros(j)
        if m <= e:
            return 0
        return 1 if (m - e) % 2 == 0 else 0

    def alphabet(self):
        return frozenset({0, 1})

    def period_signature(self):
        return (0, 1)

    def solve(self, s, start=1):
        pre = s.preperiod
        if s.base != BASE or s.period != (0, 1) or any(pre):
            return None
        if len(pre) % self.step:
            return None
        j = len(pre) // self.step + 1
        return j if j >= start else None

    def shape(self, a, b):
        # column - zeros = (a - step)*j + b + step; its sign settles once
        # j > |b + step|, after which only its parity matters.
        return (abs(b + self.step) + 1, 2)

    def expr(self):
        return "spaced_pair" if self.step == 1 else f"spaced_pair(step={self.step})"


@dataclass(frozen=True)
class Spike(Family):
    """j -> 10^-(c+j): a single 1 at digit position c + j."""

    c: int = 0

    def __post_init__(self):
        if self.c < 0:
            raise MalformedInput(f"spike offset must be >= 0, got {self.c}")

    def entry(self, j):
        return terminating((0,) * (self.c + j - 1) + (1,))

    def digit(self, j, m):
        return 1 if m == self.c + j else 0

    def alphabet(self):
        return frozenset({0, 1})

    def period_signature(self):
        return (0,)

    def solve(self, s, start=1):
        pre = s.preperiod
        if s.base != BASE or s.period != (0,) or not pre or pre[-1] != 1 or any(pre[:-1]):
            return None
        j = len(pre) - self.c
        return j if j >= max(1, start) else None

    def shape(self, a, b):
        # 1 iff (a-1)*j == c - b: every j or none when a == 1, at most one j otherwise
        if a == 1:
            return (0, 1)
        return (abs(self.c - b) + 1, 1)

    def expr(self):
        return f"spike({self.c})"


@dataclass(frozen=True)
class Constant(Family):
    """Every index maps to the same string; never injective."""

    value: PeriodicDigitString
    injective = False

    def entry(self, j):
        return self.value

    def alphabet(self):
        return self.value.alphabet

    def period_signature(self):
        return self.value.period

    def solve(self, s, start=1):
        return start if s == self.value else None

    def shape(self, a, b):
        return (len(self.value.preperiod) + abs(b), len(self.value.period))

    def expr(self):
        return f'constant("{format_notation(self.value)}")'


@dataclass(frozen=True)
class Shifted(Family):
    """j -> inner.entry(j + offset)."""

    inner: Family
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise MalformedInput(f"shift offset must be >= 0, got {self.offset}")

    @property
    def symbolic(self):
        return self.inner.symbolic

    @property
    def injective(self):
        return self.inner.injective

    def entry(self, j):
        return self.inner.entry(j + self.offset)

    def digit(self, j, m):
        return self.inner.digit(j + self.offset, m)

    def alphabet(self):
        return self.inner.alphabet()

    def period_signature(self):
        return self.inner.period_signature()

    def solve(self, s, start=1):
        i = self.inner.solve(s, start + self.offset)
        return None if i is None else i - self.offset

    def shape(self, a, b):
        sub = self.inner.shape(a, b - a * self.offset)
        if sub is None:
            return None
        k, p = sub
        return (max(0, k - self.offset), p)

    def expr(self):
        return f"shifted({self.inner.expr()}, {self.offset})"


@dataclass(frozen=True)
class Interleave(Family):
    """Odd indices 2j-1 take ``odd.entry(j)``; even indices 2j take ``even.entry(j)``."""

    odd: Family
    even: Family

    @property
    def symbolic(self):
        return self.odd.symbolic and self.even.symbolic

    @property
    def injective(self):
        if self.odd.injective is False or self.even.injective is False:
            return False
        if self.odd.injective and self.even.injective and self._disjoint():
            return True
        return None

    def _disjoint(self):
        a = self.odd.period_signature()
        b = self.even.period_signature()
        return a is not None and b is not None and a != b

    def entry(self, i):
        j, r = divmod(i + 1, 2)
        return self.even.entry(j) if r else self.odd.entry(j)

    def digit(self, i, m):
        j, r = divmod(i + 1, 2)
        return self.even.digit(j, m) if r else self.odd.digit(j, m)

    def alphabet(self):
        a, b = self.odd.alphabet(), self.even.alphabet()
        return None if a is None or b is None else a | b

    def period_signature(self):
        a = self.odd.period_signature()
        return a if a == self.even.period_signature() else None

    def solve(self, s, start=1):
        found = []
        j = self.odd.solve(s, (start + 2) // 2)
        if j is not None:
            found.append(2 * j - 1)
        j = self.even.solve(s, (start + 1) // 2)
        if j is not None:
            found.append(2 * j)
        return min(found) if found else None

    def shape(self, a, b):
        odd = self.odd.shape(2 * a, b - a)
        even = self.even.shape(2 * a, b)
        if odd is None or even is None:
            return None
        return (2 * max(odd[0], even[0]), 2 * lcm(odd[1], even[1]))

    def expr(self):
        return f"interleave({self.odd.expr()}, {self.even.expr()})"


@dataclass(frozen=True)
class Table(Family):
    """Explicit entries; defined only for 1 <= j <= len(entries).

    Nothing about a table is symbolic, so lists using one are validated up
    to their horizon and flagged ``horizon-checked``.
    """

    entries: tuple
    symbolic = False

    @property
    def injective(self):
        return True if len(set(self.entries)) == len(self.entries) else False

    def entry(self, j):
        if not 1 <= j <= len(self.entries):
            raise OutOfDomain(f"table has {len(self.entries)} entries; index {j} is undefined")
        return self.entries[j - 1]

    def alphabet(self):
        out = frozenset()
        for e in self.entries:
            out |= e.alphabet
        return out

    def solve(self, s, start=1):
        for j in range(max(1, start), len(self.entries) + 1):
            if self.entries[j - 1] == s:
                return j
        return None

    def expr(self):
        return "table(" + ", ".join(f'"{format_notation(e)}"' for e in self.entries) + ")"


# -- lists ---------------------------------------------------------------


@dataclass(frozen=True)
class TransfiniteList:
    prefix: tuple
    generator: Family
    tail: tuple
    alphabet: frozenset
    horizon: int
    distinctness: str = "certified"
    name: str = field(default="", compare=False)

    @property
    def order_type(self):
        return "ω" if not self.tail else f"ω+{len(self.tail)}"

    def entry_at(self, p):
        return entry_at(self, p)

    def row_digit(self, n, m):
        return row_digit(self, n, m)


def _explicit_positions(prefix, tail):
    for i, s in enumerate(prefix, 1):
        yield Finite(i), s
    for k, s in enumerate(tail):
        yield Limit(k), s


def build_list(prefix, generator, tail=(), alphabet=(0, 1), horizon=100, name=""):
    """Validate and assemble a list of order type ω + len(tail).

    Raises ConstructionError naming the offending position(s) on an alphabet
    violation or a repeated entry.
    """
    prefix = tuple(prefix)
    tail = tuple(tail)
    alphabet = frozenset(alphabet)
    if horizon < len(prefix) + 1:
        raise MalformedInput(f"horizon must be at least {len(prefix) + 1}, got {horizon}")
    P = len(prefix)
    checked = "certified"

    seen = {}
    for pos, s in _explicit_positions(prefix, tail):
        bad = s.alphabet - alphabet
        if bad:
            raise ConstructionError(f"entry {s} at position {pos} uses digit {min(bad)} outside the alphabet")
        if s in seen:
            raise ConstructionError(f"entry {s} appears at positions {seen[s]} and {pos}")
        seen[s] = pos
        j = generator.solve(s)
        if j is not None:
            raise ConstructionError(
                f"entry {s} at position {pos} duplicates the generator entry at position {P + j}"
            )

    fam_alpha = generator.alphabet() if generator.symbolic else None
    if fam_alpha is None or not fam_alpha <= alphabet:
        if isinstance(generator, Table) and len(generator.entries) < horizon - P:
            raise ConstructionError(
                f"table has {len(generator.entries)} entries but the horizon needs {horizon - P}"
            )
        for j in range(1, horizon - P + 1):
            bad = generator.entry(j).alphabet - alphabet
            if bad:
                raise ConstructionError(
                    f"generator entry at position {P + j} uses digit {min(bad)} outside the alphabet"
                )
        if fam_alpha is None or not generator.symbolic:
            checked = "horizon-checked"

    if generator.injective is not True:
        first = {}
        for j in range(1, horizon - P + 1):
            s = generator.entry(j)
            if s in first:
                raise ConstructionError(
                    f"entry {s} appears at positions {P + first[s]} and {P + j}"
                )
            first[s] = j
        if generator.injective is False:
            raise ConstructionError(f"generator {generator.expr()} is not injective")
        checked = "horizon-checked"
    if not generator.symbolic:
        checked = "horizon-checked"

    return TransfiniteList(prefix, generator, tail, alphabet, horizon, checked, name)


def entry_at(lst, p):
    if isinstance(p, int):
        p = Finite(p)
    if isinstance(p, Limit):
        if p.k >= len(lst.tail):
            raise OutOfDomain(f"position {p} is beyond a list of order type {lst.order_type}")
        return lst.tail[p.k]
    if p.n <= len(lst.prefix):
        return lst.prefix[p.n - 1]
    return lst.generator.entry(p.n - len(lst.prefix))


def row_digit(lst, n, m):
    """Digit ``m`` of the entry at finite position ``n`` without materializing it."""
    if n < 1 or m < 1:
        raise OutOfDomain(f"row and column start at 1, got ({n}, {m})")
    P = len(lst.prefix)
    if n <= P:
        return digit_at(lst.prefix[n - 1], m)
    return lst.generator.digit(n - P, m)


def flatten_to_omega(lst):
    """Move the tail to the front, giving an order-type-ω re-listing."""
    if not lst.tail:
        return lst
    name = f"{lst.name} (flattened)" if lst.name else ""
    return TransfiniteList(
        lst.tail + lst.prefix, lst.generator, (), lst.alphabet, lst.horizon, lst.distinctness, name
    )


def finite_entries(lst, upto):
    """(position, entry) for finite positions 1..upto."""
    for n in range(1, upto + 1):
        yield Finite(n), entry_at(lst, Finite(n))


# -- the worked examples -------------------------------------------------

ONE_NINTH = PeriodicDigitString((), (1,))
ZERO = PeriodicDigitString((), (0,))


def spikes(m, c=1):
    """The m explicit entries 10^-(c+1), ..., 10^-(c+m)."""
    fam = Spike(c)
    return tuple(fam.entry(j) for j in range(1, m + 1))


def original_set(horizon=100):
    return build_list((), GeometricOnes(), (ONE_NINTH,), horizon=horizon, name="original set")


def extended_set(m=5, horizon=100):
    return build_list(spikes(m), GeometricOnes(), (ONE_NINTH,), horizon=horizon, name=f"extended set (m={m})")


def interleaved_set(horizon=100):
    return build_list(
        (),
        Interleave(SpacedPair(step=2), GeometricOnes()),
        (ZERO, ONE_NINTH),
        horizon=horizon,
        name="interleaved set",
    )
