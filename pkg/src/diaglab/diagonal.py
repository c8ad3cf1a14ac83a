"""Diagonalization over ordinal-indexed lists.

The completed diagonal is represented only when its digit stream is
eventually periodic.  For lists built from symbolic families the periodic
form is *proved*: the family bounds where the diagonal through its rows
becomes periodic, so a finite computation determines the whole stream.
Otherwise the stream is scanned to a horizon and any pattern found is
reported as empirical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HorizonTooSmall, MalformedInput
from .exactdigits import PeriodicDigitString, terminating
from .translist import Finite, Limit, row_digit

PROVED = "proved-by-family"
EMPIRICAL = "empirical-to-horizon"
NOT_PERIODIC = "not-periodic-within-horizon"

MIN_HORIZON = 64


@dataclass(frozen=True)
class DiagonalRule:
    """A fixed-point-free digit substitution, e.g. ``{0: 1, 1: 0}``."""

    mapping: tuple

    def __init__(self, mapping, alphabet=None):
        pairs = tuple(sorted(dict(mapping).items()))
        table = dict(pairs)
        digits = set(table) if alphabet is None else set(alphabet)
        for d in sorted(digits):
            if d not in table:
                raise MalformedInput(f"diagonal rule does not map digit {d}")
            if table[d] == d:
                raise MalformedInput(f"diagonal rule fixes digit {d}; it must move every digit")
        object.__setattr__(self, "mapping", pairs)
        object.__setattr__(self, "_table", table)

    def __call__(self, d):
        try:
            return self._table[d]
        except KeyError:
            raise MalformedInput(f"diagonal rule does not map digit {d}") from None

    def covers(self, alphabet):
        return all(d in self._table and self._table[d] != d for d in alphabet)

    def __str__(self):
        return ",".join(f"{a}->{b}" for a, b in self.mapping)


SWAP = DiagonalRule({0: 1, 1: 0})


def _check_rule(lst, rule):
    if not rule.covers(lst.alphabet):
        raise MalformedInput(f"rule {rule} is not fixed-point-free on alphabet {sorted(lst.alphabet)}")


def diagonal_digit(lst, rule, n):
    return rule(row_digit(lst, n, n))


def detect_period(digits, cap=None):
    """Smallest period p <= cap (default len/4) whose pattern predicts the
    whole second half of ``digits``; returns the canonical string or None."""
    d = list(digits)
    h = len(d)
    cap = h // 4 if cap is None else cap
    for p in range(1, cap + 1):
        k = 0
        for i in range(h - p - 1, -1, -1):
            if d[i] != d[i + p]:
                k = i + 1
                break
        if k <= h // 2:
            return PeriodicDigitString(tuple(d[:k]), tuple(d[k : k + p]))
    return None


def certify(lst, rule):
    """Exact periodic form of the full diagonal, or None if no family proof exists."""
    gen = lst.generator
    if not gen.symbolic:
        return None
    P = len(lst.prefix)
    shape = gen.shape(1, P)
    if shape is None:
        return None
    k, p = shape
    head = tuple(diagonal_digit(lst, rule, n) for n in range(1, P + k + 1))
    per = tuple(diagonal_digit(lst, rule, n) for n in range(P + k + 1, P + k + p + 1))
    return PeriodicDigitString(head, per)


def find_member(lst, s, search_bound=None):
    """Least position of ``s`` in the list (finite positions first), or None."""
    hit = locate_partial(lst, s, search_bound)
    if hit is not None:
        return hit
    for k, t in enumerate(lst.tail):
        if t == s:
            return Limit(k)
    return None


@dataclass(frozen=True)
class DiagonalReport:
    stream_prefix: tuple
    detected: PeriodicDigitString | None
    certification: str
    membership: Finite | Limit | None
    horizon: int
    rule: DiagonalRule = SWAP
    list_name: str = ""
    # finite position whose own digit contradicts an empirical pattern
    refuted_at: int | None = None


def required_horizon(lst):
    longest = max((len(t.preperiod) for t in lst.tail), default=0)
    return max(MIN_HORIZON, 2 * (len(lst.prefix) + longest))


def diagonal_stream(lst, rule=SWAP, horizon=256):
    _check_rule(lst, rule)
    need = required_horizon(lst)
    if horizon < need:
        raise HorizonTooSmall(horizon, need)
    digits = tuple(diagonal_digit(lst, rule, n) for n in range(1, horizon + 1))

    proved = certify(lst, rule)
    refuted = None
    if proved is not None:
        if proved.digits(horizon) != digits:  # pragma: no cover - would be a family bug
            raise AssertionError(f"family proof {proved} disagrees with computed digits")
        detected, cert = proved, PROVED
    else:
        detected = detect_period(digits)
        cert = EMPIRICAL if detected is not None else NOT_PERIODIC

    membership = None
    if detected is not None:
        membership = find_member(lst, detected)
        if isinstance(membership, Finite):
            n = membership.n
            if cert == PROVED:  # pragma: no cover - impossible for a fixed-point-free rule
                raise AssertionError(f"proved diagonal {detected} found at finite position {n}")
            # The diagonal differs from row n at digit n, so the pattern is wrong.
            refuted = n
            detected, cert, membership = None, NOT_PERIODIC, None

    return DiagonalReport(digits, detected, cert, membership, horizon, rule, lst.name, refuted)


def partial_diagonal(lst, rule, n):
    """D(n): the first n diagonal digits followed by zeros."""
    if n < 1:
        raise MalformedInput(f"n must be >= 1, got {n}")
    return terminating(tuple(diagonal_digit(lst, rule, i) for i in range(1, n + 1)))


def locate_partial(lst, s, search_bound=None):
    """Least finite position p <= search_bound holding ``s``, or None.

    Prefix entries are compared directly; the generator is solved through
    its family equation rather than scanned.
    """
    if search_bound is not None and search_bound < 1:
        raise MalformedInput(f"search_bound must be >= 1, got {search_bound}")
    P = len(lst.prefix)
    for i, t in enumerate(lst.prefix, 1):
        if search_bound is not None and i > search_bound:
            return None
        if t == s:
            return Finite(i)
    j = lst.generator.solve(s)
    if j is None:
        return None
    if search_bound is not None and P + j > search_bound:
        return None
    return Finite(P + j)


@dataclass(frozen=True)
class SizeVerdict:
    """A literal position formula: ``offset`` means found_at(n) = n + value,
    ``ratio`` means found_at(n) = value * n, over the evidence range."""

    kind: str
    value: int | Fraction | None
    evidence_range: tuple
    first_failure: int | None = None

    def __str__(self):
        if self.kind == "offset":
            return f"offset({self.value})"
        if self.kind == "ratio":
            return f"ratio({self.value})"
        return "no-pattern"


@dataclass(frozen=True)
class InductionTrace:
    digits: tuple
    found: tuple
    verdict: SizeVerdict
    list_name: str = ""
    rule: DiagonalRule = field(default=SWAP)

    def partial(self, n):
        return terminating(self.digits[:n])

    @property
    def entries(self):
        for n, f in enumerate(self.found, 1):
            yield n, self.partial(n), (None if f is None else Finite(f))


def fit_verdict(found):
    n_max = len(found)
    evidence = (1, n_max)
    for n, f in enumerate(found, 1):
        if f is None:
            return SizeVerdict("no-pattern", None, evidence, first_failure=n)
    offsets = {f - n for n, f in enumerate(found, 1)}
    if len(offsets) == 1:
        return SizeVerdict("offset", offsets.pop(), evidence)
    ratios = {Fraction(f, n) for n, f in enumerate(found, 1)}
    if len(ratios) == 1:
        return SizeVerdict("ratio", ratios.pop(), evidence)
    return SizeVerdict("no-pattern", None, evidence)


def induction_trace(lst, rule=SWAP, n_max=1000, search_bound=None):
    """Form D(1), D(2), ... incrementally and locate each one in the list.

    ``search_bound`` caps the finite positions searched; it defaults to
    10 * n_max + len(prefix).
    """
    if n_max < 8:
        raise MalformedInput(f"n_max must be >= 8, got {n_max}")
    _check_rule(lst, rule)
    if search_bound is None:
        search_bound = 10 * n_max + len(lst.prefix)
    digits = []
    found = []
    for n in range(1, n_max + 1):
        digits.append(diagonal_digit(lst, rule, n))
        hit = locate_partial(lst, terminating(tuple(digits)), search_bound)
        found.append(None if hit is None else hit.n)
    return InductionTrace(tuple(digits), tuple(found), fit_verdict(found), lst.name, rule)
