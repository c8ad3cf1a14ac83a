"""Brute-force diagonalization over finite sets of fixed-length strings.

A list of N distinct length-n strings is diagonalized over its first n
rows.  The census counts, over orderings of the set, how often the
diagonal product is itself a member and which member it is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, perm

from .diagonal import SWAP
from .errors import BudgetExceeded, MalformedInput
from .rng import SplitMix64

DEFAULT_BUDGET = 4_000_000
MAX_ENUMERATION = 2**24

EXHAUSTIVE = "exhaustive"
PREFIX = "prefix-exhaustive"
SAMPLED = "sampled"


@dataclass(frozen=True)
class FiniteString:
    digits: tuple

    def __post_init__(self):
        if len(self.digits) < 1:
            raise MalformedInput("strings must have length >= 1")

    def digit(self, i):
        return self.digits[i - 1]

    def __len__(self):
        return len(self.digits)

    def __str__(self):
        return "".join(str(d) for d in self.digits)


def parse_string(text):
    return FiniteString(tuple(int(c) for c in text.strip()))


@dataclass(frozen=True)
class FiniteStringSet:
    elements: tuple
    name: str = ""
    alphabet: tuple = (0, 1)

    def __post_init__(self):
        if not self.elements:
            raise MalformedInput("string sets must be nonempty")
        lengths = {len(e) for e in self.elements}
        if len(lengths) != 1:
            raise MalformedInput(f"strings have mixed lengths {sorted(lengths)}")
        if len(set(self.elements)) != len(self.elements):
            raise MalformedInput("string set has repeated elements")
        allowed = set(self.alphabet)
        for e in self.elements:
            if not set(e.digits) <= allowed:
                raise MalformedInput(f"string {e} uses digits outside {self.alphabet}")

    @property
    def n_digits(self):
        return len(self.elements[0])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def always(s):
    return True


def last_equal(k):
    """Predicate: the last k digits are all equal (three 0's or three 1's for k=3)."""

    def pred(s):
        return len(set(s.digits[-k:])) == 1

    pred.__name__ = f"last_equal({k})"
    return pred


def enumerate_strings(length, predicate=always, alphabet=(0, 1), name=""):
    """All strings of ``length`` satisfying ``predicate``, in lexicographic order."""
    if length < 1:
        raise MalformedInput(f"length must be >= 1, got {length}")
    if len(alphabet) ** length > MAX_ENUMERATION:
        raise MalformedInput(f"{len(alphabet)}^{length} strings is too many to enumerate")
    picked = tuple(
        s for s in (FiniteString(t) for t in itertools.product(sorted(alphabet), repeat=length)) if predicate(s)
    )
    if not picked:
        raise MalformedInput("no strings satisfy the predicate")
    return FiniteStringSet(picked, name, tuple(sorted(alphabet)))


def rea():
    return enumerate_strings(5, name="rea")


def rat():
    return enumerate_strings(5, last_equal(3), name="rat")


def diagonal_of_prefix(rows, rule=SWAP):
    rows = tuple(rows)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise MalformedInput(f"need n rows of length n; got {n} rows of lengths {[len(r) for r in rows]}")
    if len(set(rows)) != n:
        raise MalformedInput("prefix rows must be pairwise distinct")
    return FiniteString(tuple(rule(r.digit(i)) for i, r in enumerate(rows, 1)))


@dataclass(frozen=True)
class CensusReport:
    set_name: str
    set_size: int
    n_digits: int
    total_orderings: int
    orderings_with_member_diagonal: int
    per_target: tuple  # ((string, count), ...) in set order, every element listed
    mode: str
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if sum(c for _, c in self.per_target) != self.orderings_with_member_diagonal:
            raise AssertionError("per-target counts do not add up")

    def count_for(self, target):
        return dict(self.per_target)[str(target)]

    @property
    def evaluated(self):
        return self.samples if self.mode == SAMPLED else self.total_orderings

    @property
    def fraction(self):
        return self.orderings_with_member_diagonal / self.evaluated


class _Diag:
    """Diagonal lookup tables for one set and rule."""

    def __init__(self, strings, rule):
        self.strings = strings
        self.n = strings.n_digits
        used = set()
        for s in strings:
            used |= set(s.digits)
        for d in sorted(used):
            if rule(d) == d:
                raise MalformedInput(f"rule fixes digit {d}")
        self.flipped = [tuple(rule(d) for d in s.digits) for s in strings]
        self.index = {s.digits: i for i, s in enumerate(strings)}

    def of(self, rows):
        f = self.flipped
        return self.index.get(tuple(f[r][i] for i, r in enumerate(rows)))


def _report(strings, counts, total, mode, samples=None, seed=None):
    per = tuple((str(s), counts[i]) for i, s in enumerate(strings))
    return CensusReport(
        strings.name, len(strings), strings.n_digits, total, sum(counts), per, mode, samples, seed
    )


def census_exhaustive(strings, rule=SWAP, mode="auto", budget=DEFAULT_BUDGET):
    """Count orderings of ``strings`` whose diagonal product is a member.

    ``mode`` is ``exhaustive`` (every full ordering), ``prefix-exhaustive``
    (every ordered n-prefix, weighted by (N-n)! since the rest of the ordering
    cannot affect the diagonal) or ``auto`` (the first that fits ``budget``).
    """
    N, n = len(strings), strings.n_digits
    if N < n:
        raise MalformedInput(f"set of {N} strings is smaller than the {n} rows a diagonal needs")
    diag = _Diag(strings, rule)
    if mode == "auto":
        if factorial(N) <= budget:
            mode = EXHAUSTIVE
        elif perm(N, n) <= budget:
            mode = PREFIX
        else:
            raise BudgetExceeded(
                f"{N}! orderings and {perm(N, n)} prefixes both exceed the budget of {budget}; use sampled mode"
            )
    counts = [0] * N
    if mode == EXHAUSTIVE:
        if factorial(N) > budget:
            raise BudgetExceeded(f"{N}! orderings exceed the budget of {budget}; use sampled mode")
        for order in itertools.permutations(range(N)):
            hit = diag.of(order[:n])
            if hit is not None:
                counts[hit] += 1
    elif mode == PREFIX:
        if perm(N, n) > budget:
            raise BudgetExceeded(f"{perm(N, n)} prefixes exceed the budget of {budget}; use sampled mode")
        weight = factorial(N - n)
        for rows in itertools.permutations(range(N), n):
            hit = diag.of(rows)
            if hit is not None:
                counts[hit] += weight
    else:
        raise MalformedInput(f"unknown census mode {mode!r}")
    return _report(strings, counts, factorial(N), mode)


def census_sampled(strings, rule=SWAP, samples=10_000, seed=0):
    """Uniformly random orderings drawn with SplitMix64(seed); reproducible."""
    if samples < 1:
        raise MalformedInput(f"samples must be >= 1, got {samples}")
    N, n = len(strings), strings.n_digits
    if N < n:
        raise MalformedInput(f"set of {N} strings is smaller than the {n} rows a diagonal needs")
    diag = _Diag(strings, rule)
    rng = SplitMix64(seed)
    counts = [0] * N
    for _ in range(samples):
        order = rng.shuffle_prefix(list(range(N)), n)
        hit = diag.of(order[:n])
        if hit is not None:
            counts[hit] += 1
    return _report(strings, counts, factorial(N), SAMPLED, samples, seed)


def count_member_orderings(strings, rule=SWAP):
    """Exact per-target counts by counting systems of distinct representatives.

    For a target t, row i must be drawn from S_i = {x : rule(x_i) = t_i}.
    Elements are grouped by which S_i they belong to, and a subset DP over
    filled rows counts injective row assignments.  Shares nothing with the
    enumeration paths, so it serves as an independent check on them.
    """
    N, n = len(strings), strings.n_digits
    if N < n:
        raise MalformedInput(f"set of {N} strings is smaller than the {n} rows a diagonal needs")
    diag = _Diag(strings, rule)
    full = (1 << n) - 1
    rest = factorial(N - n)
    counts = []
    for t in strings:
        types = {}
        for f in diag.flipped:
            mask = sum(1 << i for i in range(n) if f[i] == t.digits[i])
            if mask:
                types[mask] = types.get(mask, 0) + 1
        ways = [0] * (full + 1)
        ways[0] = 1
        for mask, c in types.items():
            new = ways[:]
            for state in range(full + 1):
                if not ways[state]:
                    continue
                free = mask & ~state
                sub = free
                while sub:
                    new[state | sub] += ways[state] * perm(c, bin(sub).count("1"))
                    sub = (sub - 1) & free
            ways = new
        counts.append(ways[full] * rest)
    return _report(strings, counts, factorial(N), "counted")


def minimum_guaranteed_cases(n_digits):
    """List sizes at which the diagonal outcome is forced: n (never a member)
    and 2^n (always a member)."""
    if n_digits < 1:
        raise MalformedInput(f"n_digits must be >= 1, got {n_digits}")
    return (n_digits, 2**n_digits)
