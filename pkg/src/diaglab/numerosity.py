"""Part-whole size comparison by truncated counting, and pairing-map audits.

Sets of positive integers are compared through their counting profiles
c(N) = |{k <= N : k in S}|.  Verdicts are bounded by the evidence window
and state the literal count relation they observed, nothing more.

Sets and pairing maps come from a small expression language::

    naturals  evens  odds  squares  empty
    residue(r, m)  multiples(k)  finite(1, 4, 9)  interval(1, 5)
    minus(A, B)  union(A, B)  intersect(A, B)

    pairing maps are arithmetic in n:  n // 2,  2*n + 1,  n / 2  (exact or undefined)
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from .errors import InsufficientEvidence, MalformedInput

MIN_WINDOW = 16
MAX_RATIO_DENOMINATOR = 12


@dataclass(frozen=True)
class LabelledSet:
    name: str
    member: Callable[[int], bool] = field(compare=False)

    def __call__(self, k):
        return self.member(k)

    def __contains__(self, k):
        return self.member(k)


def _is_square(k):
    return isqrt(k) ** 2 == k


NATURALS = LabelledSet("naturals", lambda k: k >= 1)
EVENS = LabelledSet("evens", lambda k: k % 2 == 0)
ODDS = LabelledSet("odds", lambda k: k % 2 == 1)
SQUARES = LabelledSet("squares", lambda k: k >= 1 and _is_square(k))
EMPTY = LabelledSet("empty", lambda k: False)


def residue(r, m):
    if m < 1:
        raise MalformedInput(f"modulus must be >= 1, got {m}")
    r %= m
    return LabelledSet(f"residue({r}, {m})", lambda k: k % m == r)


def multiples(k):
    s = residue(0, k)
    return LabelledSet(f"multiples({k})", s.member)


def finite(*elements):
    elems = frozenset(elements)
    return LabelledSet(f"finite({', '.join(map(str, sorted(elems)))})", elems.__contains__)


def interval(lo, hi):
    return LabelledSet(f"interval({lo}, {hi})", lambda k: lo <= k <= hi)


def minus(a, b):
    return LabelledSet(f"minus({a.name}, {b.name})", lambda k: a(k) and not b(k))


def union(a, b):
    return LabelledSet(f"union({a.name}, {b.name})", lambda k: a(k) or b(k))


def intersect(a, b):
    return LabelledSet(f"intersect({a.name}, {b.name})", lambda k: a(k) and b(k))


_SET_NAMES = {"naturals": NATURALS, "evens": EVENS, "odds": ODDS, "squares": SQUARES, "empty": EMPTY}
_INT_CALLS = {"residue": residue, "multiples": multiples, "finite": finite, "interval": interval}
_SET_CALLS = {"minus": minus, "union": union, "intersect": intersect}


def _int_literal(node, text):
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    raise MalformedInput(f"expected an integer in set expression {text!r}")


def parse_set(text, named=None):
    """Build a LabelledSet from an expression; ``named`` resolves extra names."""
    named = named or {}
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise MalformedInput(f"cannot parse set expression {text!r}: {exc.msg}") from None

    def build(node):
        if isinstance(node, ast.Name):
            if node.id in named:
                return named[node.id]
            if node.id in _SET_NAMES:
                return _SET_NAMES[node.id]
            raise MalformedInput(f"unknown set {node.id!r} in {text!r}")
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            fn = node.func.id
            if fn in _INT_CALLS:
                args = [_int_literal(a, text) for a in node.args]
                try:
                    return _INT_CALLS[fn](*args)
                except TypeError:
                    raise MalformedInput(f"wrong number of arguments to {fn} in {text!r}") from None
            if fn in _SET_CALLS:
                if len(node.args) != 2:
                    raise MalformedInput(f"{fn} takes two sets in {text!r}")
                return _SET_CALLS[fn](*(build(a) for a in node.args))
        raise MalformedInput(f"unsupported construct in set expression {text!r}")

    s = build(tree.body)
    return LabelledSet(text.strip(), s.member) if text.strip() != s.name else s


# -- pairing maps --------------------------------------------------------


@dataclass(frozen=True)
class PairingMap:
    name: str
    forward: Callable[[int], int | None] = field(compare=False)

    def __call__(self, n):
        return self.forward(n)


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.FloorDiv: lambda a, b: a // b,
    ast.Mod: lambda a, b: a % b,
    ast.Div: lambda a, b: a // b if a % b == 0 else None,
}


def parse_pairing(text, name=None):
    """Compile an arithmetic closed form in ``n``; ``/`` is exact division (None if inexact)."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise MalformedInput(f"cannot parse pairing {text!r}: {exc.msg}") from None

    def compile_(node):
        if isinstance(node, ast.Name) and node.id == "n":
            return lambda n: n
        if isinstance(node, ast.Constant) and type(node.value) is int:
            v = node.value
            return lambda n: v
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            f = compile_(node.operand)
            return lambda n: None if f(n) is None else -f(n)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            op = _BINOPS[type(node.op)]
            lf, rf = compile_(node.left), compile_(node.right)

            def go(n):
                a, b = lf(n), rf(n)
                if a is None or b is None:
                    return None
                if b == 0 and isinstance(node.op, (ast.FloorDiv, ast.Mod, ast.Div)):
                    return None
                return op(a, b)

            return go
        raise MalformedInput(f"unsupported construct in pairing {text!r}")

    return PairingMap(name or text.strip(), compile_(tree.body))


# -- counting ------------------------------------------------------------


@dataclass(frozen=True)
class PartialCountProfile:
    set_name: str
    counts: tuple  # counts[N-1] = c(N)

    @property
    def n_max(self):
        return len(self.counts)

    def c(self, N):
        return self.counts[N - 1]


def partial_counts(s, n_max):
    if n_max < 1:
        raise MalformedInput(f"N_max must be >= 1, got {n_max}")
    out = []
    c = 0
    for k in range(1, n_max + 1):
        if s(k):
            c += 1
        out.append(c)
    return PartialCountProfile(s.name, tuple(out))


@dataclass(frozen=True)
class ComparisonVerdict:
    """Evidence-bounded relation between two counting profiles.

    ``difference_stabilizes``: c_A(N) - c_B(N) == value for all N in [since, evidence].
    ``ratio_converges`` with regime ``exact``: c_A(N) * q == c_B(N) * p on [since, evidence].
    ``ratio_converges`` with regime ``asymptotic``: |c_A(N) * q - c_B(N) * p| <= discrepancy_bound
    on [since, evidence]; ``exact_on = (m, residues)`` lists the classes of N where it is exact.
    """

    kind: str
    a_name: str
    b_name: str
    evidence: int
    value: int | Fraction | None = None
    since: int | None = None
    regime: str | None = None
    discrepancy_bound: int | None = None
    exact_on: tuple | None = None
    detail: "ComparisonVerdict | None" = None

    def __str__(self):
        if self.kind == "difference_stabilizes":
            return f"difference_stabilizes({self.value}, since {self.since})"
        if self.kind == "ratio_converges":
            extra = ""
            if self.exact_on:
                m, rs = self.exact_on
                extra = f"; exact on N ≡ {', '.join(map(str, rs))} (mod {m})"
            return f"ratio_converges({self.value}, {self.regime} from {self.since}{extra})"
        if self.kind == "bijection_equinumerous_only":
            return f"bijection_equinumerous_only (counts: {self.detail})"
        return "inconclusive"


def _stable_from(seq):
    """Least 1-based N0 with seq constant on [N0, len]."""
    last = seq[-1]
    i = len(seq) - 1
    while i > 0 and seq[i - 1] == last:
        i -= 1
    return i + 1


def _candidate_ratio(ca, cb):
    if ca >= cb:
        return Fraction(ca, cb).limit_denominator(MAX_RATIO_DENOMINATOR)
    return 1 / Fraction(cb, ca).limit_denominator(MAX_RATIO_DENOMINATOR)


def compare_profiles(a, b):
    if a.n_max != b.n_max:
        raise MalformedInput(f"profiles have different windows ({a.n_max} vs {b.n_max})")
    n_max = a.n_max
    if n_max < MIN_WINDOW:
        raise InsufficientEvidence(f"N_max = {n_max} is below the minimum window of {MIN_WINDOW}")
    half = n_max // 2
    base = dict(a_name=a.set_name, b_name=b.set_name, evidence=n_max)

    diff = [x - y for x, y in zip(a.counts, b.counts)]
    since = _stable_from(diff)
    if since <= half:
        return ComparisonVerdict("difference_stabilizes", value=diff[-1], since=since, **base)

    ca, cb = a.counts[-1], b.counts[-1]
    if ca == 0 or cb == 0:
        return ComparisonVerdict("inconclusive", **base)
    r = _candidate_ratio(ca, cb)
    p, q = r.numerator, r.denominator
    err = [x * q - y * p for x, y in zip(a.counts, b.counts)]
    since = _stable_from(err)
    if err[-1] == 0 and since <= half:
        return ComparisonVerdict("ratio_converges", value=r, since=since, regime="exact", **base)

    tail = range(half, n_max + 1)
    bound = max(abs(err[N - 1]) for N in tail)
    if bound <= max(p, q):
        return ComparisonVerdict(
            "ratio_converges",
            value=r,
            since=half,
            regime="asymptotic",
            discrepancy_bound=bound,
            exact_on=_exact_classes(err, tail),
            **base,
        )
    return ComparisonVerdict("inconclusive", **base)


def _exact_classes(err, tail, max_modulus=8):
    for m in range(1, max_modulus + 1):
        rs = tuple(r for r in range(m) if all(err[N - 1] == 0 for N in tail if N % m == r))
        if rs:
            return (m, rs)
    return None


# -- pairing audits ------------------------------------------------------


@dataclass(frozen=True)
class PairingAudit:
    map_name: str
    a_name: str
    b_name: str
    n_max: int
    paired: int
    unpaired_in_a: int
    unpaired_in_b: int
    unpaired_in_b_within_image: int
    injectivity_violations: int
    out_of_b: int
    image_min: int | None
    image_max: int | None
    image_beyond_window: int
    image: frozenset = field(default=frozenset(), compare=False, repr=False)

    @property
    def is_window_bijection(self):
        """Every A element paired injectively and the image has no gaps in B."""
        return (
            self.unpaired_in_a == 0
            and self.injectivity_violations == 0
            and self.out_of_b == 0
            and self.unpaired_in_b_within_image == 0
        )


def pairing_audit(pairing, a, b, n_max):
    """Pair each element of A up to n_max through the map and tally the outcome.

    ``unpaired_in_b`` counts B elements <= n_max that nothing maps to;
    ``unpaired_in_b_within_image`` restricts that to B elements no larger
    than the largest image.  Images outside B are violations, not errors.
    """
    if n_max < 1:
        raise MalformedInput(f"N_max must be >= 1, got {n_max}")
    image = {}
    paired = out_of_b = clashes = unpaired_a = 0
    for k in range(1, n_max + 1):
        if not a(k):
            continue
        t = pairing(k)
        if t is None or t < 1 or not b(t):
            out_of_b += 1
            unpaired_a += 1
            continue
        if t in image:
            clashes += 1
            unpaired_a += 1
            continue
        image[t] = k
        paired += 1
    img = frozenset(image)
    hi = max(img) if img else 0
    return PairingAudit(
        pairing.name,
        a.name,
        b.name,
        n_max,
        paired=paired,
        unpaired_in_a=unpaired_a,
        unpaired_in_b=sum(1 for k in range(1, n_max + 1) if b(k) and k not in img),
        unpaired_in_b_within_image=sum(1 for k in range(1, hi + 1) if b(k) and k not in img),
        injectivity_violations=clashes,
        out_of_b=out_of_b,
        image_min=min(img) if img else None,
        image_max=hi if img else None,
        image_beyond_window=sum(1 for t in img if t > n_max),
        image=img,
    )


def contrast(pairing, a, b, n_max):
    """Audit a pairing and compare counts; flags pairings that look like
    bijections while the counting profiles disagree."""
    audit = pairing_audit(pairing, a, b, n_max)
    verdict = compare_profiles(partial_counts(a, n_max), partial_counts(b, n_max))
    counts_equal = (verdict.kind == "difference_stabilizes" and verdict.value == 0) or (
        verdict.kind == "ratio_converges" and verdict.value == 1
    )
    if audit.is_window_bijection and not counts_equal:
        verdict = ComparisonVerdict(
            "bijection_equinumerous_only", a.name, b.name, n_max, detail=verdict
        )
    return audit, verdict
