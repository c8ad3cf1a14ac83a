from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diaglab.errors import InsufficientEvidence, MalformedInput
from diaglab.numerosity import (
    EVENS,
    NATURALS,
    ODDS,
    SQUARES,
    compare_profiles,
    contrast,
    interval,
    minus,
    pairing_audit,
    parse_pairing,
    parse_set,
    partial_counts,
)

WINDOW = 200


def compare(a, b, n_max=WINDOW):
    return compare_profiles(partial_counts(a, n_max), partial_counts(b, n_max))


atoms = st.one_of(
    st.sampled_from(["naturals", "evens", "odds", "squares", "empty"]),
    st.builds(lambda r, m: f"residue({r}, {m})", st.integers(0, 9), st.integers(1, 9)),
    st.builds(lambda xs: f"finite({', '.join(map(str, xs))})", st.lists(st.integers(1, 300), min_size=1, max_size=6)),
    st.builds(lambda lo, w: f"interval({lo}, {lo + w})", st.integers(1, 150), st.integers(0, 80)),
)
set_exprs = st.recursive(
    atoms,
    lambda inner: st.builds(lambda f, a, b: f"{f}({a}, {b})", st.sampled_from(["minus", "union", "intersect"]), inner, inner),
    max_leaves=4,
)


class TestSets:
    def test_named_sets(self):
        assert [k for k in range(1, 11) if EVENS(k)] == [2, 4, 6, 8, 10]
        assert [k for k in range(1, 11) if ODDS(k)] == [1, 3, 5, 7, 9]
        assert [k for k in range(1, 50) if SQUARES(k)] == [1, 4, 9, 16, 25, 36, 49]

    def test_expressions(self):
        s = parse_set("minus(naturals, interval(1, 5))")
        assert [k for k in range(1, 9) if s(k)] == [6, 7, 8]
        assert 6 in s and 5 not in s
        assert [k for k in range(1, 20) if parse_set("residue(1, 4)")(k)] == [1, 5, 9, 13, 17]
        assert [k for k in range(1, 20) if parse_set("union(finite(3, 7), multiples(5))")(k)] == [3, 5, 7, 10, 15]
        named = {"small": interval(1, 3)}
        assert [k for k in range(1, 9) if parse_set("minus(evens, small)", named)(k)] == [4, 6, 8]

    @pytest.mark.parametrize(
        "text", ["foo", "residue(1)", "interval(1, 2, 3)", "residue(0, 0)", "minus(naturals)", "n +", "naturals + 1", "finite(x)"]
    )
    def test_bad_expressions(self, text):
        with pytest.raises(MalformedInput):
            parse_set(text)

    def test_pairings(self):
        half = parse_pairing("n / 2")
        assert half(8) == 4 and half(7) is None
        assert parse_pairing("2*n + 1")(3) == 7
        assert parse_pairing("n // 0")(3) is None
        assert parse_pairing("n % 3 - -1")(5) == 3
        for bad in ("m + 1", "n ** 2", "f(n)", "n +"):
            with pytest.raises(MalformedInput):
                parse_pairing(bad)


class TestPartialCounts:
    def test_squares_brute_force(self):
        prof = partial_counts(SQUARES, 100)
        assert prof.c(100) == sum(1 for k in range(1, 101) if isqrt(k) ** 2 == k) == 10
        assert prof.c(99) == 9

    def test_evens(self):
        prof = partial_counts(EVENS, 10)
        assert prof.counts == (0, 1, 1, 2, 2, 3, 3, 4, 4, 5)

    def test_rejects_empty_window(self):
        with pytest.raises(MalformedInput):
            partial_counts(EVENS, 0)

    @settings(max_examples=60, deadline=None)
    @given(set_exprs)
    def test_monotone_and_bounded(self, text):
        prof = partial_counts(parse_set(text), WINDOW)
        prev = 0
        for N in range(1, WINDOW + 1):
            assert 0 <= prof.c(N) - prev <= 1
            assert prof.c(N) <= N
            prev = prof.c(N)


class TestCompare:
    def test_naturals_minus_five(self):
        b = parse_set("minus(naturals, interval(1, 5))")
        v = compare(NATURALS, b, 10_000)
        assert v.kind == "difference_stabilizes" and v.value == 5 and v.since == 5
        w = compare(b, NATURALS, 10_000)
        assert w.value == -5 and w.since == 5

    def test_naturals_evens(self):
        v = compare(NATURALS, EVENS, 10_000)
        assert v.kind == "ratio_converges" and v.value == 2 and v.regime == "asymptotic"
        assert v.discrepancy_bound == 1
        assert v.exact_on == (2, (0,))
        w = compare(EVENS, NATURALS, 10_000)
        assert w.value == Fraction(1, 2) and w.exact_on == (2, (0,))

    def test_exact_ratio(self):
        v = compare(parse_set("multiples(3)"), parse_set("multiples(6)"), 600)
        assert v.kind == "ratio_converges" and v.value == 2
        # c_3(N) = 2 c_6(N) fails for N = 3, 4, 5 mod 6, so this is asymptotic
        assert v.regime == "asymptotic" and v.exact_on == (6, (0, 1, 2))

    def test_squares_inconclusive(self):
        assert compare(NATURALS, SQUARES, 10_000).kind == "inconclusive"

    def test_empty_inconclusive(self):
        assert compare(NATURALS, parse_set("empty")).kind == "inconclusive"

    def test_requires_window(self):
        with pytest.raises(InsufficientEvidence):
            compare(NATURALS, EVENS, 15)
        compare(NATURALS, EVENS, 16)

    def test_window_mismatch(self):
        with pytest.raises(MalformedInput):
            compare_profiles(partial_counts(EVENS, 20), partial_counts(ODDS, 30))

    def test_late_difference_is_not_stable(self):
        b = parse_set("minus(naturals, finite(150))")
        v = compare(NATURALS, b, 200)
        assert not (v.kind == "difference_stabilizes")

    @settings(max_examples=60, deadline=None)
    @given(set_exprs, set_exprs)
    def test_antisymmetry(self, ta, tb):
        a, b = parse_set(ta), parse_set(tb)
        v, w = compare(a, b), compare(b, a)
        assert v.kind == w.kind
        if v.kind == "difference_stabilizes":
            assert v.value == -w.value and v.since == w.since
        if v.kind == "ratio_converges":
            assert v.value == 1 / w.value
            assert (v.regime, v.discrepancy_bound, v.exact_on) == (w.regime, w.discrepancy_bound, w.exact_on)

    @settings(max_examples=40, deadline=None)
    @given(set_exprs)
    def test_self_comparison(self, text):
        v = compare(parse_set(text), parse_set(text))
        assert v.kind == "difference_stabilizes" and v.value == 0 and v.since == 1

    @settings(max_examples=60, deadline=None)
    @given(set_exprs, set_exprs)
    def test_part_never_counted_equal_to_whole(self, ta, tb):
        whole = parse_set(f"union({ta}, {tb})")
        part = parse_set(ta)
        missing = [k for k in range(1, WINDOW + 1) if whole(k) and not part(k)]
        v = compare(part, whole)
        if v.kind == "difference_stabilizes":
            assert v.value == -len(missing)
            assert v.value <= 0
        if v.kind == "ratio_converges":
            assert v.value <= 1
        if missing:
            assert not (v.kind == "difference_stabilizes" and v.value == 0)
            assert not (v.kind == "ratio_converges" and v.regime == "exact" and v.value == 1)


class TestPairings:
    def test_halving_evens(self):
        audit, verdict = contrast(parse_pairing("n / 2", "2n <-> n"), EVENS, NATURALS, 200)
        assert audit.paired == 100
        assert (audit.image_min, audit.image_max) == (1, 100)
        assert audit.unpaired_in_b == 100 and audit.unpaired_in_b_within_image == 0
        assert audit.injectivity_violations == 0 and audit.out_of_b == 0
        assert audit.is_window_bijection
        assert verdict.kind == "bijection_equinumerous_only"
        assert verdict.detail.kind == "ratio_converges" and verdict.detail.value == Fraction(1, 2)

    def test_identity_on_evens(self):
        audit, verdict = contrast(parse_pairing("n"), EVENS, NATURALS, 200)
        assert audit.paired == 100
        assert audit.unpaired_in_b_within_image == 100
        assert not audit.is_window_bijection
        assert verdict.kind == "ratio_converges"

    def test_violations(self):
        audit = pairing_audit(parse_pairing("n // 2"), NATURALS, NATURALS, 20)
        assert audit.out_of_b == 1  # 1 -> 0
        assert audit.injectivity_violations == 9  # 3, 5, ..., 19 collide
        assert audit.paired == 10
        assert audit.unpaired_in_a == 10

    def test_image_beyond_window(self):
        audit = pairing_audit(parse_pairing("2*n"), NATURALS, EVENS, 50)
        assert audit.image_beyond_window == 25 and audit.unpaired_in_b == 0

    def test_equal_counts_no_flag(self):
        audit, verdict = contrast(parse_pairing("n + 1"), ODDS, EVENS, 100)
        assert audit.is_window_bijection
        assert verdict.kind == "ratio_converges" and verdict.value == 1
        audit, verdict = contrast(parse_pairing("n + 5"), NATURALS, parse_set("minus(naturals, interval(1, 5))"), 100)
        assert audit.is_window_bijection and audit.image_beyond_window == 5
        assert verdict.kind == "bijection_equinumerous_only" and verdict.detail.value == 5
