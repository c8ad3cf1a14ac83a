from collections import Counter

import pytest

from diaglab.rng import SplitMix64


def test_reference_outputs_seed_zero():
    r = SplitMix64(0)
    assert [r.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_reproducible():
    a, b = SplitMix64(12345), SplitMix64(12345)
    assert [a.next() for _ in range(50)] == [b.next() for _ in range(50)]
    assert SplitMix64(1).next() != SplitMix64(2).next()


def test_below_bounds():
    r = SplitMix64(7)
    for n in (1, 2, 3, 7, 10, 2**63 + 5):
        for _ in range(200):
            assert 0 <= r.below(n) < n
    with pytest.raises(ValueError):
        r.below(0)


def test_below_roughly_uniform():
    r = SplitMix64(3)
    c = Counter(r.below(6) for _ in range(60_000))
    assert set(c) == set(range(6))
    assert all(abs(v - 10_000) < 500 for v in c.values())


def test_shuffle_prefix_is_a_permutation():
    r = SplitMix64(9)
    for count in (0, 1, 3, 10, 20):
        items = r.shuffle_prefix(list(range(10)), count)
        assert sorted(items) == list(range(10))


def test_shuffle_prefix_uniform_on_ordered_pairs():
    r = SplitMix64(11)
    c = Counter(tuple(r.shuffle_prefix(list(range(4)), 2)[:2]) for _ in range(24_000))
    assert len(c) == 12
    assert all(abs(v - 2000) < 250 for v in c.values())
