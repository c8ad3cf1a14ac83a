"""Built-in definitions reproducing the worked examples."""

SPIKES_5 = '["0.01[0]", "0.001[0]", "0.0001[0]", "0.00001[0]", "0.000001[0]"]'

PRESETS = {
    "paper-original-set": (
        "Partial sums of 10^-i with 0.[1] at ω, and its ω re-listing with 0.[1] first",
        """
format = "diaglab/1"

[lists.original]
title = "original set"
generator = "geometric_ones"
tail = ["0.[1]"]

[lists.flattened]
title = "original set"
generator = "geometric_ones"
tail = ["0.[1]"]
flatten = true

[[experiment]]
kind = "diagonal"
list = "flattened"
horizon = 256

[[experiment]]
kind = "diagonal"
list = "original"
horizon = 256
""",
    ),
    "paper-extended-set": (
        "Five spikes 10^-2..10^-6 before the partial sums; diagonal lands at ω, offset 5",
        f"""
format = "diaglab/1"

[lists.extended]
title = "extended set (m=5)"
prefix = {SPIKES_5}
generator = "geometric_ones"
tail = ["0.[1]"]

[[experiment]]
kind = "diagonal"
list = "extended"
horizon = 256

[[experiment]]
kind = "induction"
list = "extended"
n_max = 1000
""",
    ),
    "paper-interleaved-set": (
        "Odd rows 1/(99*10^(n-1)), even rows partial sums, then 0.[0], 0.[1]; diagonal at ω+1, ratio 2",
        """
format = "diaglab/1"

[lists.interleaved]
title = "interleaved set"
generator = "interleave(spaced_pair(step=2), geometric_ones)"
tail = ["0.[0]", "0.[1]"]

[[experiment]]
kind = "diagonal"
list = "interleaved"
horizon = 256

[[experiment]]
kind = "induction"
list = "interleaved"
n_max = 1000
""",
    ),
    "paper-generalized-offset": (
        "Extended set with m = 1, 3, 7 spikes; induction offsets m",
        """
format = "diaglab/1"

[lists.m1]
title = "extended set (m=1)"
prefix_family = "spike(1)"
prefix_count = 1
generator = "geometric_ones"
tail = ["0.[1]"]

[lists.m3]
title = "extended set (m=3)"
prefix_family = "spike(1)"
prefix_count = 3
generator = "geometric_ones"
tail = ["0.[1]"]

[lists.m7]
title = "extended set (m=7)"
prefix_family = "spike(1)"
prefix_count = 7
generator = "geometric_ones"
tail = ["0.[1]"]

[[experiment]]
kind = "induction"
list = "m1"
n_max = 1000

[[experiment]]
kind = "induction"
list = "m3"
n_max = 1000

[[experiment]]
kind = "induction"
list = "m7"
n_max = 1000
""",
    ),
    "paper-rat-census": (
        "The 8 five-digit strings ending 000 or 111: all 8! orderings and all ordered 5-prefixes",
        """
format = "diaglab/1"

[strings.rat]
length = 5
predicate = "last_equal(3)"

[[experiment]]
kind = "census"
strings = "rat"
mode = "exhaustive"

[[experiment]]
kind = "census"
strings = "rat"
mode = "prefix-exhaustive"
""",
    ),
    "paper-rea-census": (
        "All 32 five-digit binary strings: sampled orderings (seed 1) against the exact count",
        """
format = "diaglab/1"

[strings.rea]
length = 5

[[experiment]]
kind = "census"
strings = "rea"
mode = "sampled"
samples = 100000
seed = 1

[[experiment]]
kind = "census"
strings = "rea"
mode = "counted"
""",
    ),
    "paper-definitive-sizes": (
        "Forced outcomes: the full 2^n set always, an n-element set never, yields a member diagonal",
        """
format = "diaglab/1"

[strings.full2]
length = 2

[strings.full3]
length = 3

[strings.size3]
members = ["000", "010", "101"]

[[experiment]]
kind = "census"
strings = "full2"
mode = "exhaustive"

[[experiment]]
kind = "census"
strings = "full3"
mode = "prefix-exhaustive"

[[experiment]]
kind = "census"
strings = "size3"
mode = "exhaustive"
""",
    ),
    "paper-evens-pairing": (
        "Pairings 2n<->n and 2n<->2n of evens with naturals, and partial-count verdicts",
        """
format = "diaglab/1"

[sets.naturals_minus_5]
expr = "minus(naturals, interval(1, 5))"

[pairings.halve]
name = "2n <-> n"
expr = "n / 2"

[pairings.identity]
name = "2n <-> 2n"
expr = "n"

[[experiment]]
kind = "numerosity"
a = "evens"
b = "naturals"
pairing = "halve"
n_max = 200

[[experiment]]
kind = "numerosity"
a = "evens"
b = "naturals"
pairing = "identity"
n_max = 200

[[experiment]]
kind = "numerosity"
a = "naturals"
b = "naturals_minus_5"
n_max = 10000

[[experiment]]
kind = "numerosity"
a = "naturals"
b = "evens"
n_max = 10000
""",
    ),
}


def list_presets():
    """(name, description) for every preset, in a fixed order."""
    return [(name, desc) for name, (desc, _) in PRESETS.items()]


def preset_text(name):
    return PRESETS[name][1]
