"""Golden reference values for small n, independently tabulated.

For each residue class r of the rank modulo 3 this records, per n, the
count N(r, 3; n), the maximum over partitions of n of the product of
counts over the parts, and the complete set of partitions attaining
that maximum.  The r = 1 data equals the r = 2 data (rank negation
swaps those classes), so only r in {0, 1} is stored.

Optima sets are normalized: each partition is a nonincreasing tuple and
the set is sorted ascending, which is the same normalization the
computing code uses, so comparisons are plain equality.
"""

from __future__ import annotations

# n: (count, max_product, optima)
SMALL_TABLE = {
    0: {
        1: (1, 1, ((1,),)),
        2: (0, 1, ((1, 1),)),
        3: (1, 1, ((1, 1, 1), (3,))),
        4: (3, 3, ((4,),)),
        5: (1, 3, ((4, 1),)),
        6: (3, 3, ((4, 1, 1), (6,))),
        7: (7, 7, ((7,),)),
        8: (6, 9, ((4, 4),)),
        9: (10, 10, ((9,),)),
        10: (16, 16, ((10,),)),
        11: (16, 21, ((7, 4),)),
        12: (25, 27, ((4, 4, 4),)),
        13: (37, 37, ((13,),)),
        # The count here is forced by p(14) = 135 = 43 + 46 + 46 and is
        # confirmed by direct enumeration of all 135 partitions.
        14: (43, 49, ((7, 7),)),
        15: (58, 63, ((7, 4, 4),)),
        16: (81, 81, ((4, 4, 4, 4), (16,))),
        17: (95, 112, ((10, 7),)),
        18: (127, 147, ((7, 7, 4),)),
        19: (168, 189, ((7, 4, 4, 4),)),
        20: (205, 259, ((13, 7),)),
        21: (264, 343, ((7, 7, 7),)),
        22: (340, 441, ((7, 7, 4, 4),)),
        23: (413, 592, ((13, 10),)),
        24: (523, 784, ((10, 7, 7),)),
        25: (660, 1029, ((7, 7, 7, 4),)),
        26: (806, 1369, ((13, 13),)),
        27: (1002, 1813, ((13, 7, 7),)),
        28: (1248, 2401, ((7, 7, 7, 7),)),
        29: (1513, 3087, ((7, 7, 7, 4, 4),)),
        30: (1866, 4144, ((13, 10, 7),)),
        31: (2292, 5488, ((10, 7, 7, 7),)),
        32: (2775, 7203, ((7, 7, 7, 7, 4),)),
    },
    1: {
        1: (0, 0, ((1,),)),
        2: (1, 1, ((2,),)),
        3: (1, 1, ((3,),)),
        4: (1, 1, ((2, 2), (4,))),
        5: (3, 3, ((5,),)),
        6: (4, 4, ((6,),)),
        7: (4, 4, ((7,),)),
        8: (8, 8, ((8,),)),
        9: (10, 10, ((9,),)),
        10: (13, 13, ((10,),)),
        11: (20, 20, ((11,),)),
        12: (26, 26, ((12,),)),
        13: (32, 32, ((13,),)),
        14: (46, 46, ((14,),)),
        15: (59, 59, ((15,),)),
        16: (75, 75, ((16,),)),
        17: (101, 101, ((17,),)),
        18: (129, 129, ((18,),)),
        19: (161, 161, ((19,),)),
        20: (211, 211, ((20,),)),
        21: (264, 264, ((21,),)),
    },
}


def counts_column(r: int) -> dict[int, int]:
    """n -> N(r, 3; n) for the tabulated range."""
    data = SMALL_TABLE[1 if r == 2 else r]
    return {n: row[0] for n, row in data.items()}


def max_column(r: int) -> dict[int, tuple[int, tuple[tuple[int, ...], ...]]]:
    """n -> (max product, optima) for the tabulated range."""
    data = SMALL_TABLE[1 if r == 2 else r]
    return {n: (row[1], row[2]) for n, row in data.items()}
