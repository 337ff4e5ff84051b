"""Exactness of the partition/rank counting core.

The brute-force enumerator is the oracle: it literally builds every
partition and measures its rank, so the series-expansion table must
match it coefficient for coefficient.  Small rows are also checked
against hand-derived values.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dysonrank import (
    RankTable,
    a_third_exact,
    brute_rank_counts,
    build_rank_table,
    decomposition_check,
    enumerate_partitions,
    partition_number,
    partition_numbers,
    rank,
    rank_count,
    residue_count,
)

# First values of the partition function, long established.
_P_SMALL = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176,
            231, 297, 385, 490, 627]


class TestPartitionFunction:
    def test_small_values(self):
        assert partition_numbers(20) == _P_SMALL

    def test_known_milestones(self):
        assert partition_number(100) == 190569292
        assert partition_number(1000) == 24061467864032622473692149727991

    def test_matches_enumeration(self):
        for n in range(31):
            assert partition_number(n) == sum(1 for _ in enumerate_partitions(n))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            partition_number(-1)


class TestEnumeration:
    def test_reverse_lexicographic_order(self):
        assert list(enumerate_partitions(4)) == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_empty_partition(self):
        assert list(enumerate_partitions(0)) == [()]

    def test_parts_nonincreasing_and_sum(self):
        for parts in enumerate_partitions(9):
            assert sum(parts) == 9
            assert all(a >= b for a, b in zip(parts, parts[1:]))


class TestRank:
    def test_definition(self):
        assert rank(()) == 0
        assert rank((4,)) == 3
        assert rank((3, 1)) == 1
        assert rank((2, 2)) == 0
        assert rank((1, 1, 1, 1)) == -3

    @settings(deadline=None, max_examples=60)
    @given(st.lists(st.integers(1, 12), min_size=1, max_size=10))
    def test_conjugation_negates_rank(self, parts):
        parts = tuple(sorted(parts, reverse=True))
        conjugate = tuple(sum(1 for p in parts if p > i)
                          for i in range(parts[0]))
        assert sum(conjugate) == sum(parts)
        assert rank(conjugate) == -rank(parts)


class TestTableAgainstOracle:
    def test_rows_equal_brute_force(self, table):
        for n in range(26):
            counts = brute_rank_counts(n)
            row = table.row(n)
            lo = 0 if n == 0 else 1 - n
            for i, c in enumerate(row):
                assert c == counts.get(lo + i, 0), (n, lo + i)
            assert sum(row) == sum(counts.values())

    def test_hand_derived_rows(self, table):
        assert table.row(0) == [1]
        assert table.row(1) == [1]
        assert table.row(2) == [1, 0, 1]
        assert table.row(4) == [1, 0, 1, 1, 1, 0, 1]

    def test_row_sums_are_partition_numbers(self, table):
        p = partition_numbers(table.n_max)
        for n in range(table.n_max + 1):
            assert sum(table.row(n)) == p[n]

    def test_rank_symmetry(self, table):
        for n in range(table.n_max + 1):
            row = table.row(n)
            assert row == row[::-1]

    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=-250, max_value=250),
           st.integers(min_value=0, max_value=240))
    def test_count_accessor_matches_row(self, table, m, n):
        if n == 0:
            expected = 1 if m == 0 else 0
        elif -(n - 1) <= m <= n - 1:
            expected = table.row(n)[m + n - 1]
        else:
            expected = 0
        assert table.count(m, n) == expected
        assert rank_count(table, m, n) == expected

    def test_extreme_ranks(self, table):
        for n in range(2, 50):
            assert table.count(n - 1, n) == 1
            assert table.count(1 - n, n) == 1
            assert table.count(n, n) == 0
            assert table.count(-n, n) == 0


class TestResidueCounts:
    def test_established_values(self, table):
        assert residue_count(table, 0, 3, 13) == 37
        assert residue_count(table, 0, 3, 10) == 16
        assert residue_count(table, 0, 3, 22) == 340
        assert residue_count(table, 1, 3, 17) == 101
        assert residue_count(table, 1, 3, 14) == 46
        assert residue_count(table, 1, 3, 20) == 211
        assert residue_count(table, 0, 3, 2) == 0
        assert residue_count(table, 1, 3, 2) == 1
        assert residue_count(table, 2, 3, 2) == 1

    def test_residues_partition_all_partitions(self, table):
        for t in (1, 2, 3, 5, 7):
            for n in (0, 1, 9, 40, 111, 240):
                total = sum(residue_count(table, r, t, n) for r in range(t))
                assert total == partition_number(n)

    def test_count_of_14_forced_by_row_sum(self, table):
        # p(14) = 135 and the two nonzero residues hold 46 each, which
        # pins the residue-0 count to 43.
        assert partition_number(14) == 135
        assert residue_count(table, 1, 3, 14) == 46
        assert residue_count(table, 2, 3, 14) == 46
        assert residue_count(table, 0, 3, 14) == 43

    def test_symmetry_between_conjugate_residues(self, table):
        for n in range(table.n_max + 1):
            assert (residue_count(table, 1, 3, n)
                    == residue_count(table, 2, 3, n))

    def test_empty_partition_convention(self, table):
        assert residue_count(table, 0, 3, 0) == 1
        assert residue_count(table, 1, 3, 0) == 0
        assert residue_count(table, 0, 1, 0) == 1

    def test_modulus_one_gives_partition_numbers(self, table):
        for n in (0, 1, 17, 120):
            assert residue_count(table, 0, 1, n) == partition_number(n)

    def test_validation(self, table):
        with pytest.raises(ValueError):
            residue_count(table, 3, 3, 10)
        with pytest.raises(ValueError):
            residue_count(table, -1, 3, 10)
        with pytest.raises(ValueError):
            residue_count(table, 0, 0, 10)
        with pytest.raises(ValueError):
            residue_count(table, 0, 3, table.n_max + 1)


class TestAThird:
    def test_small_values(self, table):
        assert a_third_exact(table, 1) == 1
        assert a_third_exact(table, 2) == -1
        assert a_third_exact(table, 7) == 3

    def test_consistent_with_residue_counts(self, table):
        for n in (1, 6, 50, 240):
            expected = (residue_count(table, 0, 3, n)
                        - residue_count(table, 1, 3, n))
            assert a_third_exact(table, n) == expected


class TestDecomposition:
    def test_roots_of_unity_filter(self, table):
        for t in (1, 2, 3, 5, 7):
            for n in (1, 5, 12, 30, 60, 150):
                for r in range(t):
                    assert decomposition_check(table, r, t, n)

    def test_zero_n(self, table):
        assert decomposition_check(table, 0, 3, 0)


class TestTableObject:
    def test_build_validation(self):
        with pytest.raises(ValueError):
            build_rank_table(-1)

    def test_tiny_table(self):
        t = build_rank_table(3)
        assert t.n_max == 3
        # Partitions of 3 have ranks 2, 0, -2.
        assert t.row(3) == [1, 0, 1, 0, 1]

    def test_equality(self):
        assert build_rank_table(12) == build_rank_table(12)
        assert build_rank_table(12) != build_rank_table(13)

    def test_out_of_range_row(self, table):
        with pytest.raises(ValueError):
            table.row(table.n_max + 1)
        with pytest.raises(ValueError):
            table.row(-1)
        with pytest.raises(TypeError):
            table.row(1.5)

    def test_repr(self, table):
        assert "240" in repr(table)
