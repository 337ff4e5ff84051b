"""Maximal products of residue counts over the parts of a partition.

For fixed residue r and modulus t, each partition (l_1, ..., l_k) of n
gets the score prod_i N(r, t; l_i).  This module computes the maximum
score and the complete set of maximizing partitions three independent
ways: a dynamic program over bounded largest parts, brute force over
all partitions, and (for t = 3 above the stabilization thresholds)
periodic closed forms.  It also machine-checks the local replacement
rules the closed forms rest on, and the analogous t = 2 conjectures.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from collections.abc import Iterable, Sequence

from .core import RankTable, enumerate_partitions, residue_count
from .reference import counts_column, max_column

__all__ = [
    "MaxProductEntry",
    "ClosedFormCase",
    "VerificationReport",
    "brute_max",
    "closed_form",
    "conjecture_max_mod2",
    "max_table",
    "product_over_partition",
    "replacement_rules",
    "verify_closed_forms",
    "verify_replacement_rules",
    "verify_small_tables",
]

DEFAULT_OPTIMA_CAP = 64


@dataclass(frozen=True)
class MaxProductEntry:
    """Best product for one n, with every attaining partition.

    optima is sorted ascending; truncated means the set was cut at the
    cap and only a prefix is stored."""
    n: int
    value: int
    optima: tuple[tuple[int, ...], ...]
    truncated: bool = False


@dataclass(frozen=True)
class ClosedFormCase:
    """One periodic case: fixed head parts plus arbitrarily many copies
    of the base part."""
    residue: int
    head: tuple[int, ...]
    base: int
    coefficient: int


@dataclass
class VerificationReport:
    """Outcome of one verification sweep."""
    name: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _validate_rt(r: int, t: int) -> None:
    if t < 1:
        raise ValueError("modulus t must be positive")
    if not 0 <= r < t:
        raise ValueError("residue r must satisfy 0 <= r < t")


def product_over_partition(table: RankTable, r: int, t: int,
                           parts: Sequence[int]) -> int:
    """prod over the parts of N(r, t; part); empty product is 1."""
    _validate_rt(r, t)
    out = 1
    for part in parts:
        if part < 1:
            raise ValueError("parts must be positive")
        out *= residue_count(table, r, t, part)
    return out


def _count_row(table: RankTable, r: int, t: int, n_max: int) -> list[int]:
    return [0] + [residue_count(table, r, t, j) for j in range(1, n_max + 1)]


def _value_table(f: list[int], n_max: int) -> list[list]:
    """V[s][c] = best product over partitions of s with parts <= c,
    or -1 when no such partition exists (s > 0, c = 0).  Zero products
    are real values (zero factors happen), hence the separate sentinel."""
    V = [[1] * (n_max + 1)]
    for s in range(1, n_max + 1):
        row = [-1] * (n_max + 1)
        prev = -1
        for c in range(1, n_max + 1):
            best = prev
            if c <= s:
                sub = V[s - c][c]
                if sub >= 0:
                    cand = f[c] * sub
                    if cand > best:
                        best = cand
            row[c] = prev = best
        V.append(row)
    return V


def _collect_optima(V: list[list], f: list[int], n: int,
                    cap: int | None) -> tuple[list[tuple[int, ...]], bool]:
    """All partitions attaining V[n][n], each found exactly once (a
    partition is reconstructed only at its own largest part)."""
    limit = None if cap is None else cap + 1
    found: list[tuple[int, ...]] = []
    stack: list[tuple[int, int, tuple[int, ...]]] = [(n, n, ())]
    while stack:
        s, c, prefix = stack.pop()
        while True:
            if s == 0:
                found.append(prefix)
                break
            if c > s:
                c = s
            target = V[s][c]
            takes = V[s - c][c] >= 0 and f[c] * V[s - c][c] == target
            skips = c > 1 and V[s][c - 1] == target
            if takes and skips:
                stack.append((s, c - 1, prefix))
            if takes:
                prefix = prefix + (c,)
                s -= c
            elif skips:
                c -= 1
            else:  # pragma: no cover - V guarantees one branch matches
                break
        if limit is not None and len(found) >= limit:
            break
    found.sort()
    if cap is not None and len(found) > cap:
        return found[:cap], True
    return found, False


def max_table(table: RankTable, r: int, t: int, n_max: int,
              optima_cap: int | None = DEFAULT_OPTIMA_CAP) -> list[MaxProductEntry]:
    """Entries for n = 0 .. n_max by dynamic programming.

    The recurrence V(s, c) = max(V(s, c-1), f(c) V(s-c, c)) walks parts
    in canonical nonincreasing order, so each optimal partition
    corresponds to exactly one reconstruction path.  optima_cap bounds
    the stored set per n (None means unbounded); overflow is flagged,
    never silent."""
    _validate_rt(r, t)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > table.n_max:
        raise ValueError(
            f"needs counts up to {n_max} but table holds {table.n_max}")
    f = _count_row(table, r, t, n_max)
    V = _value_table(f, n_max)
    entries = [MaxProductEntry(0, 1, ((),))]
    for n in range(1, n_max + 1):
        optima, truncated = _collect_optima(V, f, n, optima_cap)
        entries.append(MaxProductEntry(n, V[n][n], tuple(optima), truncated))
    return entries


def brute_max(table: RankTable, r: int, t: int, n: int,
              optima_cap: int | None = DEFAULT_OPTIMA_CAP) -> MaxProductEntry:
    """Same entry by scoring every partition of n.  The oracle for
    max_table; exponential, keep n modest."""
    _validate_rt(r, t)
    f = _count_row(table, r, t, n)
    best = -1
    optima: list[tuple[int, ...]] = []
    for parts in enumerate_partitions(n):
        v = 1
        for part in parts:
            v *= f[part]
        if v > best:
            best = v
            optima = [parts]
        elif v == best:
            optima.append(parts)
    optima.sort()
    truncated = optima_cap is not None and len(optima) > optima_cap
    if truncated:
        optima = optima[:optima_cap]
    return MaxProductEntry(n, best, tuple(optima), truncated)


# Periodic closed forms above the stabilization threshold.  Heads are
# the fixed non-base parts; the base part repeats to absorb n.  The
# coefficient is the product of the head parts' counts, taken from the
# frozen small table so there is a single source of truth.
_HEADS_R0 = {0: (), 1: (13, 13, 10), 2: (13, 10), 3: (10,), 4: (13, 13, 13),
             5: (13, 13), 6: (13,)}
_HEADS_R12 = {0: (), 1: (15,), 2: (15, 15), 3: (17,), 4: (17, 15),
              5: (11, 11, 11), 6: (12, 11, 11), 7: (12, 12, 11), 8: (11, 11),
              9: (12, 11), 10: (12, 12), 11: (11,), 12: (12,), 13: (15, 12)}

CLOSED_FORM_START = {0: 33, 1: 22, 2: 22}


def _closed_form_case(r: int, n: int) -> ClosedFormCase:
    if r not in (0, 1, 2):
        raise ValueError("closed forms exist for t = 3, r in {0, 1, 2}")
    if n < CLOSED_FORM_START[r]:
        raise ValueError(
            f"closed form for r={r} applies from n={CLOSED_FORM_START[r]}")
    counts = counts_column(r)
    if r == 0:
        base, heads = 7, _HEADS_R0
    else:
        base, heads = 14, _HEADS_R12
    head = heads[n % base]
    coeff = 1
    for part in head:
        coeff *= counts[part]
    return ClosedFormCase(residue=n % base, head=head, base=base,
                          coefficient=coeff)


def closed_form(r: int, n: int) -> tuple[int, tuple[int, ...]]:
    """(value, partition) from the periodic case table.

    The partition is the head plus (n - sum(head))/base copies of the
    base part, in canonical nonincreasing order; the value is the
    coefficient times the base count to that power."""
    case = _closed_form_case(r, n)
    rest = n - sum(case.head)
    reps, rem = divmod(rest, case.base)
    if rem:  # head sums are chosen per residue class; cannot happen
        raise AssertionError(f"case table broken at r={r}, n={n}")
    base_count = counts_column(r)[case.base]
    value = case.coefficient * base_count ** reps
    parts = tuple(sorted(case.head + (case.base,) * reps, reverse=True))
    return value, parts


def verify_closed_forms(table: RankTable, r: int, n_hi: int,
                        n_lo: int | None = None) -> VerificationReport:
    """Closed form == dynamic program, value and unique optimum, over
    [n_lo, n_hi] (n_lo defaults to the stabilization threshold)."""
    lo = CLOSED_FORM_START[r] if n_lo is None else n_lo
    report = VerificationReport(name=f"closed-forms r={r}")
    entries = max_table(table, r, 3, n_hi, optima_cap=4)
    for n in range(lo, n_hi + 1):
        value, parts = closed_form(r, n)
        entry = entries[n]
        if entry.value != value or entry.optima != (parts,) or entry.truncated:
            report.mismatches.append(
                (n, value, parts, entry.value, entry.optima))
        report.checked += 1
    return report


# Local replacement rules from the stabilization arguments: replacing
# the left multiset by the right one strictly increases the product.
_RULES_R0 = [
    ((1, 1, 1, 1), (4,)),
    ((3, 3), (6,)),
    ((4, 4, 4, 4, 4), (13, 7)),
    ((6, 6), (4, 4, 4)),
    ((9, 9), (7, 7, 4)),
    ((10, 10), (13, 7)),
    ((13, 13, 13, 13), (10, 7, 7, 7, 7, 7, 7)),
    ((7, 1), (4, 4)),
    ((7, 7, 4, 4, 4), (13, 13)),
    ((7, 7, 7, 7, 4, 4), (13, 13, 10)),
    ((7, 7, 7, 7, 7, 4), (13, 13, 13)),
]
_RULES_R1 = [
    ((2, 2, 2), (6,)),
    ((11, 11, 11, 11), (15, 15, 14)),
    ((12, 12, 12), (14, 11, 11)),
    ((15, 15, 15), (12, 11, 11, 11)),
]

# Family rules: a straggler part s next to an allowed part a is beaten
# by the optimal partition of a + s.
_FAMILY_R0 = {"stragglers": (3, 6, 16), "parts": (3, 4, 6, 7, 9, 10, 13, 16)}
_FAMILY_R1 = {"stragglers": (2,), "parts": tuple(
    i for i in range(1, 22) if i != 2)}


def _optimal_partition(r: int, n: int) -> tuple[int, ...]:
    if n >= CLOSED_FORM_START[r]:
        return closed_form(r, n)[1]
    return max_column(r)[n][1][0]


def replacement_rules(r: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The full rule list for residue r: the explicit pairs plus the
    straggler families expanded against the optimal targets."""
    if r not in (0, 1, 2):
        raise ValueError("rules exist for t = 3, r in {0, 1, 2}")
    explicit = _RULES_R0 if r == 0 else _RULES_R1
    family = _FAMILY_R0 if r == 0 else _FAMILY_R1
    rules = list(explicit)
    seen = {tuple(sorted(before)) for before, _ in rules}
    for s in family["stragglers"]:
        for a in family["parts"]:
            before = tuple(sorted((a, s), reverse=True))
            if tuple(sorted(before)) in seen:
                continue
            seen.add(tuple(sorted(before)))
            rules.append((before, _optimal_partition(r, a + s)))
    return rules


def verify_replacement_rules(table: RankTable, r: int) -> VerificationReport:
    """product(after) > product(before), exactly, for every rule."""
    t = 3
    report = VerificationReport(name=f"replacement-rules r={r}")
    for before, after in replacement_rules(r):
        pb = product_over_partition(table, r, t, before)
        pa = product_over_partition(table, r, t, after)
        if sum(before) != sum(after) or pa <= pb:
            report.mismatches.append((before, after, pb, pa))
        report.checked += 1
    return report


def verify_small_tables(table: RankTable, r: int) -> VerificationReport:
    """Dynamic program against the frozen golden column (max value and
    complete optima) over the tabulated range."""
    column = max_column(r)
    top = max(column)
    report = VerificationReport(name=f"small-table r={r}")
    entries = max_table(table, r, 3, top)
    for n, (value, optima) in sorted(column.items()):
        entry = entries[n]
        if entry.value != value or entry.optima != optima or entry.truncated:
            report.mismatches.append(
                (n, value, optima, entry.value, entry.optima))
        report.checked += 1
    return report


def _closure_mod2(start: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Closure of a partition under swapping (2,2) <-> (4) and
    (2,2,2) <-> (6), both directions."""
    swaps = [((2, 2), (4,)), ((4,), (2, 2)),
             ((2, 2, 2), (6,)), ((6,), (2, 2, 2))]
    first = tuple(sorted(start, reverse=True))
    seen = {first}
    frontier = [first]
    while frontier:
        cur = Counter(frontier.pop())
        for before, after in swaps:
            need = Counter(before)
            if all(cur[k] >= v for k, v in need.items()):
                nxt = cur - need + Counter(after)
                parts = tuple(sorted(nxt.elements(), reverse=True))
                if parts not in seen:
                    seen.add(parts)
                    frontier.append(parts)
    return seen


CONJECTURE_MOD2_START = {0: 6, 1: 8}


def conjecture_max_mod2(table: RankTable, r: int, n_hi: int,
                        n_lo: int | None = None) -> VerificationReport:
    """Exploratory t = 2 analogue of the closed forms; never raises on
    a mismatch, only reports it.

    r = 0: period-3 forms with unique optima built from parts
    {3, 5, 7}.  r = 1: powers of 2 (with a 9 absorbing odd n), optima
    equal to the substitution closure of the all-2s form."""
    if r not in (0, 1):
        raise ValueError("the t = 2 conjectures cover r in {0, 1}")
    lo = CONJECTURE_MOD2_START[r] if n_lo is None else n_lo
    lo = max(lo, CONJECTURE_MOD2_START[r])
    f = _count_row(table, r, 2, min(9, n_hi))
    report = VerificationReport(name=f"max-mod2 r={r}")
    entries = max_table(table, r, 2, n_hi, optima_cap=None)
    for n in range(lo, n_hi + 1):
        if r == 0:
            m = n % 3
            if m == 0:
                value, parts = f[3] ** (n // 3), (3,) * (n // 3)
            elif m == 1:
                value = f[7] * f[3] ** ((n - 7) // 3)
                parts = (7,) + (3,) * ((n - 7) // 3)
            else:
                value = f[5] * f[3] ** ((n - 5) // 3)
                parts = (5,) + (3,) * ((n - 5) // 3)
            expected_optima = (parts,)
            expected_value = value
        else:
            if n % 2 == 0:
                expected_value = f[2] ** (n // 2)
                canonical = (2,) * (n // 2)
            else:
                expected_value = f[9] * f[2] ** ((n - 9) // 2)
                canonical = (9,) + (2,) * ((n - 9) // 2)
            expected_optima = tuple(sorted(_closure_mod2(canonical)))
        entry = entries[n]
        if entry.value != expected_value or entry.optima != expected_optima:
            report.mismatches.append(
                (n, expected_value, entry.value,
                 len(expected_optima), len(entry.optima)))
        report.checked += 1
    return report
