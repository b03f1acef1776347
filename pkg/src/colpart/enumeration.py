"""Exhaustive generators, refined count tables and sweep verifiers.

Every generator here works directly from the family definitions by
backtracking over parts in decreasing order; none of them calls the
bijections, so comparing their outputs against the bijections is a real
test.
"""

from __future__ import annotations

import bisect
import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .core import (
    PRIMARY,
    QUATERNARY,
    SECONDARY,
    TEN_COLORS,
    ColoredPart,
    gg,
    lex_gt,
    tri_gt,
)
from .partitions import Family, is_forbidden_triple, stats
from .quaternary import ONE_A, QuaternaryDecomposition

Partition = tuple[ColoredPart, ...]


class CountTable(Counter):
    """Counts keyed by ``(u, v, w, t, n)``."""

    @classmethod
    def of(cls, partitions: Iterable[Sequence[ColoredPart]]) -> CountTable:
        return cls(stats(p).key for p in partitions)

    def total(self) -> int:  # Counter.total is 3.10+
        return sum(self.values())

    def restrict(self, colors: str) -> CountTable:
        """Keep keys whose exponents vanish outside ``colors`` (e.g. ``"abc"`` drops d)."""
        idx = [i for i, c in enumerate("abcd") if c not in colors]
        return CountTable({k: v for k, v in self.items() if all(k[i] == 0 for i in idx)})

    def to_csv(self, fh=None) -> str | None:
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["u", "v", "w", "t", "n", "count"])
        for key in sorted(self):
            w.writerow([*key, self[key]])
        return None if fh is not None else out.getvalue()


# --- generic backtracking ---------------------------------------------------


def _candidates(max_size: int, colors: Iterable[str]) -> list[ColoredPart]:
    parts = [
        ColoredPart(k, c)
        for k in range(1, max_size + 1)
        for c in colors
        if not (len(c) == 2 and k < 2)
    ]
    parts.sort(reverse=True)
    return parts


def sequences(
    budget: int,
    candidates: Sequence[ColoredPart],
    pair_ok: Callable[[ColoredPart, ColoredPart], bool],
    triple_ok: Callable[[ColoredPart, ColoredPart, ColoredPart], bool] | None = None,
    weight: Callable[[ColoredPart], int] | None = None,
) -> Iterator[Partition]:
    """All sequences of ``candidates`` with total weight ``budget``.

    ``candidates`` must be sorted in decreasing order and ``weight`` must be
    positive and non-increasing along that order; ``pair_ok`` must imply that
    the second part comes later in the list.
    """
    weights = [weight(p) if weight else p[0] for p in candidates]
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    neg = [-w for w in weights]
    n = len(candidates)
    prefix: list[ColoredPart] = []

    def rec(remaining: int, start: int) -> Iterator[Partition]:
        j = max(start, bisect.bisect_left(neg, -remaining))
        last = prefix[-1] if prefix else None
        before = prefix[-2] if len(prefix) > 1 else None
        for j in range(j, n):
            y = candidates[j]
            if last is not None and not pair_ok(last, y):
                continue
            if before is not None and triple_ok is not None and not triple_ok(before, last, y):
                continue
            left = remaining - weights[j]
            prefix.append(y)
            if left == 0:
                yield tuple(prefix)
            else:
                yield from rec(left, j + 1)
            prefix.pop()

    if budget == 0:
        yield ()
        return
    yield from rec(budget, 0)


def _not_forbidden(x, y, z) -> bool:
    return not is_forbidden_triple(x, y, z)


# --- family generators -------------------------------------------------------


def gen_O(n: int) -> Iterator[Partition]:
    """Primary parts, distinct within each color, ordered by ``lex_gt``."""
    return sequences(n, _candidates(n, PRIMARY), lex_gt)


def gen_E(n: int) -> Iterator[Partition]:
    return sequences(n, _candidates(n, TEN_COLORS), gg)


def gen_E1(n: int) -> Iterator[Partition]:
    return sequences(n, _candidates(n, TEN_COLORS), gg, _not_forbidden)


def gen_E2(n: int) -> Iterator[Partition]:
    return sequences(n, _candidates(n, TEN_COLORS), tri_gt)


def gen_family(family: Family | str, n: int) -> Iterator[Partition]:
    return {Family.O: gen_O, Family.E: gen_E, Family.E1: gen_E1, Family.E2: gen_E2}[Family(family)](n)


def _quat_lists(total: int, below: int | None = None) -> Iterator[tuple[int, ...]]:
    """Quaternary sizes >= 4, pairwise gaps >= 4, decreasing, summing to ``total``."""
    if total == 0:
        yield ()
        return
    top = total if below is None else min(total, below - 4)
    for k in range(top, 3, -1):
        for rest in _quat_lists(total - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _e2_list(n: int) -> tuple[Partition, ...]:
    return tuple(gen_E2(n))


def gen_quaternary(n: int) -> Iterator[QuaternaryDecomposition]:
    """Quaternary decompositions of size ``n`` built from their defining conditions."""
    for r in range(n, -1, -1):
        residuals = _e2_list(r)
        for quats in _quat_lists(n - r):
            for res in residuals:
                if quats and quats[-1] < 4 + 2 * len(res) - (ONE_A in res):
                    continue
                yield QuaternaryDecomposition(tuple(ColoredPart(k, QUATERNARY) for k in quats), res)


def count_A(n: int) -> CountTable:
    return CountTable.of(gen_O(n))


def count_B(n: int) -> CountTable:
    return CountTable.of(gen_E1(n))


def count_quaternary(n: int) -> CountTable:
    return CountTable(qd.stats().key for qd in gen_quaternary(n))


# --- classical two- and three-color tables -------------------------------------

# minimal differences, rows/cols a b ab
SCHUR_TABLE = {
    ("a", "a"): 1, ("a", "b"): 2, ("a", "ab"): 1,
    ("b", "a"): 1, ("b", "b"): 1, ("b", "ab"): 1,
    ("ab", "a"): 2, ("ab", "b"): 2, ("ab", "ab"): 2,
}

# minimal differences, rows/cols a b c ab ac bc
_G_COLS = ("a", "b", "c", "ab", "ac", "bc")
GOLLNITZ_TABLE = {
    (r, c): int(v)
    for r, row in zip(_G_COLS, "122112 112111 111111 222222 222122 122112".split())
    for c, v in zip(_G_COLS, row)
}


def gen_table_ordered(n: int, table: dict[tuple[str, str], int]) -> Iterator[Partition]:
    """Partitions whose consecutive parts satisfy a minimal-difference table."""
    colors = sorted({c for c, _ in table})

    def ok(x, y):
        return x[0] - y[0] >= table[x[1], y[1]]

    # every entry is at least 1, so sizes strictly decrease
    return sequences(n, _candidates(n, colors), lambda x, y: x > y and ok(x, y))


# --- sweep verifiers ------------------------------------------------------------


@dataclass
class SweepReport:
    name: str
    passed: bool = True
    totals: dict[int, int] = field(default_factory=dict)
    mismatch: tuple | None = None

    def summary(self) -> str:
        lines = [f"{self.name}: {'pass' if self.passed else 'FAIL'}"]
        lines += [f"  n={n}: {t}" for n, t in sorted(self.totals.items())]
        if self.mismatch:
            n, key, left, right = self.mismatch
            lines.append(f"  first mismatch at n={n}, key={key}: {left} != {right}")
        return "\n".join(lines)


def _compare(report: SweepReport, n: int, left: CountTable, right: CountTable) -> bool:
    for key in sorted(set(left) | set(right)):
        if left[key] != right[key]:
            report.passed = False
            report.mismatch = (n, key, left[key], right[key])
            return False
    return True


SPECIALIZATIONS = {None: "abcd", "t0": "abc", "wt0": "ab"}


def verify_a_equals_b(max_n: int, specialize: str | None = None) -> SweepReport:
    """``count_A(n) == count_B(n)`` keywise for ``n <= max_n``.

    With ``specialize="t0"`` (resp. ``"wt0"``) only keys with ``t = 0`` (resp.
    ``w = t = 0``) are compared, and the restricted E1 partitions are also
    compared as sets with the classical three-color (two-color) table family.
    """
    colors = SPECIALIZATIONS[specialize]
    report = SweepReport(f"theorem-A=B[{colors}]")
    for n in range(max_n + 1):
        a = count_A(n).restrict(colors)
        if specialize is None:
            b = count_B(n)
        else:
            e1 = [p for p in gen_E1(n) if all(set(c) <= set(colors) for _, c in p)]
            table = GOLLNITZ_TABLE if specialize == "t0" else SCHUR_TABLE
            classical = set(gen_table_ordered(n, table))
            if classical != set(e1):
                report.passed = False
                report.mismatch = (n, "classical-table set", len(classical), len(e1))
                return report
            b = CountTable.of(e1)
        report.totals[n] = a.total()
        if not _compare(report, n, a, b):
            return report
    return report


def verify_b_equals_quaternary(max_n: int) -> SweepReport:
    report = SweepReport("theorem-B=quaternary")
    for n in range(max_n + 1):
        b, q = count_B(n), count_quaternary(n)
        report.totals[n] = b.total()
        if not _compare(report, n, b, q):
            return report
    return report


def check_phi_psi(n: int) -> tuple[int, str | None]:
    """Check phi is a stats-preserving bijection O(n) -> E1(n) with psi as inverse.

    Returns the number of partitions checked and the first problem found.
    """
    from .bressoud import phi, psi

    e1 = set(gen_E1(n))
    images = set()
    count = 0
    for lam in gen_O(n):
        count += 1
        nu, _ = phi(lam)
        if nu not in e1:
            return count, f"phi({lam}) = {nu} is not an E1 partition of {n}"
        if stats(nu) != stats(lam):
            return count, f"phi changed stats of {lam}"
        if psi(nu)[0] != lam:
            return count, f"psi(phi({lam})) != input"
        images.add(nu)
    if images != e1:
        return count, f"phi image misses {len(e1 - images)} E1 partitions of {n}"
    for nu in e1:
        if phi(psi(nu)[0])[0] != nu:
            return count, f"phi(psi({nu})) != input"
    return count, None


def check_quaternary_map(n: int) -> tuple[int, str | None]:
    """Check to_quaternary is a stats-preserving bijection E1(n) -> quaternary(n)."""
    from .quaternary import from_quaternary, to_quaternary

    target = set(gen_quaternary(n))
    images = set()
    count = 0
    for nu in gen_E1(n):
        count += 1
        qd = to_quaternary(nu)
        problems = qd.problems()
        if problems:
            return count, f"to_quaternary({nu}): {problems[0]}"
        if qd.stats() != stats(nu):
            return count, f"to_quaternary changed stats of {nu}"
        if from_quaternary(qd) != nu:
            return count, f"from_quaternary(to_quaternary({nu})) != input"
        images.add(qd)
    if images != target:
        return count, f"image differs from the {len(target)} quaternary partitions of {n}"
    return count, None


# --- dilation and the congruence corollary ----------------------------------------

DILATION = 12
WEIGHT = {"a": 8, "b": 4, "c": 2, "d": 1}
WEIGHT.update({p + q: WEIGHT[p] + WEIGHT[q] for p, q in SECONDARY})
_COLOR_OF_WEIGHT = {w: c for c, w in WEIGHT.items()}
FIRST_KIND_RESIDUES = frozenset(-WEIGHT[c] % DILATION for c in PRIMARY)  # {4, 8, 10, 11}


def dilate(part: ColoredPart) -> int:
    """``k_p -> 12k - weight(p)``; the dilated value must stay a positive part."""
    size, color = part
    if color == QUATERNARY:
        raise ValueError("quaternary parts have no dilation in the ten-color setting")
    value = DILATION * size - WEIGHT[color]
    if value <= 0:
        raise ValueError(f"{part} dilates to {value}, not a positive part")
    return value


def undilate(value: int) -> ColoredPart | None:
    """The ten-color part dilating to ``value``, or None if there is none."""
    w = -value % DILATION or DILATION
    color = _COLOR_OF_WEIGHT.get(w)
    if color is None:
        return None
    size = (value + w) // DILATION
    if size < 1 or (len(color) == 2 and size < 2):
        return None
    return ColoredPart(size, color)


def is_first_kind(parts: Sequence[int]) -> bool:
    return (len(set(parts)) == len(parts)
            and all(p > 0 and p % DILATION in FIRST_KIND_RESIDUES for p in parts))


def second_kind_part_ok(v: int) -> bool:
    return v > 0 and v % 12 not in (1, 5) and v not in (2, 3, 6, 7, 9)


def is_second_kind(parts: Sequence[int]) -> bool:
    """The congruence-side gap rules, transcribed literally.

    Consecutive gaps exceed 12 except: a gap of 9 needs the larger part to be
    +-3 mod 12 and a drop of at least 24 across two steps; a gap of 12 needs
    the larger part to be 4, 8, 10 or 11 mod 12.  ``(27, 18, 4)`` is allowed.
    """
    parts = tuple(parts)
    if not all(second_kind_part_ok(v) for v in parts):
        return False
    for i in range(len(parts) - 1):
        x, gap = parts[i], parts[i] - parts[i + 1]
        if gap > 12:
            continue
        if gap == 9 and x % 12 in (3, 9):
            if i + 2 >= len(parts) or x - parts[i + 2] >= 24 or parts[i:i + 3] == (27, 18, 4):
                continue
        if gap == 12 and x % 12 in FIRST_KIND_RESIDUES:
            continue
        return False
    return True


def _int_sequences(total: int, values: Sequence[int], ok: Callable[[tuple], bool]) -> Iterator[tuple[int, ...]]:
    values = sorted(values, reverse=True)

    def rec(prefix, remaining, start):
        if remaining == 0:
            if ok(prefix):
                yield prefix
            return
        for j in range(start, len(values)):
            v = values[j]
            if v <= remaining and ok(prefix + (v,)):
                yield from rec(prefix + (v,), remaining - v, j + 1)

    yield from rec((), total, 0)


def first_kind(n: int) -> list[tuple[int, ...]]:
    values = [v for v in range(1, n + 1) if v % DILATION in FIRST_KIND_RESIDUES]
    return list(_int_sequences(n, values, lambda p: True))


def second_kind_rule(n: int) -> list[tuple[int, ...]]:
    values = [v for v in range(1, n + 1) if second_kind_part_ok(v)]
    # every prefix of a valid sequence is valid, so the rule prunes the search directly
    return list(_int_sequences(n, values, is_second_kind))


def second_kind_dilated(n: int) -> list[tuple[int, ...]]:
    """Dilation image of E1: all E1 partitions whose dilated parts sum to ``n``."""
    cands = [p for p in _candidates(n // DILATION + 2, TEN_COLORS) if DILATION * p[0] - WEIGHT[p[1]] > 0]
    return [tuple(dilate(p) for p in seq) for seq in sequences(n, cands, gg, _not_forbidden, dilate)]


@dataclass
class CorollaryReport:
    n: int
    first: list[tuple[int, ...]]
    second_rule: list[tuple[int, ...]]
    second_dilated: list[tuple[int, ...]]

    @property
    def passed(self) -> bool:
        return (set(self.second_rule) == set(self.second_dilated)
                and len(self.first) == len(self.second_rule))

    def summary(self) -> str:
        lines = [f"n={self.n}: {len(self.first)} = {len(self.second_rule)}"
                 + ("" if self.passed else "  FAIL")]
        lines.append("first kind:  " + " ".join(_fmt(p) for p in sorted(self.first, reverse=True)))
        lines.append("second kind: " + " ".join(_fmt(p) for p in sorted(self.second_rule, reverse=True)))
        only_rule = set(self.second_rule) - set(self.second_dilated)
        only_dil = set(self.second_dilated) - set(self.second_rule)
        if only_rule or only_dil:
            lines.append("rule only: " + " ".join(_fmt(p) for p in sorted(only_rule)))
            lines.append("dilation only: " + " ".join(_fmt(p) for p in sorted(only_dil)))
        return "\n".join(lines)


def _fmt(p: Sequence[int]) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def verify_corollary(n: int) -> CorollaryReport:
    return CorollaryReport(n, first_kind(n), second_kind_rule(n), second_kind_dilated(n))


# --- counting sweep for large dilated sizes ---------------------------------------

# Both second-kind descriptions constrain a triple (p, x, y) only when p - x == 9,
# so the DP state keeps the exact previous gap below GAP_CAP and lumps the rest.
GAP_CAP = 10


def _e1_part(v):
    return undilate(v) is not None


def _e1_pair(x, y):
    return gg(undilate(x), undilate(y))


def _e1_triple(p, x, y):
    return not is_forbidden_triple(undilate(p), undilate(x), undilate(y))


def _rule_pair(x, y):
    return is_second_kind((x, y))


def _rule_triple(p, x, y):
    return is_second_kind((p, x, y))


def count_sequences(max_n, part_ok, pair_ok, triple_ok) -> np.ndarray:
    """Number of decreasing integer sequences of each total ``0..max_n``.

    Sequences use parts with ``part_ok``, adjacent pairs with ``pair_ok`` and
    triples with ``triple_ok``; triples are only consulted when the first gap
    is below :data:`GAP_CAP`.
    """
    values = [v for v in range(1, max_n + 1) if part_ok(v)]
    totals = np.zeros(max_n + 1, dtype=np.int64)
    totals[0] = 1
    states: dict[tuple[int, int], np.ndarray] = {}
    for x in reversed(values):
        seed = states.setdefault((x, GAP_CAP), np.zeros(max_n + 1, dtype=np.int64))
        seed[x] += 1
        for g in range(1, GAP_CAP + 1):
            f = states.pop((x, g), None)
            if f is None:
                continue
            totals += f
            for y in values:
                if y >= x or x + y > max_n:
                    break
                if not pair_ok(x, y):
                    continue
                if g < GAP_CAP and not triple_ok(x + g, x, y):
                    continue
                key = (y, min(x - y, GAP_CAP))
                tgt = states.get(key)
                if tgt is None:
                    tgt = states[key] = np.zeros(max_n + 1, dtype=np.int64)
                tgt[y:] += f[:max_n + 1 - y]
    return totals


def first_kind_counts(max_n: int) -> np.ndarray:
    c = np.zeros(max_n + 1, dtype=np.int64)
    c[0] = 1
    for m in range(1, max_n + 1):
        if m % DILATION in FIRST_KIND_RESIDUES:
            c[m:] += c[:max_n + 1 - m].copy()
    return c


@dataclass
class CorollarySweep:
    max_n: int
    first: np.ndarray
    rule: np.ndarray
    dilated: np.ndarray
    both: np.ndarray

    def failures(self) -> list[int]:
        return [n for n in range(self.max_n + 1)
                if not (self.first[n] == self.rule[n] == self.dilated[n] == self.both[n])]

    @property
    def passed(self) -> bool:
        return not self.failures()


def corollary_sweep(max_n: int = 600) -> CorollarySweep:
    """Counts of both kinds for every dilated size up to ``max_n``.

    ``both`` counts sequences satisfying the rule and lying in the dilation
    image, so ``rule == dilated == both`` means the two descriptions define
    the same set at each size.
    """
    rule = count_sequences(max_n, second_kind_part_ok, _rule_pair, _rule_triple)
    dil = count_sequences(max_n, _e1_part, _e1_pair, _e1_triple)
    both = count_sequences(
        max_n,
        lambda v: second_kind_part_ok(v) and _e1_part(v),
        lambda x, y: _rule_pair(x, y) and _e1_pair(x, y),
        lambda p, x, y: _rule_triple(p, x, y) and _e1_triple(p, x, y),
    )
    return CorollarySweep(max_n, first_kind_counts(max_n), rule, dil, both)
