"""Bijection between E1 partitions and quaternary decompositions.

Adjacent pairs ``((k+1)_ad, k_bc)`` and ``(k_cd, k_ab)`` of an E1 partition
are the only places where the relaxed order is weaker than the strict one.
Each such pair is summed into one ``abcd`` part; the pair is moved to the
front of the partition, gaining 1 per member for every part it passes while
that part loses 2.  What remains is an E2 partition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import QUATERNARY, ColoredPart, format_parts, parse_parts, tri_gt
from .partitions import Family, stats, validate

ONE_A = ColoredPart(1, "a")

Row = tuple  # one part, or a (big, small) pattern pair shown on one line


def is_pattern(x: ColoredPart, y: ColoredPart) -> bool:
    if x[1] == "ad" and y[1] == "bc":
        return x[0] == y[0] + 1
    if x[1] == "cd" and y[1] == "ab":
        return x[0] == y[0]
    return False


def find_patterns(parts: Sequence[ColoredPart]) -> list[int]:
    """Start indices of adjacent pattern pairs, left to right."""
    return [i for i in range(len(parts) - 1) if is_pattern(parts[i], parts[i + 1])]


def split_quat(quat: ColoredPart) -> tuple[ColoredPart, ColoredPart]:
    """``2k -> (k_cd, k_ab)`` and ``2k+1 -> ((k+1)_ad, k_bc)``."""
    size, color = quat
    if color != QUATERNARY:
        raise ValueError(f"{quat} is not a quaternary part")
    if size < 4:
        raise ValueError(f"quaternary part {quat} is below 4 and would split into a size-1 secondary part")
    k, odd = divmod(size, 2)
    if odd:
        return ColoredPart(k + 1, "ad"), ColoredPart(k, "bc")
    return ColoredPart(k, "cd"), ColoredPart(k, "ab")


def merge_pair(big: ColoredPart, small: ColoredPart) -> ColoredPart:
    if not is_pattern(big, small):
        raise ValueError(f"({big}, {small}) is not a pattern pair")
    return ColoredPart(big[0] + small[0], QUATERNARY)


@dataclass(frozen=True)
class QuaternaryDecomposition:
    quats: tuple[ColoredPart, ...]
    residual: tuple[ColoredPart, ...]

    @classmethod
    def of(cls, quats: Sequence[int | ColoredPart], residual: Sequence[ColoredPart]) -> QuaternaryDecomposition:
        qs = tuple(q if isinstance(q, ColoredPart) else ColoredPart(q, QUATERNARY) for q in quats)
        return cls(qs, tuple(residual))

    @property
    def size(self) -> int:
        return sum(q[0] for q in self.quats) + sum(p[0] for p in self.residual)

    def stats(self):
        return stats(self.quats + self.residual)

    def problems(self) -> list[str]:
        """Invariant violations, empty for a valid decomposition."""
        out = []
        for q in self.quats:
            if q[1] != QUATERNARY:
                out.append(f"{q} is not quaternary")
            elif q[0] < 4:
                out.append(f"{q} is below 4")
        for i in range(len(self.quats) - 1):
            if self.quats[i][0] - self.quats[i + 1][0] < 4:
                out.append(f"quaternary parts {self.quats[i]}, {self.quats[i + 1]} differ by less than 4")
        check = validate(self.residual, Family.E2)
        if not check:
            out.append(f"residual: {check.describe()}")
        if self.quats:
            s = len(self.residual)
            bound = 4 + 2 * s - (ONE_A in self.residual)
            if self.quats[-1][0] < bound:
                out.append(f"smallest quaternary part {self.quats[-1]} is below {bound}")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def format(self) -> str:
        return f"{format_parts(self.quats)} | {format_parts(self.residual)}"

    @classmethod
    def parse(cls, text: str) -> QuaternaryDecomposition:
        if "|" not in text:
            raise ValueError("expected 'QUATS | RESIDUAL'")
        left, right = text.split("|", 1)
        quats = parse_parts(left)
        for q in quats:
            if q[1] != QUATERNARY:
                raise ValueError(f"{q} on the left of '|' is not quaternary")
        return cls(quats, parse_parts(right))

    def to_obj(self) -> dict:
        return {
            "quats": [q[0] for q in self.quats],
            "residual": {"parts": [{"size": p.size, "color": p.color} for p in self.residual]},
        }

    @classmethod
    def from_obj(cls, obj: dict) -> QuaternaryDecomposition:
        residual = tuple(ColoredPart(int(d["size"]), d["color"]) for d in obj["residual"]["parts"])
        return cls.of([int(k) for k in obj["quats"]], residual)

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    @classmethod
    def from_json(cls, text: str) -> QuaternaryDecomposition:
        return cls.from_obj(json.loads(text))


def _check_input(nu: Sequence[ColoredPart]) -> tuple[ColoredPart, ...]:
    nu = tuple(nu)
    check = validate(nu, Family.E1)
    if not check:
        raise ValueError(f"input is not in E1: {check.describe()}")
    starts = find_patterns(nu)
    for a, b in zip(starts, starts[1:]):
        if b - a < 2:
            raise AssertionError(f"overlapping pattern pairs at {a} and {b} in {nu}")
    return nu


def to_quaternary(nu: Sequence[ColoredPart]) -> QuaternaryDecomposition:
    nu = _check_input(nu)
    starts = set(find_patterns(nu))
    n_patterns = len(starts)
    quats, residual = [], []
    seen_patterns = 0
    i = 0
    while i < len(nu):
        if i in starts:
            left = len(residual)
            quats.append(ColoredPart(nu[i][0] + nu[i + 1][0] + 2 * left, QUATERNARY))
            seen_patterns += 1
            i += 2
        else:
            residual.append(nu[i] - 2 * (n_patterns - seen_patterns))
            i += 1
    return QuaternaryDecomposition(tuple(quats), tuple(residual))


def _rows(items) -> tuple[Row, ...]:
    return tuple((it[1],) if it[0] != "pair" else (it[1], it[2]) for it in items)


def to_quaternary_bubbling(nu: Sequence[ColoredPart]) -> tuple[QuaternaryDecomposition, list[tuple[Row, ...]]]:
    """Move each pattern pair to the front one part at a time (leftmost move first).

    Returns the decomposition and every displayed state, starting with the
    input and its grouping into pairs.
    """
    nu = _check_input(nu)
    starts = set(find_patterns(nu))
    items = []
    i = 0
    while i < len(nu):
        if i in starts:
            items.append(("pair", nu[i], nu[i + 1]))
            i += 2
        else:
            items.append(("part", nu[i]))
            i += 1
    states = [tuple((p,) for p in nu)]
    if starts:
        states.append(_rows(items))
    while True:
        for j in range(len(items) - 1):
            if items[j][0] == "part" and items[j + 1][0] == "pair":
                break
        else:
            break
        _, big, small = items[j + 1]
        items[j:j + 2] = [("pair", big + 1, small + 1), ("part", items[j][1] - 2)]
        states.append(_rows(items))
    quats = tuple(ColoredPart(it[1][0] + it[2][0], QUATERNARY) for it in items if it[0] == "pair")
    residual = tuple(it[1] for it in items if it[0] == "part")
    return QuaternaryDecomposition(quats, residual), states


def _sink(qd: QuaternaryDecomposition, states: list | None):
    problems = qd.problems()
    if problems:
        raise ValueError("invalid quaternary decomposition: " + "; ".join(problems))
    # items: ("pair", k, l) waiting or sinking, ("placed", part) emplaced, ("part", part) residual
    items = [("pair", *split_quat(q)) for q in qd.quats] + [("part", p) for p in qd.residual]
    if states is not None:
        states.append(_rows(items))
    for pos in range(len(qd.quats) - 1, -1, -1):
        while pos + 1 < len(items):
            kind, nxt = items[pos + 1][0], items[pos + 1][1]
            _, k, l = items[pos]
            if kind != "part" or nxt == ONE_A or not tri_gt((nxt[0] + 2, nxt[1]), (k[0] - 1, k[1])):
                break
            items[pos:pos + 2] = [("part", nxt + 2), ("pair", k - 1, l - 1)]
            pos += 1
            if states is not None:
                states.append(_rows(items))
        _, k, l = items[pos]
        items[pos:pos + 1] = [("placed", k), ("placed", l)]
        if states is not None:
            states.append(_rows(items))
    return tuple(it[1] for it in items)


def from_quaternary(qd: QuaternaryDecomposition) -> tuple[ColoredPart, ...]:
    """Inverse of :func:`to_quaternary`, processing quaternary parts smallest first."""
    return _sink(qd, None)


def from_quaternary_chain(qd: QuaternaryDecomposition) -> tuple[tuple[ColoredPart, ...], list[tuple[Row, ...]]]:
    states: list = []
    return _sink(qd, states), states


def format_rows(rows: Sequence[Row]) -> str:
    return ",".join(f"({r[0]},{r[1]})" if len(r) == 2 else str(r[0]) for r in rows)
