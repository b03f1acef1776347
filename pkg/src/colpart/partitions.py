"""Partition families, forbidden patterns and size/color accounting.

A partition is a plain tuple of :class:`~colpart.core.ColoredPart`.  Family
membership is checked on demand by :func:`validate`:

``O``
    primary parts, strictly decreasing under ``lex_gt``;
``E``
    primary or secondary parts, consecutive parts related by ``gg``;
``E1``
    members of ``E`` avoiding the forbidden triples;
``E2``
    primary or secondary parts, consecutive parts related by ``tri_gt``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .core import QUATERNARY, ColoredPart, gg, lex_gt, tri_gt


class Family(str, Enum):
    O = "O"
    E = "E"
    E1 = "E1"
    E2 = "E2"


_RELATION = {Family.O: ("lex_gt", lex_gt), Family.E: ("gg", gg),
             Family.E1: ("gg", gg), Family.E2: ("tri_gt", tri_gt)}


def is_forbidden_triple(x: ColoredPart, y: ColoredPart, z: ColoredPart) -> bool:
    """True for ((k+2)_cd, (k+2)_ab, k_c|k_d) and ((k+2)_ad, (k+1)_bc, k_a), except (3_ad, 2_bc, 1_a)."""
    k = z[0]
    if x[1] == "cd" and y[1] == "ab":
        return z[1] in ("c", "d") and x[0] == y[0] == k + 2
    if x[1] == "ad" and y[1] == "bc" and z[1] == "a":
        return x[0] == k + 2 and y[0] == k + 1 and k != 1
    return False


def detect_forbidden(parts: Sequence[ColoredPart]) -> list[int]:
    return [i for i in range(len(parts) - 2) if is_forbidden_triple(*parts[i:i + 3])]


@dataclass(frozen=True)
class Certificate:
    family: Family
    parts: tuple[ColoredPart, ...]

    def __bool__(self) -> bool:
        return True

    def describe(self) -> str:
        return f"valid {self.family.value}"


@dataclass(frozen=True)
class Violation:
    family: Family
    index: int
    relation: str
    parts: tuple[ColoredPart, ...]

    def __bool__(self) -> bool:
        return False

    def describe(self) -> str:
        shown = ",".join(map(str, self.parts))
        if self.relation == "forbidden":
            return f"forbidden pattern at index {self.index}: ({shown})"
        if self.relation == "color":
            return f"part {shown} at index {self.index} not allowed in {self.family.value}"
        return f"{self.relation} fails at index {self.index}: ({shown})"


def validate(parts: Sequence[ColoredPart], family: Family | str) -> Certificate | Violation:
    """Check membership of ``parts`` in ``family``.

    Returns a truthy :class:`Certificate` or a falsy :class:`Violation`
    naming the first offending index.  Never raises on bad input partitions.
    """
    family = Family(family)
    parts = tuple(parts)
    for i, p in enumerate(parts):
        if p[1] == QUATERNARY or (family is Family.O and len(p[1]) != 1):
            return Violation(family, i, "color", (p,))
    name, rel = _RELATION[family]
    for i in range(len(parts) - 1):
        if not rel(parts[i], parts[i + 1]):
            return Violation(family, i, name, parts[i:i + 2])
    if family is Family.E1:
        bad = detect_forbidden(parts)
        if bad:
            i = bad[0]
            return Violation(family, i, "forbidden", parts[i:i + 3])
    return Certificate(family, parts)


def is_member(parts: Sequence[ColoredPart], family: Family | str) -> bool:
    return bool(validate(parts, family))


class PartitionStats(NamedTuple):
    n: int
    u: int
    v: int
    w: int
    t: int

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        """Count-table key ``(u, v, w, t, n)``."""
        return self.u, self.v, self.w, self.t, self.n


def stats(parts: Iterable[ColoredPart]) -> PartitionStats:
    """Total size and multiplicity of each primary color in the color product."""
    n = u = v = w = t = 0
    for size, color in parts:
        n += size
        u += "a" in color
        v += "b" in color
        w += "c" in color
        t += "d" in color
    return PartitionStats(n, u, v, w, t)


def color_product(parts: Iterable[ColoredPart]) -> tuple[int, int, int, int]:
    s = stats(parts)
    return s.u, s.v, s.w, s.t


# --- JSON -----------------------------------------------------------------


def parts_to_obj(parts: Iterable[ColoredPart]) -> dict:
    return {"parts": [{"size": p.size, "color": p.color} for p in parts]}


def parts_from_obj(obj: dict) -> tuple[ColoredPart, ...]:
    return tuple(ColoredPart(int(d["size"]), str(d["color"])) for d in obj["parts"])


def to_json(parts: Iterable[ColoredPart]) -> str:
    return json.dumps(parts_to_obj(parts))


def from_json(text: str) -> tuple[ColoredPart, ...]:
    return parts_from_obj(json.loads(text))
