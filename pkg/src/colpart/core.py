"""Colors, colored parts, the three order relations and part notation.

Parts are colored with one of eleven tags: four primary colors ``a b c d``,
six secondary colors (products of two distinct primaries) and the single
quaternary color ``abcd``.  The ten non-quaternary colors are totally
ordered by :data:`RANK`; every relation below is derived from that rank and
a small indicator formula.  The two minimal-difference tables are kept as
literal data as well, so the tests can cross-check one against the other.
"""

from __future__ import annotations

import re
from operator import itemgetter
from typing import Iterable, Sequence

PRIMARY = ("a", "b", "c", "d")
SECONDARY = ("ab", "ac", "ad", "bc", "bd", "cd")
QUATERNARY = "abcd"
COLORS = PRIMARY + SECONDARY + (QUATERNARY,)

# ab < ac < ad < a < bc < bd < b < cd < c < d
RANK = {"ab": 0, "ac": 1, "ad": 2, "a": 3, "bc": 4, "bd": 5, "b": 6, "cd": 7, "c": 8, "d": 9}
TEN_COLORS = tuple(sorted(RANK, key=RANK.__getitem__))

# pairs where the relaxed table is one below the strict one
RELAXED_PAIRS = frozenset({("cd", "ab"), ("ad", "bc")})

MAX_SIZE = 2**63 - 1


def _table(rows: str) -> dict[tuple[str, str], int]:
    out = {}
    for row_color, line in zip(TEN_COLORS, rows.split()):
        for col_color, ch in zip(TEN_COLORS, line):
            out[row_color, col_color] = int(ch)
    return out


# rows/columns in the order ab ac ad a bc bd b cd c d
AAB_TABLE = _table("""
    2222222222
    1222222222
    1122222222
    1111222222
    1111222222
    1111122222
    1111111222
    1111111222
    1111111112
    1111111111
""")

RELAXED_TABLE = _table("""
    2222222222
    1222222222
    1122122222
    1111222222
    1111222222
    1111122222
    1111111222
    0111111222
    1111111112
    1111111111
""")

TABLES = {"AAB": AAB_TABLE, "relaxed": RELAXED_TABLE}


def chi(condition: bool) -> int:
    return 1 if condition else 0


def is_primary(color: str) -> bool:
    return len(color) == 1


def is_secondary(color: str) -> bool:
    return len(color) == 2


def color_rank(color: str) -> int:
    if color == QUATERNARY:
        raise ValueError("quaternary color has no rank in the ten-color order")
    try:
        return RANK[color]
    except KeyError:
        raise ValueError(f"unknown color {color!r}") from None


class ColoredPart(tuple):
    """An immutable ``(size, color)`` pair.

    Secondary parts must have size at least 2.  Arithmetic with an integer
    shifts the size and keeps the color.  Comparison operators follow the
    lexicographic order on (size, color rank), with ``abcd`` placed below
    ``ab`` at equal size.
    """

    __slots__ = ()

    def __new__(cls, size: int, color: str) -> ColoredPart:
        if color not in _COLOR_SET:
            raise ValueError(f"unknown color {color!r}")
        if not isinstance(size, int) or isinstance(size, bool):
            raise TypeError(f"part size must be an int, got {type(size).__name__}")
        if size < 1:
            raise ValueError(f"part size must be positive, got {size}")
        if size > MAX_SIZE:
            raise OverflowError(f"part size {size} exceeds 64-bit range")
        if len(color) == 2 and size < 2:
            raise ValueError(f"secondary part {size}_{color} must have size greater than 1")
        return tuple.__new__(cls, (size, color))

    size = property(itemgetter(0))
    color = property(itemgetter(1))

    def __add__(self, k: int) -> ColoredPart:
        return ColoredPart(self[0] + k, self[1])

    def __sub__(self, k: int) -> ColoredPart:
        return ColoredPart(self[0] - k, self[1])

    def _key(self) -> tuple[int, int]:
        return self[0], _ORDER_KEY[self[1]]

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __repr__(self) -> str:
        return f"{self[0]}_{self[1]}"

    __str__ = __repr__

    def __getnewargs__(self):
        return tuple(self)


_COLOR_SET = frozenset(COLORS)
_ORDER_KEY = dict(RANK, abcd=-1)


def _check_ranked(*parts: ColoredPart) -> None:
    for p in parts:
        if p[1] == QUATERNARY:
            raise ValueError("quaternary color has no rank in the ten-color order")


def lex_gt(x: ColoredPart, y: ColoredPart) -> bool:
    """The strict lexicographic order: ``k_p > l_q`` iff ``k - l >= chi(p <= q)``."""
    _check_ranked(x, y)
    return x[0] - y[0] >= chi(RANK[x[1]] <= RANK[y[1]])


def tri_gt(x: ColoredPart, y: ColoredPart) -> bool:
    """Minimal-difference order of the eleven-color (strict) table."""
    _check_ranked(x, y)
    rx, ry = RANK[x[1]], RANK[y[1]]
    if len(x[1]) == 1 or len(y[1]) == 1:
        need = 1 + chi(rx < ry)
    else:
        need = 1 + chi(rx <= ry)
    return x[0] - y[0] >= need


def gg(x: ColoredPart, y: ColoredPart) -> bool:
    """Relaxed order: ``tri_gt`` except at (cd, ab) and (ad, bc), where ``lex_gt`` suffices."""
    if (x[1], y[1]) in RELAXED_PAIRS:
        return lex_gt(x, y)
    return tri_gt(x, y)


def delta(p: str, q: str, table: str = "relaxed") -> int:
    if p == QUATERNARY or q == QUATERNARY:
        raise ValueError("quaternary color has no entry in the difference tables")
    try:
        return TABLES[table][p, q]
    except KeyError:
        raise ValueError(f"unknown table {table!r} or colors {p!r}, {q!r}") from None


def halves(part: ColoredPart) -> tuple[ColoredPart, ColoredPart]:
    """Split a secondary part into its upper and lower halves ``(alpha, beta)``."""
    size, color = part
    if len(color) != 2:
        raise ValueError(f"{part} is not a secondary part")
    p, q = color
    k, odd = divmod(size, 2)
    if odd:
        return ColoredPart(k + 1, p), ColoredPart(k, q)
    return ColoredPart(k, q), ColoredPart(k, p)


def alpha(part: ColoredPart) -> ColoredPart:
    return halves(part)[0]


def beta(part: ColoredPart) -> ColoredPart:
    return halves(part)[1]


def is_troublesome(x: ColoredPart, y: ColoredPart) -> bool:
    """Two primary parts ordered by ``lex_gt`` but not by ``gg``."""
    return (
        len(x[1]) == 1
        and len(y[1]) == 1
        and x[0] - y[0] == chi(RANK[x[1]] < RANK[y[1]])
        and x[1] != y[1]
    )


def combine(x: ColoredPart, y: ColoredPart) -> ColoredPart:
    """Merge a troublesome pair into the secondary part whose halves are ``x`` and ``y``."""
    if not (
        is_primary(x.color)
        and is_primary(y.color)
        and x.color != y.color
        and lex_gt(x, y)
        and not gg(x, y)
    ):
        raise ValueError(f"not a troublesome pair: ({x}, {y})")
    color = "".join(sorted(x.color + y.color))
    return ColoredPart(x.size + y.size, color)


# --- notation -------------------------------------------------------------


class PartParseError(ValueError):
    """Raised for malformed part notation; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class MalformedIntegerError(PartParseError):
    pass


class NonPositiveSizeError(PartParseError):
    pass


class UnknownColorError(PartParseError):
    pass


_PART_RE = re.compile(r"(?P<size>[^_\s,]*)_(?P<color>[^\s,]*)")


def _parse_at(text: str, start: int, end: int) -> ColoredPart:
    token = text[start:end]
    lead = len(token) - len(token.lstrip())
    token = token.strip()
    pos = start + lead
    m = _PART_RE.fullmatch(token)
    if m is None:
        raise MalformedIntegerError(f"expected SIZE_COLOR, got {token!r}", _byte_offset(text, pos))
    size_text, color = m.group("size"), m.group("color")
    if not re.fullmatch(r"[+-]?[0-9]+", size_text):
        raise MalformedIntegerError(f"malformed integer {size_text!r}", _byte_offset(text, pos))
    size = int(size_text)
    if size < 1 or size_text[0] in "+-":
        raise NonPositiveSizeError(f"part size must be a positive integer, got {size_text}",
                                   _byte_offset(text, pos))
    color_pos = pos + m.start("color")
    if color not in _COLOR_SET:
        raise UnknownColorError(f"unknown color {color!r}", _byte_offset(text, color_pos))
    try:
        return ColoredPart(size, color)
    except ValueError as exc:
        raise NonPositiveSizeError(str(exc), _byte_offset(text, pos)) from None


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def parse_part(text: str) -> ColoredPart:
    """Parse ``"11_c"`` into ``ColoredPart(11, "c")``."""
    return _parse_at(text, 0, len(text))


def parse_parts(text: str) -> tuple[ColoredPart, ...]:
    """Parse a comma-separated sequence; the empty string is the empty partition."""
    if not text.strip():
        return ()
    parts = []
    start = 0
    for i, ch in enumerate(text + ","):
        if ch == ",":
            parts.append(_parse_at(text, start, i))
            start = i + 1
    return tuple(parts)


def format_part(part: ColoredPart) -> str:
    return f"{part[0]}_{part[1]}"


def format_parts(parts: Iterable[ColoredPart]) -> str:
    return ",".join(format_part(p) for p in parts)


def total_size(parts: Sequence[ColoredPart]) -> int:
    return sum(p[0] for p in parts)
