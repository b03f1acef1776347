"""The machines ``phi`` (O -> E1) and ``psi`` (E1 -> O).

Both machines work on a private mutable list and record every elementary
move as a :class:`TraceEvent`.  ``phi`` merges troublesome primary pairs and
moves the new secondary part left across primary parts; ``psi`` moves the
rightmost secondary part right across primary parts and then splits it into
its halves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ColoredPart, combine, gg, halves, is_troublesome, lex_gt
from .partitions import Family, color_product, validate

MERGE = "merge"
CROSS_UP = "cross_up"
CROSS_DOWN = "cross_down"
SPLIT = "split"

INVERSE_KIND = {MERGE: SPLIT, SPLIT: MERGE, CROSS_UP: CROSS_DOWN, CROSS_DOWN: CROSS_UP}


class MachineError(ValueError):
    pass


class PassageViolation(AssertionError):
    """A checked run found a passage breaking one of the well-definedness clauses."""


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    index: int
    before: tuple[ColoredPart, ...]
    after: tuple[ColoredPart, ...]

    def apply(self, seq: list[ColoredPart]) -> None:
        i = self.index
        if tuple(seq[i:i + len(self.before)]) != self.before:
            raise MachineError(f"event {self.kind} at {i} does not match {seq[i:i + len(self.before)]}")
        seq[i:i + len(self.before)] = self.after

    def inverse(self) -> TraceEvent:
        return TraceEvent(INVERSE_KIND[self.kind], self.index, self.after, self.before)

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "index": self.index,
            "before": [{"size": p.size, "color": p.color} for p in self.before],
            "after": [{"size": p.size, "color": p.color} for p in self.after],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> TraceEvent:
        def parts(key):
            return tuple(ColoredPart(int(d["size"]), d["color"]) for d in obj[key])

        return cls(obj["kind"], int(obj["index"]), parts("before"), parts("after"))


def trace_to_jsonl(trace: Iterable[TraceEvent]) -> str:
    return "".join(json.dumps(ev.to_obj()) + "\n" for ev in trace)


def trace_from_jsonl(text: str) -> list[TraceEvent]:
    return [TraceEvent.from_obj(json.loads(line)) for line in text.splitlines() if line.strip()]


def replay(parts: Sequence[ColoredPart], trace: Iterable[TraceEvent]) -> list[tuple[ColoredPart, ...]]:
    """All states visited when applying ``trace`` to ``parts``, starting state included."""
    seq = list(parts)
    states = [tuple(seq)]
    for ev in trace:
        ev.apply(seq)
        states.append(tuple(seq))
    return states


def replay_backward(parts: Sequence[ColoredPart], trace: Sequence[TraceEvent]) -> tuple[ColoredPart, ...]:
    seq = list(parts)
    for ev in reversed(trace):
        ev.inverse().apply(seq)
    return tuple(seq)


def _cap(t: int) -> int:
    return max(t * t, 1)


# --- phi ------------------------------------------------------------------


def _phi_run(parts, on_passage=None):
    seq = list(parts)
    trace: list[TraceEvent] = []
    cap = _cap(len(seq))
    while True:
        # Step 1: smallest troublesome primary pair
        for i in range(len(seq) - 1):
            x, y = seq[i], seq[i + 1]
            if len(x[1]) == 1 and len(y[1]) == 1 and lex_gt(x, y) and not gg(x, y):
                break
        else:
            return tuple(seq), trace
        merged = combine(seq[i], seq[i + 1])
        trace.append(TraceEvent(MERGE, i, (seq[i], seq[i + 1]), (merged,)))
        seq[i:i + 2] = [merged]
        # Step 2: rescan from the front after every crossing
        while True:
            for i in range(len(seq) - 1):
                x, y = seq[i], seq[i + 1]
                if len(x[1]) == 1 and len(y[1]) == 2 and not gg(x, y):
                    break
            else:
                break
            after = (y + 1, x - 1)
            trace.append(TraceEvent(CROSS_UP, i, (x, y), after))
            seq[i:i + 2] = after
            if len(trace) > cap:
                raise MachineError(f"phi exceeded {cap} steps on {list(parts)}")
        if on_passage is not None:
            on_passage(tuple(seq))


def phi(parts: Sequence[ColoredPart]) -> tuple[tuple[ColoredPart, ...], list[TraceEvent]]:
    """Map an O partition to E1; returns the image and the step trace."""
    parts = tuple(parts)
    check = validate(parts, Family.O)
    if not check:
        raise MachineError(f"phi input is not in O: {check.describe()}")
    return _phi_run(parts)


# --- psi ------------------------------------------------------------------


def _last_secondary(seq) -> int:
    for i in range(len(seq) - 1, -1, -1):
        if len(seq[i][1]) == 2:
            return i
    return -1


def _psi_run(parts, on_passage=None):
    seq = list(parts)
    trace: list[TraceEvent] = []
    cap = _cap(len(seq))
    while True:
        i = _last_secondary(seq)
        if i < 0:
            return tuple(seq), trace
        # Step 1: cross while the lower half does not dominate the next primary part
        while i + 1 < len(seq) and len(seq[i + 1][1]) == 1:
            x, y = seq[i], seq[i + 1]
            if lex_gt(halves(x)[1], y):
                break
            after = (y + 1, x - 1)
            trace.append(TraceEvent(CROSS_DOWN, i, (x, y), after))
            seq[i:i + 2] = after
            i += 1
            if len(trace) > cap:
                raise MachineError(f"psi exceeded {cap} steps on {list(parts)}")
        # Step 2: split
        x = seq[i]
        after = halves(x)
        trace.append(TraceEvent(SPLIT, i, (x,), after))
        seq[i:i + 1] = after
        if on_passage is not None:
            on_passage(tuple(seq), i + 1)


def psi(parts: Sequence[ColoredPart]) -> tuple[tuple[ColoredPart, ...], list[TraceEvent]]:
    """Map an E1 partition to O; returns the image and the step trace."""
    parts = tuple(parts)
    check = validate(parts, Family.E1)
    if not check:
        raise MachineError(f"psi input is not in E1: {check.describe()}")
    return _psi_run(parts)


# --- checked runs ---------------------------------------------------------


@dataclass(frozen=True)
class Passage:
    """Sequence state at a passage from Step 2 back to Step 1, cut into (gamma, mu)."""

    gamma: tuple[ColoredPart, ...]
    mu: tuple[ColoredPart, ...]


def _fail(machine: str, clause: str, u: int, p: Passage) -> None:
    raise PassageViolation(
        f"{machine} passage {u}: {clause} "
        f"(gamma={','.join(map(str, p.gamma))}; mu={','.join(map(str, p.mu))})"
    )


def are_consecutive(x: ColoredPart, y: ColoredPart) -> bool:
    """Primary parts that are neighbours for ``lex_gt`` within their two colors."""
    return is_troublesome(x, y)


def phi_checked(parts: Sequence[ColoredPart]):
    """Run ``phi`` and check every passage; returns ``(image, trace, passages)``."""
    parts = tuple(parts)
    check = validate(parts, Family.O)
    if not check:
        raise MachineError(f"phi input is not in O: {check.describe()}")
    passages = [Passage((), parts)]

    def on_passage(state):
        cut = max(i for i, p in enumerate(state) if len(p[1]) == 2) + 1
        passages.append(Passage(state[:cut], state[cut:]))

    image, trace = _phi_run(parts, on_passage)
    for u in range(1, len(passages)):
        p, prev = passages[u], passages[u - 1]
        n_sec = sum(len(x[1]) == 2 for x in p.gamma)
        if n_sec != u:
            _fail("phi", f"last part of gamma is secondary number {n_sec}, expected {u}", u, p)
        if not validate(p.gamma, Family.E1):
            _fail("phi", "gamma is not in E1", u, p)
        if not validate(p.mu, Family.O):
            _fail("phi", "mu is not in O", u, p)
        if p.mu:
            if not gg(p.gamma[-1], p.mu[0]):
                _fail("phi", "l(gamma) >> g(mu) fails", u, p)
            if not validate(p.gamma + p.mu[:1], Family.E1):
                _fail("phi", "(gamma, g(mu)) is not in E1", u, p)
        if p.gamma[:len(prev.gamma)] != prev.gamma:
            _fail("phi", "previous gamma is not a prefix", u, p)
        if len(p.mu) > len(prev.mu) - 2:
            _fail("phi", "mu lost fewer than two parts", u, p)
    if passages[-1].gamma + passages[-1].mu != image:
        _fail("phi", "last passage differs from the image", len(passages) - 1, passages[-1])
    return image, trace, passages


def psi_checked(parts: Sequence[ColoredPart]):
    """Run ``psi`` and check every passage; returns ``(image, trace, passages)``."""
    parts = tuple(parts)
    check = validate(parts, Family.E1)
    if not check:
        raise MachineError(f"psi input is not in E1: {check.describe()}")
    passages = [Passage(parts, ())]

    def on_passage(state, cut):
        passages.append(Passage(state[:cut], state[cut:]))

    image, trace = _psi_run(parts, on_passage)
    for u in range(1, len(passages)):
        p, prev = passages[u], passages[u - 1]
        if len(p.gamma[-1][1]) != 1:
            _fail("psi", "l(gamma) is not primary", u, p)
        if not are_consecutive(p.gamma[-1], p.mu[0]):
            _fail("psi", "l(gamma) and g(mu) are not consecutive", u, p)
        if not validate(p.gamma, Family.E1):
            _fail("psi", "gamma is not in E1", u, p)
        if not validate(p.mu, Family.O):
            _fail("psi", "mu is not in O", u, p)
        if prev.mu and p.mu[len(p.mu) - len(prev.mu):] != prev.mu:
            _fail("psi", "previous mu is not a tail", u, p)
        sec = sum(len(x[1]) == 2 for x in p.gamma)
        prev_sec = sum(len(x[1]) == 2 for x in prev.gamma)
        if sec != prev_sec - 1:
            _fail("psi", "secondary count did not drop by one", u, p)
    return image, trace, passages


def secondary_counts(passages: Sequence[Passage]) -> list[int]:
    return [sum(len(x[1]) == 2 for x in p.gamma + p.mu) for p in passages]


def conserves(before: Sequence[ColoredPart], after: Sequence[ColoredPart]) -> bool:
    return (sum(p[0] for p in before) == sum(p[0] for p in after)
            and color_product(before) == color_product(after))


def format_pending_split(seq: Sequence[ColoredPart]) -> str:
    """Render a psi state with its rightmost secondary part written as ``alpha+beta``."""
    i = _last_secondary(seq)
    out = [str(p) for p in seq]
    if i >= 0:
        a, b = halves(seq[i])
        out[i] = f"{a}+{b}"
    return ",".join(out)
