"""Marked computons and the token game.

Ports act as places and units as transitions.  Each token carries the
colour of the port it sits on; consumption is first-in first-out per port.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .core import Computon, post_set, pre_set
from .errors import ElementNotFoundError, FiringError, InvalidColourError

DEFAULT_STEP_LIMIT = 10_000
POLICIES = ("least-id", "random")


@dataclass(frozen=True, order=True)
class Token:
    id: str
    colour: int
    location: str

    @property
    def is_control(self) -> bool:
        return self.colour == 0


@dataclass(frozen=True)
class MarkedComputon:
    """A computon together with a FIFO queue of tokens per port.

    ``step`` counts the firings that led here and seeds fresh token ids.
    """

    computon: Computon
    queues: Mapping[str, tuple[Token, ...]]
    step: int = 0

    def __post_init__(self):
        queues = {p: tuple(q) for p, q in dict(self.queues).items() if q}
        for p, q in queues.items():
            if p not in self.computon.ports:
                raise ElementNotFoundError(p, "marking")
            for tok in q:
                if tok.location != p or tok.colour != self.computon.colour_of[p]:
                    raise InvalidColourError(f"token {tok.id} does not match place {p}")
        object.__setattr__(self, "queues", MappingProxyType(queues))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedComputon):
            return NotImplemented
        return self.computon == other.computon and dict(self.queues) == dict(other.queues)

    def __hash__(self) -> int:
        return hash((self.computon, frozenset(self.queues.items())))

    @property
    def tokens(self) -> frozenset[Token]:
        return frozenset(t for q in self.queues.values() for t in q)

    def count(self, port: str) -> int:
        return len(self.queues.get(port, ()))

    def counts(self) -> dict[str, int]:
        """Token count per marked port."""
        return {p: len(q) for p, q in sorted(self.queues.items())}


@dataclass(frozen=True)
class FiringEvent:
    step: int
    unit: str
    consumed: Mapping[str, str]
    produced: Mapping[str, str]

    def to_text(self) -> str:
        fmt = lambda d: ",".join(f"{p}:{t}" for p, t in sorted(d.items()))
        return f"{self.step} {self.unit} consumed{{{fmt(self.consumed)}}} produced{{{fmt(self.produced)}}}"


@dataclass(frozen=True)
class Trace:
    initial: MarkedComputon
    events: tuple[FiringEvent, ...]
    final: MarkedComputon
    termination: str  # "quiescent" or "step-limit"

    def replay(self) -> MarkedComputon:
        m = self.initial
        for ev in self.events:
            m, again = fire(m, ev.unit)
            if again != ev:
                raise FiringError(f"replay diverged at step {ev.step}")
        return m

    def to_text(self) -> str:
        return "".join(ev.to_text() + "\n" for ev in self.events)


def make_marking(c: Computon, assignment: Iterable[tuple[str, int]] | Mapping[str, int]) -> MarkedComputon:
    """Put ``count`` fresh tokens on each listed port, ids ``t0.<port>.<k>``."""
    items = assignment.items() if isinstance(assignment, Mapping) else assignment
    queues: dict[str, list[Token]] = {}
    for port, count in items:
        if port not in c.ports:
            raise ElementNotFoundError(port)
        if count < 0:
            raise ValueError(f"negative token count for {port!r}")
        q = queues.setdefault(port, [])
        for _ in range(count):
            q.append(Token(f"t0.{port}.{len(q) + 1}", c.colour_of[port], port))
    return MarkedComputon(c, {p: tuple(q) for p, q in queues.items()})


def enabled_transitions(m: MarkedComputon) -> frozenset[str]:
    """Units whose every pre-set port holds a token."""
    c = m.computon
    return frozenset(u for u in c.units if all(m.count(p) for p in pre_set(c, u)))


def fire(m: MarkedComputon, unit: str) -> tuple[MarkedComputon, FiringEvent]:
    c = m.computon
    if unit not in c.units:
        raise ElementNotFoundError(unit)
    if unit not in enabled_transitions(m):
        raise FiringError(f"unit {unit!r} is not enabled")
    step = m.step + 1
    queues = {p: list(q) for p, q in m.queues.items()}
    consumed, produced = {}, {}
    for p in sorted(pre_set(c, unit)):
        consumed[p] = queues[p].pop(0).id
    for p in sorted(post_set(c, unit)):
        tok = Token(f"t{step}.{p}", c.colour_of[p], p)
        queues.setdefault(p, []).append(tok)
        produced[p] = tok.id
    event = FiringEvent(step, unit, MappingProxyType(consumed), MappingProxyType(produced))
    return MarkedComputon(c, {p: tuple(q) for p, q in queues.items()}, step), event


def run(
    m: MarkedComputon,
    policy: str = "least-id",
    seed: int | None = None,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Trace:
    """Fire enabled units one at a time until none is enabled or ``step_limit`` is hit.

    ``least-id`` always picks the lexicographically smallest enabled unit;
    ``random`` picks uniformly with a generator seeded by ``seed``.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    if step_limit < 0:
        raise ValueError("step_limit must be non-negative")
    rng = random.Random(seed)
    events = []
    current = m
    while True:
        enabled = sorted(enabled_transitions(current))
        if not enabled:
            termination = "quiescent"
            break
        if len(events) >= step_limit:
            termination = "step-limit"
            break
        unit = enabled[0] if policy == "least-id" else rng.choice(enabled)
        current, ev = fire(current, unit)
        events.append(ev)
    return Trace(m, tuple(events), current, termination)
