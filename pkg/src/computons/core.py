"""Computons as concrete finite structures.

A computon is a bipartite graph of computation units and coloured ports.
Edges in ``out_edges`` run unit -> port, edges in ``in_edges`` run
port -> unit.  Colour 0 marks control ports, every other natural number a
data type.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    ElementNotFoundError,
    InvalidColourError,
    InvalidComputonError,
    MalformedInputError,
)

CONTROL = 0


def is_control(colour: int) -> bool:
    return colour == CONTROL


@dataclass(frozen=True)
class Computon:
    """Immutable computon ``(U, P, E, F, Sigma, sigma, tau, t, s, c)``.

    ``out_edges`` maps each edge of E to ``(sigma(e), t(e))`` and
    ``in_edges`` maps each edge of F to ``(s(f), tau(f))``.  Construction
    only checks that identifiers can be told apart; the computon axioms
    are checked by :func:`validate_computon`.
    """

    units: frozenset[str]
    ports: frozenset[str]
    out_edges: Mapping[str, tuple[str, str]]
    in_edges: Mapping[str, tuple[str, str]]
    colours: frozenset[int]
    colour_of: Mapping[str, int]

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "units", frozenset(self.units))
        set_(self, "ports", frozenset(self.ports))
        set_(self, "colours", frozenset(self.colours))
        set_(self, "out_edges", MappingProxyType({e: tuple(v) for e, v in dict(self.out_edges).items()}))
        set_(self, "in_edges", MappingProxyType({f: tuple(v) for f, v in dict(self.in_edges).items()}))
        set_(self, "colour_of", MappingProxyType(dict(self.colour_of)))
        clash = self.units & self.ports
        if clash:
            raise MalformedInputError(f"names used both as unit and port: {sorted(clash)}")
        clash = set(self.out_edges) & set(self.in_edges)
        if clash:
            raise MalformedInputError(f"edge names used in both edge sets: {sorted(clash)}")
        for colour in self.colours:
            if not isinstance(colour, int) or isinstance(colour, bool) or colour < 0:
                raise InvalidColourError(f"colour must be a natural number, got {colour!r}")

    def __hash__(self) -> int:
        return hash(
            (
                self.units,
                self.ports,
                frozenset(self.out_edges.items()),
                frozenset(self.in_edges.items()),
                self.colours,
                frozenset(self.colour_of.items()),
            )
        )

    def __repr__(self) -> str:
        return (
            f"Computon(|U|={len(self.units)}, |P|={len(self.ports)}, "
            f"|E|={len(self.out_edges)}, |F|={len(self.in_edges)}, colours={sorted(self.colours)})"
        )

    @classmethod
    def build(
        cls,
        units: Iterable[str] = (),
        ports: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        out_edges: Iterable[tuple[str, str, str]] = (),
        in_edges: Iterable[tuple[str, str, str]] = (),
        colours: Iterable[int] | None = None,
    ) -> "Computon":
        """Build from raw lists, rejecting duplicate identifiers.

        ``out_edges`` holds ``(name, unit, port)`` triples and ``in_edges``
        ``(name, port, unit)`` triples.  When ``colours`` is omitted it is
        taken to be the set of port colours.
        """
        unit_list = list(units)
        port_items = list(ports.items()) if isinstance(ports, Mapping) else list(ports)
        out_list = [tuple(e) for e in out_edges]
        in_list = [tuple(f) for f in in_edges]
        _reject_duplicates("unit", unit_list)
        _reject_duplicates("port", [p for p, _ in port_items])
        _reject_duplicates("out_edge", [e[0] for e in out_list])
        _reject_duplicates("in_edge", [f[0] for f in in_list])
        colour_of = dict(port_items)
        if colours is None:
            colour_set = set(colour_of.values())
        else:
            colour_list = list(colours)
            _reject_duplicates("colour", colour_list)
            colour_set = set(colour_list)
        return cls(
            units=frozenset(unit_list),
            ports=frozenset(colour_of),
            out_edges={name: (u, p) for name, u, p in out_list},
            in_edges={name: (p, u) for name, p, u in in_list},
            colours=frozenset(colour_set),
            colour_of=colour_of,
        )

    # adjacency, tolerant of dangling references so invalid candidates can be inspected
    @cached_property
    def _adjacency(self):
        unit_pre = {u: set() for u in self.units}
        unit_post = {u: set() for u in self.units}
        port_pre = {p: set() for p in self.ports}
        port_post = {p: set() for p in self.ports}
        for u, p in self.out_edges.values():
            unit_post.setdefault(u, set()).add(p)
            port_pre.setdefault(p, set()).add(u)
        for p, u in self.in_edges.values():
            port_post.setdefault(p, set()).add(u)
            unit_pre.setdefault(u, set()).add(p)
        freeze = lambda d: {k: frozenset(v) for k, v in d.items()}
        return freeze(unit_pre), freeze(unit_post), freeze(port_pre), freeze(port_post)

    def is_unit(self, x: str) -> bool:
        return x in self.units

    def is_port(self, x: str) -> bool:
        return x in self.ports

    def edge_colour(self, edge: str) -> int:
        """Colour of the port an edge touches; 0 means a control-flow edge."""
        if edge in self.out_edges:
            return self.colour_of[self.out_edges[edge][1]]
        if edge in self.in_edges:
            return self.colour_of[self.in_edges[edge][0]]
        raise ElementNotFoundError(edge)

    def is_control_edge(self, edge: str) -> bool:
        return is_control(self.edge_colour(edge))


def _reject_duplicates(kind: str, names: list) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise MalformedInputError(f"duplicate {kind} identifier {name!r}")
        seen.add(name)


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    clause: str
    element: object = None

    def __str__(self) -> str:
        if self.element is None:
            return self.clause
        return f"{self.clause}: {self.element}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @property
    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


def _coerce(candidate) -> Computon:
    if isinstance(candidate, Computon):
        return candidate
    if isinstance(candidate, Mapping):
        unknown = set(candidate) - {"units", "ports", "out_edges", "in_edges", "colours"}
        if unknown:
            raise MalformedInputError(f"unknown keys {sorted(unknown)}")
        return Computon.build(**candidate)
    raise MalformedInputError(f"cannot read {type(candidate).__name__} as a computon")


def validate_computon(candidate) -> ValidationReport:
    """Check every computon axiom and report each failed clause.

    ``candidate`` is a :class:`Computon` or a mapping accepted by
    :meth:`Computon.build`.  Duplicate identifiers raise
    :class:`MalformedInputError` instead of producing a report.
    """
    c = _coerce(candidate)
    out: list[Violation] = []
    if not c.ports:
        out.append(Violation("P empty"))
    if not c.colours:
        out.append(Violation("Σ empty"))
    for p in sorted(c.colour_of):
        if p not in c.ports:
            out.append(Violation("c defined outside P", p))
    for p in sorted(c.ports):
        if p not in c.colour_of:
            out.append(Violation("c not total", p))
        elif c.colour_of[p] not in c.colours:
            out.append(Violation("c not into Σ", p))
    used = {c.colour_of[p] for p in c.ports if p in c.colour_of}
    for colour in sorted(c.colours - used):
        out.append(Violation("c not surjective", colour))
    for e, (u, p) in sorted(c.out_edges.items()):
        if u not in c.units:
            out.append(Violation("σ not total", e))
        if p not in c.ports:
            out.append(Violation("t not total", e))
    for f, (p, u) in sorted(c.in_edges.items()):
        if p not in c.ports:
            out.append(Violation("s not total", f))
        if u not in c.units:
            out.append(Violation("τ not total", f))
    sources = {u for u, _ in c.out_edges.values()}
    targets = {u for _, u in c.in_edges.values()}
    for u in sorted(c.units):
        if u not in sources:
            out.append(Violation("σ not surjective", u))
        if u not in targets:
            out.append(Violation("τ not surjective", u))
    produced = {p for _, p in c.out_edges.values()}
    consumed = {p for p, _ in c.in_edges.values()}
    control = [p for p in c.ports if c.colour_of.get(p) == CONTROL]
    if not any(p not in produced for p in control):
        out.append(Violation("no ec-inport"))
    if not any(p not in consumed for p in control):
        out.append(Violation("no ec-outport"))
    return ValidationReport(tuple(out))


def ensure_valid(c: Computon, what: str = "computon") -> Computon:
    report = validate_computon(c)
    if not report.ok:
        raise InvalidComputonError(f"invalid {what}: {report}", report.violations)
    return c


# -- interface ---------------------------------------------------------------


class Direction(str, Enum):
    E_INPORT = "e-inport"
    E_OUTPORT = "e-outport"
    E_INOUTPORT = "e-inoutport"
    I_PORT = "i-port"


class Kind(str, Enum):
    CONTROL = "control"
    DATA = "data"


@dataclass(frozen=True)
class PortClass:
    direction: Direction
    kind: Kind

    def __str__(self) -> str:
        return f"{self.kind.value} {self.direction.value}"


@dataclass(frozen=True)
class Interface:
    inports: frozenset[str]
    outports: frozenset[str]
    classes: Mapping[str, PortClass] = field(repr=False)
    colour_of: Mapping[str, int] = field(repr=False)

    def _filter(self, ports, control: bool) -> frozenset[str]:
        return frozenset(p for p in ports if is_control(self.colour_of[p]) == control)

    @property
    def ec_inports(self) -> frozenset[str]:
        return self._filter(self.inports, True)

    @property
    def ec_outports(self) -> frozenset[str]:
        return self._filter(self.outports, True)

    @property
    def ed_inports(self) -> frozenset[str]:
        return self._filter(self.inports, False)

    @property
    def ed_outports(self) -> frozenset[str]:
        return self._filter(self.outports, False)

    @property
    def iports(self) -> frozenset[str]:
        return frozenset(p for p, k in self.classes.items() if k.direction is Direction.I_PORT)


def inports(c: Computon) -> frozenset[str]:
    produced = {p for _, p in c.out_edges.values()}
    return frozenset(p for p in c.ports if p not in produced)


def outports(c: Computon) -> frozenset[str]:
    consumed = {p for p, _ in c.in_edges.values()}
    return frozenset(p for p in c.ports if p not in consumed)


def interface(c: Computon) -> Interface:
    """Return ``(P+, P-)`` together with the class of every port."""
    pin, pout = inports(c), outports(c)
    classes = {}
    for p in c.ports:
        if p in pin and p in pout:
            d = Direction.E_INOUTPORT
        elif p in pin:
            d = Direction.E_INPORT
        elif p in pout:
            d = Direction.E_OUTPORT
        else:
            d = Direction.I_PORT
        k = Kind.CONTROL if is_control(c.colour_of[p]) else Kind.DATA
        classes[p] = PortClass(d, k)
    return Interface(pin, pout, MappingProxyType(classes), c.colour_of)


def iports(c: Computon) -> frozenset[str]:
    produced = {p for _, p in c.out_edges.values()}
    consumed = {p for p, _ in c.in_edges.values()}
    return frozenset(produced & consumed)


# -- pre/post sets and flow --------------------------------------------------


def pre_set(c: Computon, x: str) -> frozenset[str]:
    """Ports feeding unit ``x``, or units producing into port ``x``."""
    unit_pre, _, port_pre, _ = c._adjacency
    if x in c.units:
        return unit_pre.get(x, frozenset())
    if x in c.ports:
        return port_pre.get(x, frozenset())
    raise ElementNotFoundError(x)


def post_set(c: Computon, x: str) -> frozenset[str]:
    """Ports produced by unit ``x``, or units consuming from port ``x``."""
    _, unit_post, _, port_post = c._adjacency
    if x in c.units:
        return unit_post.get(x, frozenset())
    if x in c.ports:
        return port_post.get(x, frozenset())
    raise ElementNotFoundError(x)


def reachable_ports(c: Computon, p: str) -> frozenset[str]:
    """Ports reachable from ``p`` by an alternating path of length >= 1."""
    _, unit_post, _, port_post = c._adjacency
    seen_units: set[str] = set()
    seen_ports: set[str] = set()
    queue = deque([p])
    while queue:
        port = queue.popleft()
        for u in port_post.get(port, ()):
            if u in seen_units:
                continue
            seen_units.add(u)
            for q in unit_post.get(u, ()):
                if q not in seen_ports:
                    seen_ports.add(q)
                    queue.append(q)
    return frozenset(seen_ports)


def flows_to(c: Computon, p: str, q: str, reflexive: bool = False) -> bool:
    """True when information can flow from port ``p`` to port ``q``.

    A path must contain at least one unit unless ``reflexive`` is set, in
    which case ``p`` trivially flows to itself.
    """
    for x in (p, q):
        if x not in c.ports:
            raise ElementNotFoundError(x)
    if reflexive and p == q:
        return True
    return q in reachable_ports(c, p)


def is_connected(c: Computon) -> bool:
    outs = outports(c)
    for p in inports(c):
        if not outs <= reachable_ports(c, p):
            return False
    return True


# -- classification ----------------------------------------------------------


class ComputonClass(str, Enum):
    TRIVIAL = "trivial"
    UNIT = "unit"
    FORK = "primitive-fork"
    JOIN = "primitive-join"
    FUNCTIONAL = "primitive-functional"
    GLUE = "primitive-glue"
    PRIMITIVE_OTHER = "primitive-other"
    COMPOSITE_OR_OTHER = "composite-or-other"


def is_trivial(c: Computon) -> bool:
    return not c.units


def is_primitive(c: Computon) -> bool:
    if len(c.units) != 1 or not c.out_edges or not c.in_edges:
        return False
    produced = {p for _, p in c.out_edges.values()}
    consumed = {p for p, _ in c.in_edges.values()}
    return c.ports == (produced ^ consumed)


def classify(c: Computon) -> ComputonClass:
    """Most specific class tag of a valid computon."""
    if is_trivial(c):
        if len(c.ports) == 1 and len(c.colours) == 1:
            return ComputonClass.UNIT
        return ComputonClass.TRIVIAL
    if not is_primitive(c):
        return ComputonClass.COMPOSITE_OR_OTHER
    n_e, n_f, n_col = len(c.out_edges), len(c.in_edges), len(c.colours)
    if n_e == 2 and n_f == 1 and n_col == 1:
        return ComputonClass.FORK
    if n_e == 1 and n_f == 2 and n_col == 1:
        return ComputonClass.JOIN
    face = interface(c)
    if len(face.ec_inports) == 1 and len(face.ec_outports) == 1:
        if n_e == 1 and n_f == 1:
            return ComputonClass.GLUE
        return ComputonClass.FUNCTIONAL
    return ComputonClass.PRIMITIVE_OTHER


# -- constructors ------------------------------------------------------------


def make_trivial(colours: Iterable[int]) -> Computon:
    """Trivial computon with one e-inoutport ``p1, p2, ...`` per listed colour."""
    colours = list(colours)
    for colour in colours:
        if not isinstance(colour, int) or colour < 0:
            raise InvalidColourError(f"colour must be a natural number, got {colour!r}")
    if CONTROL not in colours:
        raise InvalidColourError("a trivial computon needs at least one control port")
    return Computon.build(ports=[(f"p{i}", col) for i, col in enumerate(colours, 1)])


def make_unit() -> Computon:
    return make_trivial([CONTROL])


def _single_unit(in_colours: list[int], out_colours: list[int]) -> Computon:
    ports = [(f"p{i}", col) for i, col in enumerate(in_colours + out_colours, 1)]
    n_in = len(in_colours)
    return Computon.build(
        units=["u1"],
        ports=ports,
        in_edges=[(f"f{i}", name, "u1") for i, (name, _) in enumerate(ports[:n_in], 1)],
        out_edges=[(f"e{i}", "u1", name) for i, (name, _) in enumerate(ports[n_in:], 1)],
    )


def make_fork() -> Computon:
    return _single_unit([CONTROL], [CONTROL, CONTROL])


def make_join() -> Computon:
    return _single_unit([CONTROL, CONTROL], [CONTROL])


def make_glue() -> Computon:
    return _single_unit([CONTROL], [CONTROL])


def make_functional(in_colours: Iterable[int], out_colours: Iterable[int]) -> Computon:
    """Functional computon with the given data inports and outports.

    Port ``p1`` is the ec-inport, followed by the data inports, then the
    ec-outport and the data outports.
    """
    in_colours, out_colours = list(in_colours), list(out_colours)
    for colour in in_colours + out_colours:
        if not isinstance(colour, int) or colour <= 0:
            raise InvalidColourError(f"data colours must be positive, got {colour!r}")
    return _single_unit([CONTROL, *in_colours], [CONTROL, *out_colours])
