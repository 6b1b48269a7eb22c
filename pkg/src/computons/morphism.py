"""Computon morphisms: componentwise injections that commute with structure."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .core import (
    Computon,
    ValidationReport,
    Violation,
    inports,
    outports,
    post_set,
    pre_set,
)
from .errors import (
    CompositionMismatchError,
    InvalidMorphismError,
    MalformedInputError,
)


@dataclass(frozen=True)
class ComputonMorphism:
    """Five component maps from ``source`` into ``target``.

    The colour component is not stored: it is always the inclusion of
    ``source.colours`` into ``target.colours``.
    """

    source: Computon
    target: Computon
    unit_map: Mapping[str, str]
    port_map: Mapping[str, str]
    out_edge_map: Mapping[str, str]
    in_edge_map: Mapping[str, str]

    def __post_init__(self):
        for name in ("unit_map", "port_map", "out_edge_map", "in_edge_map"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    def __hash__(self) -> int:
        return hash(
            (
                self.source,
                self.target,
                frozenset(self.unit_map.items()),
                frozenset(self.port_map.items()),
                frozenset(self.out_edge_map.items()),
                frozenset(self.in_edge_map.items()),
            )
        )

    def __repr__(self) -> str:
        return f"ComputonMorphism({self.source!r} -> {self.target!r}, ports={dict(self.port_map)})"

    def ports_image(self, ports: Iterable[str]) -> frozenset[str]:
        return frozenset(self.port_map[p] for p in ports)

    def units_image(self, units: Iterable[str]) -> frozenset[str]:
        return frozenset(self.unit_map[u] for u in units)

    def ports_preimage(self, ports: Iterable[str]) -> frozenset[str]:
        wanted = set(ports)
        return frozenset(p for p, q in self.port_map.items() if q in wanted)

    def is_isomorphism(self) -> bool:
        return (
            len(self.unit_map) == len(self.target.units)
            and len(self.port_map) == len(self.target.ports)
            and len(self.out_edge_map) == len(self.target.out_edges)
            and len(self.in_edge_map) == len(self.target.in_edges)
            and self.source.colours == self.target.colours
            and validate_morphism(self).ok
        )


def morphism(source: Computon, target: Computon, ports=None, units=None, out_edges=None, in_edges=None) -> ComputonMorphism:
    """Convenience constructor; omitted maps default to empty."""
    return ComputonMorphism(
        source, target, dict(units or {}), dict(ports or {}), dict(out_edges or {}), dict(in_edges or {})
    )


_COMPONENTS = (
    ("unit_map", "units", "α_U"),
    ("port_map", "ports", "α_P"),
    ("out_edge_map", "out_edges", "α_E"),
    ("in_edge_map", "in_edges", "α_F"),
)


def _check_total(m: ComputonMorphism) -> None:
    for attr, kind, label in _COMPONENTS:
        mapping = getattr(m, attr)
        domain = set(getattr(m.source, kind))
        codomain = set(getattr(m.target, kind))
        extra = set(mapping) - domain
        if extra:
            raise MalformedInputError(f"{label} maps unknown source elements {sorted(extra)}")
        missing = domain - set(mapping)
        if missing:
            raise MalformedInputError(f"{label} is not total; missing {sorted(missing)}")
        bad = {v for v in mapping.values() if v not in codomain}
        if bad:
            raise MalformedInputError(f"{label} maps into unknown target elements {sorted(bad)}")


def i_vector(m: ComputonMorphism) -> frozenset[str]:
    """Source ports whose image gains a producer that is not the image of one."""
    out = []
    for p, q in m.port_map.items():
        if pre_set(m.target, q) - m.units_image(pre_set(m.source, p)):
            out.append(p)
    return frozenset(out)


def o_vector(m: ComputonMorphism) -> frozenset[str]:
    """Source ports whose image gains a consumer that is not the image of one."""
    out = []
    for p, q in m.port_map.items():
        if post_set(m.target, q) - m.units_image(post_set(m.source, p)):
            out.append(p)
    return frozenset(out)


def validate_morphism(m: ComputonMorphism) -> ValidationReport:
    """Injectivity, colour inclusion, the commuting squares and the boundary condition."""
    _check_total(m)
    s, t = m.source, m.target
    out: list[Violation] = []
    for attr, _, label in _COMPONENTS:
        mapping = getattr(m, attr)
        counts = Counter(mapping.values())
        for x in sorted(mapping):
            if counts[mapping[x]] > 1:
                out.append(Violation(f"{label} not injective", x))
    for colour in sorted(s.colours - t.colours):
        out.append(Violation("Σ not included", colour))
    for p in sorted(s.ports):
        if t.colour_of.get(m.port_map[p]) != s.colour_of.get(p):
            out.append(Violation("colour square", p))
    for e in sorted(s.out_edges):
        u, p = s.out_edges[e]
        u2, p2 = t.out_edges[m.out_edge_map[e]]
        if m.unit_map.get(u) != u2:
            out.append(Violation("σ square", e))
        if m.port_map.get(p) != p2:
            out.append(Violation("t square", e))
    for f in sorted(s.in_edges):
        p, u = s.in_edges[f]
        p2, u2 = t.in_edges[m.in_edge_map[f]]
        if m.unit_map.get(u) != u2:
            out.append(Violation("τ square", f))
        if m.port_map.get(p) != p2:
            out.append(Violation("s square", f))
    if not out:
        external = inports(s) | outports(s)
        for p in sorted((i_vector(m) | o_vector(m)) - external):
            out.append(Violation("boundary condition", p))
    return ValidationReport(tuple(out))


def ensure_morphism(m: ComputonMorphism, what: str = "morphism") -> ComputonMorphism:
    report = validate_morphism(m)
    if not report.ok:
        raise InvalidMorphismError(f"invalid {what}: {report}", report.violations)
    return m


def identity_morphism(c: Computon) -> ComputonMorphism:
    return ComputonMorphism(
        c,
        c,
        {u: u for u in c.units},
        {p: p for p in c.ports},
        {e: e for e in c.out_edges},
        {f: f for f in c.in_edges},
    )


def compose_morphisms(g: ComputonMorphism, f: ComputonMorphism) -> ComputonMorphism:
    """``g ∘ f`` for ``f: A -> B`` and ``g: B -> C``."""
    if f.target != g.source:
        raise CompositionMismatchError("target of the first morphism differs from the source of the second")
    return ComputonMorphism(
        f.source,
        g.target,
        {x: g.unit_map[y] for x, y in f.unit_map.items()},
        {x: g.port_map[y] for x, y in f.port_map.items()},
        {x: g.out_edge_map[y] for x, y in f.out_edge_map.items()},
        {x: g.in_edge_map[y] for x, y in f.in_edge_map.items()},
    )


def inverse(m: ComputonMorphism) -> ComputonMorphism:
    if not m.is_isomorphism():
        raise InvalidMorphismError("only isomorphisms can be inverted")
    flip = lambda d: {v: k for k, v in d.items()}
    return ComputonMorphism(
        m.target, m.source, flip(m.unit_map), flip(m.port_map), flip(m.out_edge_map), flip(m.in_edge_map)
    )


# -- isomorphism search ------------------------------------------------------


class _Shape:
    """Edge multiplicities and unit signatures used to prune the search."""

    def __init__(self, c: Computon):
        self.c = c
        self.out_mult = Counter(c.out_edges.values())  # (unit, port) -> count
        self.in_mult = Counter(c.in_edges.values())  # (port, unit) -> count
        self.out_groups = defaultdict(list)
        for e, key in c.out_edges.items():
            self.out_groups[key].append(e)
        self.in_groups = defaultdict(list)
        for f, key in c.in_edges.items():
            self.in_groups[key].append(f)
        self.port_units = defaultdict(list)  # port -> [(direction, unit, multiplicity)]
        for (u, p), n in self.out_mult.items():
            self.port_units[p].append(("produced-by", u, n))
        for (p, u), n in self.in_mult.items():
            self.port_units[p].append(("consumed-by", u, n))
        self.conn = Counter()  # (u, v) -> number of u -> p -> v paths
        for (u, p), n in self.out_mult.items():
            for v in post_set(c, p):
                self.conn[(u, v)] += n * self.in_mult[(p, v)]

    def unit_signature(self, u: str):
        c = self.c
        ins = sorted(c.colour_of[p] for f, (p, v) in c.in_edges.items() if v == u)
        outs = sorted(c.colour_of[p] for e, (v, p) in c.out_edges.items() if v == u)
        return (len(ins), len(outs), tuple(ins), tuple(outs))

    def port_key(self, p: str, unit_image: Mapping[str, str]):
        adj = sorted((d, unit_image[u], n) for d, u, n in self.port_units.get(p, ()))
        return (self.c.colour_of[p], tuple(adj))


def _cheap_invariants(a: Computon, b: Computon) -> bool:
    return (
        len(a.units) == len(b.units)
        and len(a.ports) == len(b.ports)
        and len(a.out_edges) == len(b.out_edges)
        and len(a.in_edges) == len(b.in_edges)
        and a.colours == b.colours
        and Counter(a.colour_of.values()) == Counter(b.colour_of.values())
    )


def find_isomorphism(a: Computon, b: Computon) -> ComputonMorphism | None:
    """Search for an isomorphism ``a -> b``; ``None`` when none exists.

    Units are assigned by backtracking in lexicographic order, restricted
    to targets with the same degree/colour signature and consistent
    unit-to-unit connection counts.  Once units are fixed, ports with the
    same colour and unit adjacency are interchangeable, so ports and edges
    are matched group by group without further search.
    """
    if not _cheap_invariants(a, b):
        return None
    sa, sb = _Shape(a), _Shape(b)
    sig_b = defaultdict(list)
    for v in sorted(b.units):
        sig_b[sb.unit_signature(v)].append(v)
    order = sorted(a.units)
    candidates = {u: sig_b.get(sa.unit_signature(u), []) for u in order}
    if any(not cands for cands in candidates.values()):
        return None
    order.sort(key=lambda u: (len(candidates[u]), u))

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(u: str, v: str) -> bool:
        if sa.conn[(u, u)] != sb.conn[(v, v)]:
            return False
        for x, y in assignment.items():
            if sa.conn[(u, x)] != sb.conn[(v, y)] or sa.conn[(x, u)] != sb.conn[(y, v)]:
                return False
        return True

    def complete() -> ComputonMorphism | None:
        groups_a = defaultdict(list)
        for p in sorted(a.ports):
            groups_a[sa.port_key(p, assignment)].append(p)
        identity = {v: v for v in b.units}
        groups_b = defaultdict(list)
        for q in sorted(b.ports):
            groups_b[sb.port_key(q, identity)].append(q)
        if {k: len(v) for k, v in groups_a.items()} != {k: len(v) for k, v in groups_b.items()}:
            return None
        port_map = {}
        for key, ps in groups_a.items():
            port_map.update(zip(ps, groups_b[key]))
        out_map, in_map = {}, {}
        for (u, p), es in sa.out_groups.items():
            out_map.update(zip(sorted(es), sorted(sb.out_groups[(assignment[u], port_map[p])])))
        for (p, u), fs in sa.in_groups.items():
            in_map.update(zip(sorted(fs), sorted(sb.in_groups[(port_map[p], assignment[u])])))
        return ComputonMorphism(a, b, dict(assignment), port_map, out_map, in_map)

    def search(i: int) -> ComputonMorphism | None:
        if i == len(order):
            return complete()
        u = order[i]
        for v in candidates[u]:
            if v in used or not consistent(u, v):
                continue
            assignment[u] = v
            used.add(v)
            found = search(i + 1)
            if found is not None:
                return found
            del assignment[u]
            used.discard(v)
        return None

    return search(0)


def are_isomorphic(a: Computon, b: Computon) -> bool:
    return find_isomorphism(a, b) is not None
