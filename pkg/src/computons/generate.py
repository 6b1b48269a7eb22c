"""Seeded random instances for property tests, acceptance runs and demos.

Every function takes a :class:`random.Random` so that runs are repeatable.
Sizes are kept small on purpose: the mediator search behind
:func:`~computons.compose.verify_universal_property` is exhaustive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .compose import PushoutResult, Span, glue, sequential_compose, sequential_span
from .core import CONTROL, Computon, interface, inports, is_connected, iports, outports, validate_computon
from .morphism import ComputonMorphism, compose_morphisms, morphism, validate_morphism

MAX_TRIES = 500


def _data_colour(rng: random.Random, n_colours: int) -> int:
    return rng.randint(1, n_colours)


def random_connected(
    rng: random.Random,
    max_ports: int = 8,
    max_units: int = 3,
    n_colours: int = 3,
    in_colours: list[int] | None = None,
    parallel_edge_rate: float = 0.1,
    min_units: int = 1,
) -> Computon:
    """A connected computon built as a control chain ``u1 -> ... -> uk``.

    All e-inports feed ``u1`` and all e-outports leave ``uk``; consecutive
    units are linked by a control port, and extra data ports may run from a
    unit to any later one.  ``in_colours`` fixes the e-inport colours.
    """
    if in_colours is None:
        in_colours = [CONTROL] * (1 + (rng.random() < 0.2))
        in_colours += [_data_colour(rng, n_colours) for _ in range(rng.randint(0, 2))]
    if CONTROL not in in_colours:
        raise ValueError("a connected computon needs a control e-inport")
    n_out_ctrl = 1 + (rng.random() < 0.2)
    out_colours = [CONTROL] * n_out_ctrl + [_data_colour(rng, n_colours) for _ in range(rng.randint(0, 2))]
    budget = max(max_ports, len(in_colours) + 1)
    while len(in_colours) + len(out_colours) > budget and len(out_colours) > 1:
        out_colours.pop()
    k = rng.randint(min(min_units, max_units), max_units)
    k = max(1, min(k, budget - len(in_colours) - len(out_colours) + 1))
    units = [f"u{i}" for i in range(1, k + 1)]
    ports: list[tuple[str, int]] = []
    in_edges: list[tuple[str, str]] = []  # (port, unit)
    out_edges: list[tuple[str, str]] = []  # (unit, port)

    def new_port(colour: int) -> str:
        name = f"p{len(ports) + 1}"
        ports.append((name, colour))
        return name

    for colour in in_colours:
        in_edges.append((new_port(colour), units[0]))
    for i in range(k - 1):
        link = new_port(CONTROL)
        out_edges.append((units[i], link))
        in_edges.append((link, units[i + 1]))
    for colour in out_colours:
        out_edges.append((units[-1], new_port(colour)))
    while k > 1 and len(ports) < budget and rng.random() < 0.4:
        i = rng.randrange(k - 1)
        j = rng.randrange(i + 1, k)
        p = new_port(_data_colour(rng, n_colours))
        out_edges.append((units[i], p))
        in_edges.append((p, units[j]))
    if in_edges and rng.random() < parallel_edge_rate:
        in_edges.append(rng.choice(in_edges))
    if out_edges and rng.random() < parallel_edge_rate:
        out_edges.append(rng.choice(out_edges))
    c = Computon.build(
        units=units,
        ports=ports,
        out_edges=[(f"e{i}", u, p) for i, (u, p) in enumerate(out_edges, 1)],
        in_edges=[(f"f{i}", p, u) for i, (p, u) in enumerate(in_edges, 1)],
    )
    assert is_connected(c) and validate_computon(c).ok
    return c


def random_valid(rng: random.Random, max_ports: int = 8, max_units: int = 3, n_colours: int = 3) -> Computon:
    """A valid computon with arbitrary wiring (rejection sampled)."""
    for _ in range(MAX_TRIES):
        n = rng.randint(1, max_ports)
        colours = [CONTROL] + [rng.choice([CONTROL] + list(range(1, n_colours + 1))) for _ in range(n - 1)]
        rng.shuffle(colours)
        ports = [(f"p{i}", col) for i, col in enumerate(colours, 1)]
        names = [p for p, _ in ports]
        k = rng.randint(0, max_units)
        units = [f"u{i}" for i in range(1, k + 1)]
        out_edges, in_edges = [], []
        for u in units:
            for _ in range(rng.randint(1, 2)):
                in_edges.append((rng.choice(names), u))
            for _ in range(rng.randint(1, 2)):
                out_edges.append((u, rng.choice(names)))
        c = Computon.build(
            units=units,
            ports=ports,
            out_edges=[(f"e{i}", u, p) for i, (u, p) in enumerate(out_edges, 1)],
            in_edges=[(f"f{i}", p, u) for i, (p, u) in enumerate(in_edges, 1)],
        )
        if validate_computon(c).ok:
            return c
    raise RuntimeError("could not sample a valid computon")


def random_primitive(rng: random.Random, n_colours: int = 3) -> Computon:
    """One unit; every port is an input or an output of it, never both."""
    ins = [CONTROL] * rng.randint(1, 2) + [_data_colour(rng, n_colours) for _ in range(rng.randint(0, 2))]
    outs = [CONTROL] * rng.randint(1, 2) + [_data_colour(rng, n_colours) for _ in range(rng.randint(0, 2))]
    ports = [(f"p{i}", col) for i, col in enumerate(ins + outs, 1)]
    in_edges = [(p, "u1") for p, _ in ports[: len(ins)]]
    out_edges = [("u1", p) for p, _ in ports[len(ins) :]]
    if rng.random() < 0.2:
        in_edges.append(rng.choice(in_edges))
    if rng.random() < 0.2:
        out_edges.append(rng.choice(out_edges))
    return Computon.build(
        units=["u1"],
        ports=ports,
        out_edges=[(f"e{i}", u, p) for i, (u, p) in enumerate(out_edges, 1)],
        in_edges=[(f"f{i}", p, u) for i, (p, u) in enumerate(in_edges, 1)],
    )


_ODD_NAMES = ["port one", "a=b", "x->y", "q\"uote", "ünï", "ports", "7seven", "semi;colon", "br{ace}"]


def exotic_renaming(rng: random.Random, c: Computon) -> Computon:
    """Rename a few elements to identifiers that need quoting in the DSL."""
    pool = rng.sample(_ODD_NAMES, k=len(_ODD_NAMES))
    rename = {}
    for kind in (c.ports, c.units, c.out_edges, c.in_edges):
        for x in sorted(kind):
            if pool and rng.random() < 0.3:
                rename[x] = pool.pop()
    r = lambda x: rename.get(x, x)
    return Computon(
        units={r(u) for u in c.units},
        ports={r(p) for p in c.ports},
        out_edges={r(e): (r(u), r(p)) for e, (u, p) in c.out_edges.items()},
        in_edges={r(f): (r(p), r(u)) for f, (p, u) in c.in_edges.items()},
        colours=c.colours,
        colour_of={r(p): col for p, col in c.colour_of.items()},
    )


# -- morphisms ---------------------------------------------------------------


def _restrict(c: Computon, units: set[str], ports: set[str], outs: set[str], ins: set[str], prefix: str):
    sub = Computon(
        units={prefix + u for u in units},
        ports={prefix + p for p in ports},
        out_edges={prefix + e: (prefix + c.out_edges[e][0], prefix + c.out_edges[e][1]) for e in outs},
        in_edges={prefix + f: (prefix + c.in_edges[f][0], prefix + c.in_edges[f][1]) for f in ins},
        colours={c.colour_of[p] for p in ports},
        colour_of={prefix + p: c.colour_of[p] for p in ports},
    )
    m = ComputonMorphism(
        sub,
        c,
        {prefix + u: u for u in units},
        {prefix + p: p for p in ports},
        {prefix + e: e for e in outs},
        {prefix + f: f for f in ins},
    )
    return sub, m


def random_submorphism(rng: random.Random, target: Computon) -> ComputonMorphism | None:
    """Inclusion of a randomly chosen sub-computon of ``target``, or ``None``."""
    for _ in range(50):
        units = {u for u in target.units if rng.random() < 0.6}
        outs, ins = set(), set()
        for u in units:
            mine_out = sorted(e for e, (v, _) in target.out_edges.items() if v == u)
            mine_in = sorted(f for f, (_, v) in target.in_edges.items() if v == u)
            outs |= {e for e in mine_out if rng.random() < 0.7} or {rng.choice(mine_out)}
            ins |= {f for f in mine_in if rng.random() < 0.7} or {rng.choice(mine_in)}
        ports = {target.out_edges[e][1] for e in outs} | {target.in_edges[f][0] for f in ins}
        ports |= {p for p in target.ports if rng.random() < 0.2}
        if not ports:
            continue
        sub, m = _restrict(target, units, ports, outs, ins, "s.")
        if validate_computon(sub).ok and validate_morphism(m).ok:
            return m
    return None


def random_morphism(rng: random.Random) -> ComputonMorphism:
    """A valid morphism: a sub-computon inclusion or a composition injection."""
    for _ in range(MAX_TRIES):
        roll = rng.random()
        if roll < 0.6:
            m = random_submorphism(rng, random_valid(rng, max_ports=6))
            if m is not None:
                return m
        elif roll < 0.85:
            comp = sequential_compose(random_connected(rng, 4), random_connected(rng, 4))
            return comp.pushout.left_inj if rng.random() < 0.5 else comp.pushout.right_inj
        else:
            m = random_submorphism(rng, random_connected(rng, 6))
            if m is not None:
                return m
    raise RuntimeError("could not sample a morphism")


# -- spans -------------------------------------------------------------------


@dataclass(frozen=True)
class SpanCase:
    span: Span
    family: str
    pushable_by_construction: bool


def sequential_span_any(left: Computon, right: Computon, pairs: list[tuple[str, str]]) -> Span:
    """Trivial apex gluing arbitrary same-coloured port pairs (no e-port checks)."""
    apex = Computon.build(ports=[(f"p{i}", left.colour_of[a]) for i, (a, _) in enumerate(pairs, 1)])
    return Span(
        apex,
        morphism(apex, left, ports={f"p{i}": a for i, (a, _) in enumerate(pairs, 1)}),
        morphism(apex, right, ports={f"p{i}": b for i, (_, b) in enumerate(pairs, 1)}),
    )


def _match_by_colour(rng, lports, rports, left, right):
    by_colour: dict[int, list[str]] = {}
    for q in sorted(rports):
        by_colour.setdefault(right.colour_of[q], []).append(q)
    pairs, used = [], set()
    candidates = sorted(lports)
    rng.shuffle(candidates)
    for p in candidates:
        options = [q for q in by_colour.get(left.colour_of[p], []) if q not in used]
        if options and (not pairs or rng.random() < 0.5):
            q = rng.choice(options)
            pairs.append((p, q))
            used.add(q)
    return pairs


def _seq_family(rng) -> SpanCase | None:
    left, right = random_connected(rng, 4, 2), random_connected(rng, 4, 2)
    pairs = _match_by_colour(rng, outports(left), inports(right), left, right)
    if not any(left.colour_of[a] == CONTROL for a, _ in pairs):
        pairs = [(min(interface(left).ec_outports), min(interface(right).ec_inports))] + [
            (a, b) for a, b in pairs if left.colour_of[a] != CONTROL
        ][:1]
    return SpanCase(sequential_span(left, right, pairs), "trivial-apex-sequential", True)


def _eport_family(rng) -> SpanCase | None:
    left, right = random_valid(rng, 4, 2), random_valid(rng, 4, 2)
    lext = inports(left) | outports(left)
    rext = inports(right) | outports(right)
    pairs = _match_by_colour(rng, lext, rext, left, right)
    if not pairs:
        return None
    span = sequential_span_any(left, right, pairs)
    # The gluing may destroy every ec-inport (for instance two loops closed
    # on each other).  Such spans are pushable yet have no pushout; they are
    # exercised separately and kept out of this family.
    if not validate_computon(glue(span).result).ok:
        return None
    return SpanCase(span, "trivial-apex-eports", True)


def _internal_family(rng) -> SpanCase | None:
    left, right = random_connected(rng, 6, 3, min_units=2), random_connected(rng, 4, 2)
    internal = iports(left)
    if not internal:
        return None
    p = rng.choice(sorted(internal))
    touched = [q for q in sorted(right.ports) if right.colour_of[q] == left.colour_of[p] and (q not in inports(right) or q not in outports(right))]
    if not touched:
        return None
    return SpanCase(sequential_span_any(left, right, [(p, rng.choice(touched))]), "trivial-apex-internal", False)


def _three_stage(rng):
    a = random_connected(rng, 3, 1, parallel_edge_rate=0)
    x = random_connected(rng, 3, 1, parallel_edge_rate=0)
    y = random_connected(rng, 3, 1, parallel_edge_rate=0)
    return a, x, y


def _unit_closed_family(rng) -> SpanCase | None:
    a, x, y = _three_stage(rng)
    ya = sequential_compose(y, a).pushout  # a sits on the right
    ax = sequential_compose(a, x).pushout  # a sits on the left
    span = Span(a, ya.right_inj, ax.left_inj)
    return SpanCase(span, "shared-subcomputon", True)


def _unit_closed_clash_family(rng) -> SpanCase | None:
    a, y1, y2 = _three_stage(rng)
    first = sequential_compose(y1, a).pushout
    second = sequential_compose(y2, a).pushout
    span = Span(a, first.right_inj, second.right_inj)
    return SpanCase(span, "shared-subcomputon-clash", False)


FAMILIES = (
    _seq_family,
    _eport_family,
    _internal_family,
    _unit_closed_family,
    _unit_closed_clash_family,
)


def random_span(rng: random.Random) -> SpanCase:
    """A span from one of several families, pushable or not by construction."""
    for _ in range(MAX_TRIES):
        case = rng.choice(FAMILIES)(rng)
        if case is not None:
            return case
    raise RuntimeError("could not sample a span")


# -- cocones -----------------------------------------------------------------


def random_extension(rng: random.Random, c: Computon, steps: int | None = None) -> ComputonMorphism:
    """A valid morphism ``c -> d`` adding up to two small pieces and renaming everything."""
    steps = rng.randint(0, 2) if steps is None else steps
    units, ports = set(c.units), dict(c.colour_of)
    out_edges, in_edges = dict(c.out_edges), dict(c.in_edges)
    for k in range(steps):
        kind = rng.choice(("port", "consumer", "producer"))
        fresh_p, fresh_u = f"x.p{k}", f"x.u{k}"
        if kind == "port":
            ports[fresh_p] = CONTROL
            continue
        if kind == "consumer":
            anchors = sorted(p for p in outports(c) if p in ports)
            if not anchors:
                continue
            units.add(fresh_u)
            ports[fresh_p] = CONTROL
            in_edges[f"x.f{k}"] = (rng.choice(anchors), fresh_u)
            out_edges[f"x.e{k}"] = (fresh_u, fresh_p)
        else:
            anchors = sorted(p for p in inports(c) if p in ports)
            if not anchors:
                continue
            units.add(fresh_u)
            ports[fresh_p] = CONTROL
            out_edges[f"x.e{k}"] = (fresh_u, rng.choice(anchors))
            in_edges[f"x.f{k}"] = (fresh_p, fresh_u)
    names = sorted(units) + sorted(ports) + sorted(out_edges) + sorted(in_edges)
    labels = [f"d{i}" for i in range(len(names))]
    rng.shuffle(labels)
    r = dict(zip(names, labels))
    d = Computon(
        units={r[u] for u in units},
        ports={r[p] for p in ports},
        out_edges={r[e]: (r[u], r[p]) for e, (u, p) in out_edges.items()},
        in_edges={r[f]: (r[p], r[u]) for f, (p, u) in in_edges.items()},
        colours=c.colours | {CONTROL},
        colour_of={r[p]: col for p, col in ports.items()},
    )
    return ComputonMorphism(
        c,
        d,
        {u: r[u] for u in c.units},
        {p: r[p] for p in c.ports},
        {e: r[e] for e in c.out_edges},
        {f: r[f] for f in c.in_edges},
    )


def random_cocone(rng: random.Random, po: PushoutResult):
    """A commuting cocone ``(d, g1, g2)`` over the span of ``po``."""
    ext = random_extension(rng, po.result)
    return ext.target, compose_morphisms(ext, po.left_inj), compose_morphisms(ext, po.right_inj)


# -- total sequential pairs --------------------------------------------------


def random_total_pair(rng: random.Random):
    """Connected ``(left, right, pairing)`` fusing every e-outport with every e-inport."""
    left = random_connected(rng, 5, 2)
    outs = sorted(outports(left), key=lambda p: (left.colour_of[p], p))
    right = random_connected(rng, 5 + len(outs), 2, in_colours=[left.colour_of[p] for p in outs])
    ins = sorted(inports(right), key=lambda p: (right.colour_of[p], p))
    return left, right, list(zip(outs, ins))


__all__ = [
    "SpanCase",
    "random_connected",
    "random_valid",
    "random_primitive",
    "exotic_renaming",
    "random_submorphism",
    "random_morphism",
    "random_span",
    "random_extension",
    "random_cocone",
    "random_total_pair",
    "sequential_span_any",
]
