"""Pushouts of computons and the sequential and parallel composition operators.

Every component set of a pushout is the disjoint union of the two legs'
targets quotiented by the apex.  Elements keep their origin as a prefix:
``L.x`` for the left target, ``R.y`` for the right, and ``L.x=R.y`` for an
element identified through the apex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .core import (
    Computon,
    ComputonClass,
    ValidationReport,
    Violation,
    classify,
    interface,
    inports,
    is_connected,
    is_trivial,
    make_fork,
    make_join,
    make_unit,
    outports,
    validate_computon,
)
from .errors import (
    CapacityError,
    InvalidPairingError,
    InvalidSpanError,
    MalformedInputError,
    NotParallelisableError,
    NotSequentiableError,
    PushoutUndefinedError,
    SequencingRejected,
)
from .morphism import (
    ComputonMorphism,
    compose_morphisms,
    find_isomorphism,
    i_vector,
    inverse,
    morphism,
    o_vector,
    validate_morphism,
)

MEDIATOR_SEARCH_CAP = 1_000_000


@dataclass(frozen=True)
class Span:
    apex: Computon
    left: ComputonMorphism
    right: ComputonMorphism

    def __post_init__(self):
        if self.left.source != self.apex or self.right.source != self.apex:
            raise InvalidSpanError("both legs must start at the apex")


@dataclass(frozen=True)
class PushoutResult:
    span: Span
    result: Computon
    left_inj: ComputonMorphism
    right_inj: ComputonMorphism
    provenance: Mapping[str, tuple[str, ...]] = field(repr=False)


@dataclass(frozen=True)
class CoproductResult:
    result: Computon
    inj_a: ComputonMorphism
    inj_b: ComputonMorphism


def _check_legs(span: Span) -> None:
    for side, leg in (("left", span.left), ("right", span.right)):
        report = validate_morphism(leg)
        if not report.ok:
            raise InvalidSpanError(f"{side} leg is not a computon morphism: {report}")


def is_pushable(span: Span) -> ValidationReport:
    """Report the boundary inclusions that make a span pushable.

    Each violation names a port of a leg target that gains edges from the
    other side although it is internal.
    """
    _check_legs(span)
    a1, a2 = span.left, span.right
    out = []
    for here, there, label in ((a1, a2, "left"), (a2, a1, "right")):
        external = inports(here.target) | outports(here.target)
        touched = here.ports_image(i_vector(there) | o_vector(there))
        for p in sorted(touched - external):
            out.append(Violation(f"{label} target port gains edges but is internal", p))
    return ValidationReport(tuple(out))


# -- gluing ------------------------------------------------------------------


def _quotient_names(left: Sequence[str], right: Sequence[str], apex, map1, map2):
    name_l = {x: f"L.{x}" for x in left}
    name_r = {y: f"R.{y}" for y in right}
    for z in apex:
        x, y = map1[z], map2[z]
        merged = "=".join(sorted((f"L.{x}", f"R.{y}")))
        name_l[x] = merged
        name_r[y] = merged
    expected = len(left) + len(right) - len(apex)
    names = set(name_l.values()) | set(name_r.values())
    if len(names) != expected:
        raise MalformedInputError("identifier collision while naming pushout elements")
    return name_l, name_r


def _provenance(name_l: Mapping[str, str], name_r: Mapping[str, str], out: dict) -> None:
    for x, z in name_l.items():
        out.setdefault(z, []).append(f"L.{x}")
    for y, z in name_r.items():
        out.setdefault(z, []).append(f"R.{y}")


def glue(span: Span) -> PushoutResult:
    """Componentwise pushout in Set, without any computon-level check."""
    a1, a2 = span.left, span.right
    lhs, rhs, apex = a1.target, a2.target, span.apex
    nu_l, nu_r = _quotient_names(sorted(lhs.units), sorted(rhs.units), apex.units, a1.unit_map, a2.unit_map)
    np_l, np_r = _quotient_names(sorted(lhs.ports), sorted(rhs.ports), apex.ports, a1.port_map, a2.port_map)
    ne_l, ne_r = _quotient_names(
        sorted(lhs.out_edges), sorted(rhs.out_edges), apex.out_edges, a1.out_edge_map, a2.out_edge_map
    )
    nf_l, nf_r = _quotient_names(
        sorted(lhs.in_edges), sorted(rhs.in_edges), apex.in_edges, a1.in_edge_map, a2.in_edge_map
    )
    out_edges, in_edges, colour_of = {}, {}, {}
    for comp, nu, np_, ne, nf in ((lhs, nu_l, np_l, ne_l, nf_l), (rhs, nu_r, np_r, ne_r, nf_r)):
        for e, (u, p) in comp.out_edges.items():
            out_edges[ne[e]] = (nu[u], np_[p])
        for f, (p, u) in comp.in_edges.items():
            in_edges[nf[f]] = (np_[p], nu[u])
        for p, colour in comp.colour_of.items():
            colour_of[np_[p]] = colour
    result = Computon(
        units=frozenset(nu_l.values()) | frozenset(nu_r.values()),
        ports=frozenset(np_l.values()) | frozenset(np_r.values()),
        out_edges=out_edges,
        in_edges=in_edges,
        colours=lhs.colours | rhs.colours,
        colour_of=colour_of,
    )
    beta1 = ComputonMorphism(lhs, result, nu_l, np_l, ne_l, nf_l)
    beta2 = ComputonMorphism(rhs, result, nu_r, np_r, ne_r, nf_r)
    prov: dict[str, list[str]] = {}
    for pair in ((nu_l, nu_r), (np_l, np_r), (ne_l, ne_r), (nf_l, nf_r)):
        _provenance(*pair, prov)
    return PushoutResult(span, result, beta1, beta2, {k: tuple(v) for k, v in prov.items()})


def pushout_violations(span: Span) -> list[Violation]:
    """Reasons why the Set-level gluing of ``span`` is not a pushout of computons.

    Empty exactly when the glued structure is a computon and both
    injections are computon morphisms.  This is computed from the gluing
    itself, independently of :func:`is_pushable`.
    """
    _check_legs(span)
    glued = glue(span)
    out = list(validate_computon(glued.result).violations)
    if not out:
        for label, inj in (("left", glued.left_inj), ("right", glued.right_inj)):
            out.extend(Violation(f"{label} injection: {v.clause}", v.element) for v in validate_morphism(inj).violations)
    return out


def pushout(span: Span) -> PushoutResult:
    report = is_pushable(span)
    if not report.ok:
        raise PushoutUndefinedError(f"span is not pushable: {report}", report.violations)
    problems = pushout_violations(span)
    if problems:
        raise PushoutUndefinedError(
            "pushable span whose gluing is not a computon: " + "; ".join(map(str, problems)), problems
        )
    return glue(span)


# -- universal property ------------------------------------------------------


_KINDS = (
    ("unit_map", "units"),
    ("port_map", "ports"),
    ("out_edge_map", "out_edges"),
    ("in_edge_map", "in_edges"),
)


def mediating_morphisms(
    po: PushoutResult, target: Computon, g1: ComputonMorphism, g2: ComputonMorphism
) -> Iterator[ComputonMorphism]:
    """Enumerate every morphism ``po.result -> target`` through which ``g1``, ``g2`` factor.

    Each element of the pushout may only go where its preimages are sent by
    the cocone; unconstrained elements range over the whole target set.
    Raises :class:`CapacityError` when the raw assignment space exceeds
    ``MEDIATOR_SEARCH_CAP``.
    """
    choices = []
    space = 1
    for attr, kind in _KINDS:
        allowed: dict[str, set[str]] = {}
        for beta, gamma in ((po.left_inj, g1), (po.right_inj, g2)):
            bmap, gmap = getattr(beta, attr), getattr(gamma, attr)
            for x, z in bmap.items():
                allowed.setdefault(z, {gmap[x]})
                allowed[z] &= {gmap[x]}
        universe = sorted(getattr(target, kind))
        domain = sorted(getattr(po.result, kind))
        options = [sorted(allowed[z]) if z in allowed else universe for z in domain]
        for opt in options:
            space *= len(opt)
        choices.append((domain, options))
    if space > MEDIATOR_SEARCH_CAP:
        raise CapacityError(f"mediator search space has {space} assignments (limit {MEDIATOR_SEARCH_CAP})")
    per_kind = []
    for domain, options in choices:
        maps = []
        for combo in itertools.product(*options):
            if len(set(combo)) == len(combo):
                maps.append(dict(zip(domain, combo)))
        per_kind.append(maps)
    for units, ports, outs, ins in itertools.product(*per_kind):
        m = ComputonMorphism(po.result, target, units, ports, outs, ins)
        if not validate_morphism(m).ok:
            continue
        if compose_morphisms(m, po.left_inj) == g1 and compose_morphisms(m, po.right_inj) == g2:
            yield m


def verify_universal_property(span: Span, po: PushoutResult, candidate) -> bool:
    """True iff exactly one mediating morphism into the candidate cocone exists."""
    target, g1, g2 = candidate
    if g1.source != span.left.target or g2.source != span.right.target:
        return False
    if g1.target != target or g2.target != target:
        return False
    if compose_morphisms(g1, span.left) != compose_morphisms(g2, span.right):
        return False
    found = list(itertools.islice(mediating_morphisms(po, target, g1, g2), 2))
    return len(found) == 1


# -- coproduct ---------------------------------------------------------------


def coproduct(a: Computon, b: Computon) -> CoproductResult:
    """Disjoint union, with colour sets merged by union."""
    la = lambda xs: {x: f"L.{x}" for x in xs}
    rb = lambda xs: {x: f"R.{x}" for x in xs}
    nu_a, np_a, ne_a, nf_a = la(a.units), la(a.ports), la(a.out_edges), la(a.in_edges)
    nu_b, np_b, ne_b, nf_b = rb(b.units), rb(b.ports), rb(b.out_edges), rb(b.in_edges)
    out_edges = {ne_a[e]: (nu_a[u], np_a[p]) for e, (u, p) in a.out_edges.items()}
    out_edges.update({ne_b[e]: (nu_b[u], np_b[p]) for e, (u, p) in b.out_edges.items()})
    in_edges = {nf_a[f]: (np_a[p], nu_a[u]) for f, (p, u) in a.in_edges.items()}
    in_edges.update({nf_b[f]: (np_b[p], nu_b[u]) for f, (p, u) in b.in_edges.items()})
    colour_of = {np_a[p]: c for p, c in a.colour_of.items()}
    colour_of.update({np_b[p]: c for p, c in b.colour_of.items()})
    result = Computon(
        units=set(nu_a.values()) | set(nu_b.values()),
        ports=set(np_a.values()) | set(np_b.values()),
        out_edges=out_edges,
        in_edges=in_edges,
        colours=a.colours | b.colours,
        colour_of=colour_of,
    )
    return CoproductResult(
        result,
        ComputonMorphism(a, result, nu_a, np_a, ne_a, nf_a),
        ComputonMorphism(b, result, nu_b, np_b, ne_b, nf_b),
    )


def copair(co: CoproductResult, f: ComputonMorphism, g: ComputonMorphism) -> ComputonMorphism:
    """The unique morphism out of a coproduct restricting to ``f`` and ``g``."""
    if f.source != co.inj_a.source or g.source != co.inj_b.source or f.target != g.target:
        raise InvalidSpanError("copairing needs morphisms out of both summands into one computon")
    maps = []
    for attr, _ in _KINDS:
        combined = {}
        for inj, h in ((co.inj_a, f), (co.inj_b, g)):
            for x, z in getattr(inj, attr).items():
                combined[z] = getattr(h, attr)[x]
        maps.append(combined)
    return ComputonMorphism(co.result, f.target, *maps)


# -- sequential composition --------------------------------------------------


@dataclass(frozen=True)
class SequencingReport:
    mode: str  # "total" or "partial"
    fused_ports: tuple[tuple[str, str], ...]


def check_sequential(span: Span) -> SequencingReport:
    """Accept a span whose pushout is a sequential computon, or raise :class:`SequencingRejected`."""
    _check_legs(span)
    a1, a2 = span.left, span.right
    apex, lhs, rhs = span.apex, a1.target, a2.target
    apex_report = validate_computon(apex)
    if not apex_report.ok:
        raise SequencingRejected("i", f"apex is not a computon ({apex_report})")
    if not is_trivial(apex):
        raise SequencingRejected("i", "apex is not a trivial computon")
    fusable = i_vector(a1) & o_vector(a2)
    if apex.ports != fusable:
        stray = sorted(apex.ports - fusable)
        raise SequencingRejected("i", f"apex ports {stray} are not both produced on the left and consumed on the right")
    for label, operand in (("left", lhs), ("right", rhs)):
        if not is_connected(operand):
            raise SequencingRejected("ii", f"{label} operand is not connected")
    left_out, right_in = outports(lhs), inports(rhs)
    fused_left = a1.ports_image(o_vector(a2))
    if not fused_left <= left_out:
        raise SequencingRejected("iii", f"ports {sorted(fused_left - left_out)} are not e-outports of the left operand")
    fused_right = a2.ports_image(i_vector(a1))
    if not fused_right <= right_in:
        raise SequencingRejected("iv", f"ports {sorted(fused_right - right_in)} are not e-inports of the right operand")
    mode = "total" if fused_left == left_out and fused_right == right_in else "partial"
    pairs = tuple(sorted((a1.port_map[p], a2.port_map[p]) for p in apex.ports))
    return SequencingReport(mode, pairs)


@dataclass(frozen=True)
class SequentialComposition:
    pushout: PushoutResult
    report: SequencingReport

    @property
    def result(self) -> Computon:
        return self.pushout.result


def default_pairing(left: Computon, right: Computon) -> list[tuple[str, str]]:
    """Least ec-outport of ``left`` fused with least ec-inport of ``right``."""
    return [(min(interface(left).ec_outports), min(interface(right).ec_inports))]


def sequential_span(left: Computon, right: Computon, pairing: Sequence[tuple[str, str]]) -> Span:
    """Trivial apex with one port per pair, legs sending it to the paired ports."""
    pairing = [tuple(pair) for pair in pairing]
    if not pairing:
        raise InvalidPairingError("pairing must fuse at least one port pair")
    lefts = [lp for lp, _ in pairing]
    rights = [rp for _, rp in pairing]
    if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
        raise InvalidPairingError("pairing must be injective on both sides")
    l_out, r_in = outports(left), inports(right)
    for lp, rp in pairing:
        if lp not in left.ports or lp not in l_out:
            raise InvalidPairingError(f"{lp!r} is not an e-outport of the left operand")
        if rp not in right.ports or rp not in r_in:
            raise InvalidPairingError(f"{rp!r} is not an e-inport of the right operand")
        if left.colour_of[lp] != right.colour_of[rp]:
            raise InvalidPairingError(
                f"colour mismatch: {lp!r} has {left.colour_of[lp]}, {rp!r} has {right.colour_of[rp]}"
            )
    apex = Computon.build(ports=[(f"p{i}", left.colour_of[lp]) for i, (lp, _) in enumerate(pairing, 1)])
    return Span(
        apex,
        morphism(apex, left, ports={f"p{i}": lp for i, (lp, _) in enumerate(pairing, 1)}),
        morphism(apex, right, ports={f"p{i}": rp for i, (_, rp) in enumerate(pairing, 1)}),
    )


def sequential_compose(
    left: Computon, right: Computon, pairing: Sequence[tuple[str, str]] | None = None
) -> SequentialComposition:
    """Fuse e-outports of ``left`` with e-inports of ``right`` by a pushout."""
    for label, operand in (("left", left), ("right", right)):
        if not is_connected(operand):
            raise NotSequentiableError(f"operand not connected ({label})")
    if pairing is None:
        pairing = default_pairing(left, right)
    span = sequential_span(left, right, pairing)
    report = check_sequential(span)
    return SequentialComposition(pushout(span), report)


# -- parallel composition ----------------------------------------------------


@dataclass(frozen=True)
class ParallelComposition:
    """``a | b`` with every object and morphism of the construction retained.

    ``objects`` holds ``lambda0`` ... ``lambda16`` plus the coproduct under
    ``"lambda2+lambda10"``; ``morphisms`` holds ``alpha1`` ... ``alpha26``
    and the two isomorphisms ``alpha27`` (join to join) and ``alpha28``
    (fork to fork) used to orient the branches.
    """

    result: Computon
    objects: Mapping[str, Computon] = field(repr=False)
    morphisms: Mapping[str, ComputonMorphism] = field(repr=False)
    sequencing: Mapping[str, SequencingReport] = field(repr=False)


def _unit_leg(source: Computon, target: Computon, port: str) -> ComputonMorphism:
    return morphism(source, target, ports={"p1": port})


def parallel_compose(a: Computon, b: Computon) -> ParallelComposition:
    """Put ``a`` and ``b`` between a fresh fork and a fresh join.

    The fork's first ec-outport and the join's first ec-inport always go
    to ``a``; the second ones go to ``b``.
    """
    for label, operand in (("first", a), ("second", b)):
        if not is_connected(operand):
            raise NotParallelisableError(f"operand not connected ({label})")
    lam: dict[str, Computon] = {}
    al: dict[str, ComputonMorphism] = {}
    seq: dict[str, SequencingReport] = {}
    lam["lambda3"], lam["lambda11"] = a, b
    lam["lambda4"], lam["lambda10"] = make_fork(), make_fork()
    lam["lambda2"], lam["lambda12"] = make_join(), make_join()
    for k in ("lambda0", "lambda1", "lambda8", "lambda9"):
        lam[k] = make_unit()
    al["alpha28"] = find_isomorphism(lam["lambda4"], lam["lambda10"])
    al["alpha27"] = find_isomorphism(lam["lambda2"], lam["lambda12"])
    fork_out = sorted(outports(lam["lambda10"]))
    join_in = sorted(inports(lam["lambda2"]))
    back28 = inverse(al["alpha28"])

    # fork |> a
    al["alpha4"] = _unit_leg(lam["lambda1"], lam["lambda4"], back28.port_map[fork_out[0]])
    al["alpha3"] = _unit_leg(lam["lambda1"], a, min(interface(a).ec_inports))
    span6 = Span(lam["lambda1"], al["alpha4"], al["alpha3"])
    seq["lambda6"] = check_sequential(span6)
    po6 = pushout(span6)
    lam["lambda6"], al["alpha8"], al["alpha7"] = po6.result, po6.left_inj, po6.right_inj

    # a |> join
    al["alpha2"] = _unit_leg(lam["lambda0"], a, min(interface(a).ec_outports))
    al["alpha1"] = _unit_leg(lam["lambda0"], lam["lambda2"], join_in[0])
    span5 = Span(lam["lambda0"], al["alpha2"], al["alpha1"])
    seq["lambda5"] = check_sequential(span5)
    po5 = pushout(span5)
    lam["lambda5"], al["alpha6"], al["alpha5"] = po5.result, po5.left_inj, po5.right_inj

    po7 = pushout(Span(a, al["alpha7"], al["alpha6"]))
    lam["lambda7"], al["alpha10"], al["alpha9"] = po7.result, po7.left_inj, po7.right_inj

    # fork |> b
    al["alpha11"] = _unit_leg(lam["lambda8"], lam["lambda10"], fork_out[1])
    al["alpha12"] = _unit_leg(lam["lambda8"], b, min(interface(b).ec_inports))
    span13 = Span(lam["lambda8"], al["alpha11"], al["alpha12"])
    seq["lambda13"] = check_sequential(span13)
    po13 = pushout(span13)
    lam["lambda13"], al["alpha15"], al["alpha16"] = po13.result, po13.left_inj, po13.right_inj

    # b |> join
    al["alpha13"] = _unit_leg(lam["lambda9"], b, min(interface(b).ec_outports))
    al["alpha14"] = _unit_leg(lam["lambda9"], lam["lambda12"], al["alpha27"].port_map[join_in[1]])
    span14 = Span(lam["lambda9"], al["alpha13"], al["alpha14"])
    seq["lambda14"] = check_sequential(span14)
    po14 = pushout(span14)
    lam["lambda14"], al["alpha17"], al["alpha18"] = po14.result, po14.left_inj, po14.right_inj

    po15 = pushout(Span(b, al["alpha16"], al["alpha17"]))
    lam["lambda15"], al["alpha19"], al["alpha20"] = po15.result, po15.left_inj, po15.right_inj

    co = coproduct(lam["lambda2"], lam["lambda10"])
    lam["lambda2+lambda10"], al["alpha21"], al["alpha22"] = co.result, co.inj_a, co.inj_b
    al["alpha23"] = copair(
        co,
        compose_morphisms(al["alpha9"], al["alpha5"]),
        compose_morphisms(al["alpha10"], compose_morphisms(al["alpha8"], back28)),
    )
    al["alpha24"] = copair(
        co,
        compose_morphisms(al["alpha20"], compose_morphisms(al["alpha18"], al["alpha27"])),
        compose_morphisms(al["alpha19"], al["alpha15"]),
    )
    po16 = pushout(Span(co.result, al["alpha23"], al["alpha24"]))
    lam["lambda16"], al["alpha25"], al["alpha26"] = po16.result, po16.left_inj, po16.right_inj

    pc = ParallelComposition(po16.result, lam, al, seq)
    problems = parallel_conditions(pc) + parallel_diagram_violations(pc)
    if problems:
        raise NotParallelisableError("parallel construction failed: " + "; ".join(problems))
    return pc


def parallel_conditions(pc: ParallelComposition) -> list[str]:
    """The ten side conditions of the parallel construction, as failure messages."""
    lam, al, out = pc.objects, pc.morphisms, []
    for k in ("lambda0", "lambda1", "lambda8", "lambda9"):
        if classify(lam[k]) is not ComputonClass.UNIT:
            out.append(f"1: {k} is not a unit computon")
    for k in ("lambda3", "lambda11"):
        if not is_connected(lam[k]):
            out.append(f"2: {k} is not connected")
    for k in ("lambda4", "lambda10"):
        if classify(lam[k]) is not ComputonClass.FORK:
            out.append(f"3: {k} is not a fork computon")
    for k in ("lambda2", "lambda12"):
        if classify(lam[k]) is not ComputonClass.JOIN:
            out.append(f"4: {k} is not a join computon")
    for n, k in ((5, "lambda5"), (6, "lambda6"), (7, "lambda13"), (8, "lambda14")):
        if pc.sequencing.get(k) is None or pc.sequencing[k].mode != "partial":
            out.append(f"{n}: {k} is not a partial sequential computon")
    if o_vector(al["alpha23"]) & o_vector(al["alpha24"]):
        out.append("9: o-vectors of alpha23 and alpha24 intersect")
    if i_vector(al["alpha23"]) & i_vector(al["alpha24"]):
        out.append("10: i-vectors of alpha23 and alpha24 intersect")
    return out


def parallel_diagram_violations(pc: ParallelComposition) -> list[str]:
    """Check every morphism validates and every square and triangle commutes."""
    al, out = pc.morphisms, []
    for name, m in sorted(al.items()):
        if not validate_morphism(m).ok:
            out.append(f"{name} is not a computon morphism")
    c = compose_morphisms
    back28 = inverse(al["alpha28"])
    equations = {
        "S(5)": (c(al["alpha6"], al["alpha2"]), c(al["alpha5"], al["alpha1"])),
        "S(6)": (c(al["alpha8"], al["alpha4"]), c(al["alpha7"], al["alpha3"])),
        "M(7)": (c(al["alpha10"], al["alpha7"]), c(al["alpha9"], al["alpha6"])),
        "S(13)": (c(al["alpha15"], al["alpha11"]), c(al["alpha16"], al["alpha12"])),
        "S(14)": (c(al["alpha17"], al["alpha13"]), c(al["alpha18"], al["alpha14"])),
        "M(15)": (c(al["alpha19"], al["alpha16"]), c(al["alpha20"], al["alpha17"])),
        "join into lambda7": (c(al["alpha23"], al["alpha21"]), c(al["alpha9"], al["alpha5"])),
        "fork into lambda7": (c(al["alpha23"], al["alpha22"]), c(al["alpha10"], c(al["alpha8"], back28))),
        "join into lambda15": (
            c(al["alpha24"], al["alpha21"]),
            c(al["alpha20"], c(al["alpha18"], al["alpha27"])),
        ),
        "fork into lambda15": (c(al["alpha24"], al["alpha22"]), c(al["alpha19"], al["alpha15"])),
        "M(16)": (c(al["alpha25"], al["alpha23"]), c(al["alpha26"], al["alpha24"])),
    }
    for label, (lhs, rhs) in equations.items():
        if lhs != rhs:
            out.append(f"{label} does not commute")
    return out
