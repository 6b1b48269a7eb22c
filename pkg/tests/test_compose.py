from __future__ import annotations

import pytest

from computons import (
    Computon,
    Span,
    are_isomorphic,
    check_sequential,
    compose_morphisms,
    coproduct,
    copair,
    flows_to,
    i_vector,
    identity_morphism,
    inports,
    interface,
    iports,
    is_connected,
    is_pushable,
    make_trivial,
    morphism,
    o_vector,
    outports,
    parallel_compose,
    pushout,
    pushout_violations,
    sequential_compose,
    validate_computon,
    validate_morphism,
    verify_universal_property,
)
from computons.compose import (
    default_pairing,
    glue,
    mediating_morphisms,
    parallel_conditions,
    parallel_diagram_violations,
    sequential_span,
)
from computons.errors import (
    InvalidPairingError,
    InvalidSpanError,
    NotParallelisableError,
    NotSequentiableError,
    PushoutUndefinedError,
    SequencingRejected,
)
from computons.fixtures import APEX0, FORK, GLUE, JOIN, LAMBDA1, LAMBDA2, LEFT_LEG, RIGHT_LEG, UNIT
from helpers import chain, inclusion

GLUED = Span(APEX0, LEFT_LEG, RIGHT_LEG)


class TestSpan:
    def test_legs_must_share_apex(self):
        with pytest.raises(InvalidSpanError):
            Span(APEX0, LEFT_LEG, identity_morphism(LAMBDA2))

    def test_invalid_leg(self):
        bad = morphism(APEX0, LAMBDA1, ports={"a": "q1", "b": "q1"})
        with pytest.raises(InvalidSpanError):
            is_pushable(Span(APEX0, bad, RIGHT_LEG))


class TestPushout:
    def test_glued_span(self):
        assert is_pushable(GLUED).ok
        po = pushout(GLUED)
        assert validate_morphism(po.left_inj).ok and validate_morphism(po.right_inj).ok
        assert compose_morphisms(po.left_inj, LEFT_LEG) == compose_morphisms(po.right_inj, RIGHT_LEG)
        assert po.result == sequential_compose(LAMBDA1, LAMBDA2, [("q1", "r0"), ("o1", "j1")]).result

    def test_naming_and_provenance(self):
        po = pushout(GLUED)
        assert "L.q1=R.r0" in po.result.ports and "L.o1=R.j1" in po.result.ports
        assert po.left_inj.port_map["q1"] == po.right_inj.port_map["r0"] == "L.q1=R.r0"
        assert set(po.provenance["L.q1=R.r0"]) == {"L.q1", "R.r0"}

    def test_apex_iso_to_left_gives_right(self):
        small = chain("a", "u", "b")
        big = chain("a", "u", "b", "v", "c")
        span = Span(small, identity_morphism(small), inclusion(small, big))
        assert is_pushable(span).ok
        assert are_isomorphic(pushout(span).result, big)

    def test_universal_property_identity_cocone(self):
        po = pushout(GLUED)
        assert verify_universal_property(GLUED, po, (po.result, po.left_inj, po.right_inj))
        (only,) = mediating_morphisms(po, po.result, po.left_inj, po.right_inj)
        assert only == identity_morphism(po.result)

    def test_universal_property_extra_port(self):
        po = pushout(GLUED)
        bigger = Computon.build(
            units=sorted(po.result.units),
            ports={**po.result.colour_of, "spare": 0},
            out_edges=[(e, *po.result.out_edges[e]) for e in po.result.out_edges],
            in_edges=[(f, *po.result.in_edges[f]) for f in po.result.in_edges],
        )
        into = inclusion(po.result, bigger)
        g1, g2 = compose_morphisms(into, po.left_inj), compose_morphisms(into, po.right_inj)
        assert verify_universal_property(GLUED, po, (bigger, g1, g2))

    def test_non_commuting_cocone_rejected(self):
        # swap the roles of the two fused ports on one side only: the square fails
        po = pushout(GLUED)
        assert not verify_universal_property(GLUED, po, (po.result, po.left_inj, po.left_inj))
        swapped = morphism(
            LAMBDA2,
            po.result,
            ports={**po.right_inj.port_map, "r0": "R.r1", "r1": "L.q1=R.r0"},
            units=po.right_inj.unit_map,
            out_edges=po.right_inj.out_edge_map,
            in_edges=po.right_inj.in_edge_map,
        )
        assert not verify_universal_property(GLUED, po, (po.result, po.left_inj, swapped))

    def test_not_pushable_raises(self):
        inner = chain("a", "u", "m", "v", "b")
        point = Computon.build(ports={"x": 0})
        left = morphism(point, inner, ports={"x": "m"})
        right = morphism(point, GLUE, ports={"x": "p1"})
        span = Span(point, left, right)
        report = is_pushable(span)
        assert not report.ok and report.violations[0].element == "m"
        with pytest.raises(PushoutUndefinedError):
            pushout(span)


class TestPushableGaps:
    """Spans where pushability and the existence of a valid gluing disagree."""

    @staticmethod
    def _forward_gap():
        apex = Computon.build(
            units=["u"], ports={"a": 0, "b": 0, "p": 0}, out_edges=[("e_u", "u", "b")], in_edges=[("f_u", "a", "u")]
        )
        left = Computon.build(
            units=["u", "v"],
            ports={"a": 0, "b": 0, "p": 0, "q": 0},
            out_edges=[("e_u", "u", "b"), ("ep", "u", "p"), ("e_v", "v", "q")],
            in_edges=[("f_u", "a", "u"), ("f_v", "p", "v")],
        )
        right = Computon.build(
            units=["u"],
            ports={"a": 0, "b": 0, "p": 0},
            out_edges=[("e_u", "u", "b"), ("ep", "u", "p")],
            in_edges=[("f_u", "a", "u")],
        )
        return Span(apex, inclusion(apex, left), inclusion(apex, right))

    def test_not_pushable_yet_gluing_is_valid(self):
        span = self._forward_gap()
        assert not is_pushable(span).ok
        po = glue(span)
        assert validate_computon(po.result).ok
        assert validate_morphism(po.left_inj).ok and validate_morphism(po.right_inj).ok
        with pytest.raises(PushoutUndefinedError):
            pushout(span)

    def test_pushable_yet_gluing_is_invalid(self):
        apex = make_trivial([0, 0])
        x, y = sorted(apex.ports)
        span = Span(apex, morphism(apex, GLUE, ports={x: "p2", y: "p1"}), morphism(apex, GLUE, ports={x: "p1", y: "p2"}))
        assert is_pushable(span).ok
        assert not validate_computon(glue(span).result).ok
        assert pushout_violations(span)
        with pytest.raises(PushoutUndefinedError):
            pushout(span)


class TestCoproduct:
    def test_fork_join(self):
        co = coproduct(FORK, JOIN)
        assert len(co.result.units) == 2 and len(co.result.ports) == 6
        assert co.result.colours == {0}
        for inj in (co.inj_a, co.inj_b):
            assert validate_morphism(inj).ok
            assert i_vector(inj) == o_vector(inj) == frozenset()

    def test_interface_is_disjoint_union(self):
        co = coproduct(LAMBDA1, LAMBDA2)
        assert inports(co.result) == co.inj_a.ports_image(inports(LAMBDA1)) | co.inj_b.ports_image(inports(LAMBDA2))
        assert outports(co.result) == co.inj_a.ports_image(outports(LAMBDA1)) | co.inj_b.ports_image(outports(LAMBDA2))
        assert co.result.colours == LAMBDA1.colours | LAMBDA2.colours

    def test_copair_of_injections_is_identity(self):
        co = coproduct(FORK, JOIN)
        assert copair(co, co.inj_a, co.inj_b) == identity_morphism(co.result)

    def test_copair_triangles(self):
        co = coproduct(GLUE, GLUE)
        chained = sequential_compose(GLUE, GLUE).pushout
        pair = copair(co, chained.left_inj, chained.right_inj)
        assert compose_morphisms(pair, co.inj_a) == chained.left_inj
        assert compose_morphisms(pair, co.inj_b) == chained.right_inj


class TestSequential:
    def test_glued_partial(self):
        comp = sequential_compose(LAMBDA1, LAMBDA2, [("q1", "r0"), ("o1", "j1")])
        assert comp.report.mode == "partial"
        assert comp.report.fused_ports == (("o1", "j1"), ("q1", "r0"))
        assert sorted(comp.result.colour_of[p] for p in iports(comp.result)) == [0, 3]

    def test_total_when_every_port_fuses(self):
        comp = sequential_compose(LAMBDA1, LAMBDA2, [("q1", "r0"), ("o1", "j1"), ("o2", "j2")])
        assert comp.report.mode == "total"
        po = comp.pushout
        assert po.left_inj.ports_image(inports(LAMBDA1)) == inports(comp.result)
        assert po.right_inj.ports_image(outports(LAMBDA2)) == outports(comp.result)

    def test_default_pairing(self):
        assert default_pairing(LAMBDA1, LAMBDA2) == [("q1", "r0")]
        assert sequential_compose(LAMBDA1, LAMBDA2).report.fused_ports == (("q1", "r0"),)

    def test_glue_chain(self):
        c = sequential_compose(GLUE, GLUE).result
        assert len(c.units) == 2 and is_connected(c)

    def test_unit_operand(self):
        with pytest.raises(NotSequentiableError, match="operand not connected \\(left\\)"):
            sequential_compose(UNIT, LAMBDA1)

    @pytest.mark.parametrize(
        "pairing",
        [[], [("q1", "r0"), ("q1", "r1")], [("q0", "r0")], [("q1", "r1")], [("o1", "r0")], [("q1", "zz")]],
    )
    def test_bad_pairings(self, pairing):
        with pytest.raises(InvalidPairingError):
            sequential_span(LAMBDA1, LAMBDA2, pairing)

    def test_condition_i_nontrivial_apex(self):
        with pytest.raises(SequencingRejected) as err:
            check_sequential(Span(GLUE, identity_morphism(GLUE), identity_morphism(GLUE)))
        assert err.value.condition == "i"
        assert str(err.value).startswith("condition (i) failed")

    def test_condition_i_stray_apex_port(self):
        apex = make_trivial([0])
        (x,) = apex.ports
        span = Span(apex, morphism(apex, LAMBDA1, ports={x: "q0"}), morphism(apex, LAMBDA2, ports={x: "r0"}))
        with pytest.raises(SequencingRejected) as err:
            check_sequential(span)
        assert err.value.condition == "i"

    def test_condition_ii(self):
        apex = make_trivial([0])
        (x,) = apex.ports
        two = coproduct(GLUE, GLUE).result
        out = min(interface(two).ec_outports)
        span = Span(apex, morphism(apex, two, ports={x: out}), morphism(apex, GLUE, ports={x: "p1"}))
        with pytest.raises(SequencingRejected) as err:
            check_sequential(span)
        assert err.value.condition == "ii"

    def test_condition_iii(self):
        inner = chain("a", "u", "m", "v", "b")
        apex = make_trivial([0])
        (x,) = apex.ports
        span = Span(apex, morphism(apex, inner, ports={x: "m"}), morphism(apex, GLUE, ports={x: "p1"}))
        with pytest.raises(SequencingRejected) as err:
            check_sequential(span)
        assert err.value.condition == "iii"

    def test_condition_iv(self):
        inner = chain("a", "u", "m", "v", "b")
        apex = make_trivial([0])
        (x,) = apex.ports
        span = Span(apex, morphism(apex, GLUE, ports={x: "p2"}), morphism(apex, inner, ports={x: "m"}))
        with pytest.raises(SequencingRejected) as err:
            check_sequential(span)
        assert err.value.condition == "iv"

    def test_composite_is_not_connected_in_the_strict_sense(self):
        # every e-inport must reach every e-outport; the unfused R.j2 never reaches L.o2
        c = sequential_compose(LAMBDA1, LAMBDA2, [("q1", "r0"), ("o1", "j1")]).result
        assert not flows_to(c, "R.j2", "L.o2")
        assert not is_connected(c)
        assert flows_to(c, "L.q0", "R.w1")


class TestParallel:
    def test_glue_glue(self):
        pc = parallel_compose(GLUE, GLUE)
        c = pc.result
        assert len(c.units) == 4
        assert len(iports(c)) == 4 and {c.colour_of[p] for p in iports(c)} == {0}
        assert len(interface(c).ec_inports) == len(interface(c).ec_outports) == 1
        assert is_connected(c)

    def test_diagram_is_retained(self):
        pc = parallel_compose(LAMBDA1, LAMBDA2)
        assert {f"lambda{i}" for i in range(17)} | {"lambda2+lambda10"} == set(pc.objects)
        assert {f"alpha{i}" for i in range(1, 29)} == set(pc.morphisms)
        assert parallel_conditions(pc) == []
        assert parallel_diagram_violations(pc) == []
        assert pc.objects["lambda16"] == pc.result
        assert {r.mode for r in pc.sequencing.values()} == {"partial"}

    def test_commutative_up_to_iso(self):
        ab = parallel_compose(LAMBDA1, LAMBDA2).result
        ba = parallel_compose(LAMBDA2, LAMBDA1).result
        assert ab != ba and are_isomorphic(ab, ba)

    def test_side_not_connected_in_the_strict_sense(self):
        c = parallel_compose(LAMBDA1, LAMBDA2).result
        assert not is_connected(c)

    def test_unconnected_operand(self):
        with pytest.raises(NotParallelisableError):
            parallel_compose(UNIT, GLUE)
