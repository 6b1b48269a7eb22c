"""Two spans on which "pushable" and "has a valid gluing" disagree."""

from __future__ import annotations

from computons import Computon, Span, is_pushable, morphism, make_glue, make_trivial, validate_computon
from computons.compose import glue, pushout_violations

# 1. A port that is free in the apex becomes internal on the left and gains a
#    producer on the right.  The span is not pushable, yet the gluing is fine.
apex = Computon.build(units=["u"], ports={"a": 0, "b": 0, "p": 0}, out_edges=[("e", "u", "b")], in_edges=[("f", "a", "u")])
left = Computon.build(
    units=["u", "v"],
    ports={"a": 0, "b": 0, "p": 0, "q": 0},
    out_edges=[("e", "u", "b"), ("ep", "u", "p"), ("ev", "v", "q")],
    in_edges=[("f", "a", "u"), ("fv", "p", "v")],
)
right = Computon.build(
    units=["u"], ports={"a": 0, "b": 0, "p": 0}, out_edges=[("e", "u", "b"), ("ep", "u", "p")], in_edges=[("f", "a", "u")]
)
ident = lambda src, tgt: morphism(
    src, tgt, ports={p: p for p in src.ports}, units={u: u for u in src.units},
    out_edges={e: e for e in src.out_edges}, in_edges={e: e for e in src.in_edges},
)
span = Span(apex, ident(apex, left), ident(apex, right))
print("pushable:", is_pushable(span).ok)
print("gluing problems:", pushout_violations(span))
print("glued computon valid:", validate_computon(glue(span).result).ok)

# 2. Two glues closed into a loop: pushable, but nothing is left on the outside.
g = make_glue()
pt = make_trivial([0, 0])
x, y = sorted(pt.ports)
loop = Span(pt, morphism(pt, g, ports={x: "p2", y: "p1"}), morphism(pt, g, ports={x: "p1", y: "p2"}))
print("pushable:", is_pushable(loop).ok)
print("glued computon problems:", sorted(set(validate_computon(glue(loop).result).clauses)))
