"""Run two operands side by side between a fork and a join."""

from __future__ import annotations

from computons import are_isomorphic, inports, interface, make_marking, parallel_compose, run
from computons.compose import parallel_conditions, parallel_diagram_violations
from computons.fixtures import LAMBDA1, LAMBDA2

pc = parallel_compose(LAMBDA1, LAMBDA2)
c = pc.result
face = interface(c)
# element names record where each piece came from in the construction
print(f"{len(c.units)} units, {len(face.iports)} internal control ports")
print("data in :", sorted(c.colour_of[p] for p in face.ed_inports))
print("data out:", sorted(c.colour_of[p] for p in face.ed_outports))
print("side conditions broken:", parallel_conditions(pc) or "none")
print("diagram cells failing:", parallel_diagram_violations(pc) or "none")
print("a|b ≅ b|a:", are_isomorphic(c, parallel_compose(LAMBDA2, LAMBDA1).result))

trace = run(make_marking(c, {p: 1 for p in inports(c)}), policy="random", seed=7)
for ev in trace.events:
    print(ev.step, ev.unit)
print(trace.termination, "after", len(trace.events), "firings")
