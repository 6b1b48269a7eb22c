"""Glue two functional computons end to end and run the result."""

from __future__ import annotations

from pathlib import Path

from computons import flows_to, inports, interface, is_connected, make_marking, parse, run, sequential_compose

doc = parse((Path(__file__).parent / "pair.cmp").read_text())
left, right = doc["Lambda1"], doc["Lambda2"]

comp = sequential_compose(left, right, [("q1", "r0"), ("o1", "j1")])
c = comp.result
face = interface(c)
print(f"mode: {comp.report.mode}, fused: {comp.report.fused_ports}")
for label, ports in (("e-inports", face.inports), ("e-outports", face.outports), ("i-ports", face.iports)):
    print(f"{label:11} " + ", ".join(f"{p}:{c.colour_of[p]}" for p in sorted(ports)))

# R.j2 was not fused, so nothing from the right side reaches L.o2
print("R.j2 reaches L.o2:", flows_to(c, "R.j2", "L.o2"))
print("connected (every e-inport reaches every e-outport):", is_connected(c))

trace = run(make_marking(c, {p: 1 for p in inports(c)}))
print(trace.to_text(), end="")
print("final:", trace.final.counts(), f"({trace.termination})")
