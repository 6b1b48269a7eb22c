"""Small reference computons used by tests, demos and the CLI."""

from __future__ import annotations

from .core import Computon, make_fork, make_glue, make_join, make_unit
from .morphism import morphism

LAMBDA1 = Computon.build(
    units=["u"],
    ports={"q0": 0, "i1": 1, "i2": 2, "q1": 0, "o1": 3, "o2": 4},
    in_edges=[("f1", "q0", "u"), ("f2", "i1", "u"), ("f3", "i2", "u")],
    out_edges=[("e1", "u", "q1"), ("e2", "u", "o1"), ("e3", "u", "o2")],
)

LAMBDA2 = Computon.build(
    units=["v"],
    ports={"r0": 0, "j1": 3, "j2": 4, "r1": 0, "w1": 5},
    in_edges=[("g1", "r0", "v"), ("g2", "j1", "v"), ("g3", "j2", "v")],
    out_edges=[("h1", "v", "r1"), ("h2", "v", "w1")],
)

# Fuses the control outport and the colour-3 outport of LAMBDA1 with the
# control inport and colour-3 inport of LAMBDA2, leaving colour 4 unfused.
APEX0 = Computon.build(ports={"a": 0, "b": 3})
LEFT_LEG = morphism(APEX0, LAMBDA1, ports={"a": "q1", "b": "o1"})
RIGHT_LEG = morphism(APEX0, LAMBDA2, ports={"a": "r0", "b": "j1"})

FORK = make_fork()
JOIN = make_join()
GLUE = make_glue()
UNIT = make_unit()
