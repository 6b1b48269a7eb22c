from __future__ import annotations

from computons import Computon, morphism


def inclusion(source: Computon, target: Computon, **renames):
    """Morphism that sends every element to the same-named one, except ``renames``."""
    f = lambda x: renames.get(x, x)
    return morphism(
        source,
        target,
        ports={p: f(p) for p in source.ports},
        units={u: f(u) for u in source.units},
        out_edges={e: f(e) for e in source.out_edges},
        in_edges={e: f(e) for e in source.in_edges},
    )


def chain(*stages: str, colour: int = 0, extra_units=(), extra_ports=(), extra_out=(), extra_in=()) -> Computon:
    """``p0 -> u1 -> p1 -> u2 -> ...`` with the given alternating names."""
    ports = {name: colour for name in stages[::2]}
    ports.update(dict(extra_ports))
    units = list(stages[1::2]) + list(extra_units)
    out_edges, in_edges = list(extra_out), list(extra_in)
    for i in range(1, len(stages), 2):
        in_edges.append((f"f_{stages[i]}", stages[i - 1], stages[i]))
        out_edges.append((f"e_{stages[i]}", stages[i], stages[i + 1]))
    return Computon.build(units=units, ports=ports, out_edges=out_edges, in_edges=in_edges)
