"""``computons`` command-line front end.

Exit status is 0 on success, 1 when a domain check rejects the input (at
least one named violation is printed), and 2 for usage, I/O and syntax
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dsl
from .compose import (
    check_sequential,
    is_pushable,
    parallel_compose,
    pushout,
    sequential_compose,
)
from .core import classify, interface, validate_computon
from .errors import ComputonError
from .morphism import find_isomorphism, validate_morphism
from .semantics import DEFAULT_STEP_LIMIT, run


class UsageError(Exception):
    pass


class Rejected(Exception):
    """Domain rejection: carries the violations to report."""

    def __init__(self, violations: list[str], payload: dict | None = None):
        self.violations = violations
        self.payload = payload or {}
        super().__init__("; ".join(violations))


# -- helpers -----------------------------------------------------------------


def _load(path: str) -> dsl.SourceDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return dsl.parse(text, strict=False)
    except dsl.ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _get(doc: dsl.SourceDocument, name: str, kind: str):
    if name not in doc:
        raise UsageError(f"no declaration named {name!r}")
    decl = doc.declaration(name)
    if decl.kind != kind:
        raise UsageError(f"{name!r} is a {decl.kind}, expected a {kind}")
    return decl.value


def _operand(doc, name):
    c = _get(doc, name, "computon")
    report = validate_computon(c)
    if not report.ok:
        raise Rejected([f"{name}: {v}" for v in report.violations])
    return c


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _ports_by_colour(c, ports) -> list[str]:
    return [f"{p}:{c.colour_of[p]}" for p in sorted(ports)]


def _interface_summary(c) -> dict:
    face = interface(c)
    return {
        "ec_inports": _ports_by_colour(c, face.ec_inports),
        "ed_inports": _ports_by_colour(c, face.ed_inports),
        "ec_outports": _ports_by_colour(c, face.ec_outports),
        "ed_outports": _ports_by_colour(c, face.ed_outports),
        "iports": _ports_by_colour(c, face.iports),
    }


def _split_pair(text: str, left, right) -> tuple[str, str]:
    """Split ``LPORT=RPORT``; port names may themselves contain ``=``."""
    cuts = [i for i, ch in enumerate(text) if ch == "="]
    for i in cuts:
        a, b = text[:i], text[i + 1 :]
        if a in left.ports and b in right.ports:
            return a, b
    if not cuts:
        raise UsageError(f"--pair expects LPORT=RPORT, got {text!r}")
    i = cuts[0]
    return text[:i], text[i + 1 :]


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> dict:
    doc = _load(args.file)
    names = [args.name] if args.name else doc.names()
    if args.name and args.name not in doc:
        raise UsageError(f"no declaration named {args.name!r}")
    results, failures = {}, []
    for name in names:
        decl = doc.declaration(name)
        if decl.kind == "computon":
            report = validate_computon(decl.value)
        elif decl.kind == "morphism":
            report = validate_morphism(decl.value)
        else:
            continue
        results[name] = "ok" if report.ok else [str(v) for v in report.violations]
        failures.extend(f"{name}: {v}" for v in report.violations)
    if failures:
        raise Rejected(failures, {"results": results})
    return {"results": results}


def cmd_classify(args) -> dict:
    c = _operand(_load(args.file), args.name)
    return {"name": args.name, "class": classify(c).value, **_interface_summary(c)}


def cmd_compose_seq(args) -> dict:
    doc = _load(args.file)
    lhs, rhs = _operand(doc, args.left), _operand(doc, args.right)
    pairing = [_split_pair(p, lhs, rhs) for p in args.pair] if args.pair else None
    try:
        comp = sequential_compose(lhs, rhs, pairing)
    except ComputonError as exc:
        raise Rejected([str(exc)]) from None
    name = args.name or f"{args.left}_then_{args.right}"
    text = dsl.serialize(comp.result, name)
    _write(args.output, text)
    return {
        "mode": comp.report.mode,
        "fused": [f"{a}={b}" for a, b in comp.report.fused_ports],
        "result": name,
        "class": classify(comp.result).value,
        **_interface_summary(comp.result),
        **({} if args.output else {"document": text}),
    }


def cmd_compose_par(args) -> dict:
    doc = _load(args.file)
    a, b = _operand(doc, args.a), _operand(doc, args.b)
    try:
        pc = parallel_compose(a, b)
    except ComputonError as exc:
        raise Rejected([str(exc)]) from None
    name = args.name or f"{args.a}_par_{args.b}"
    out = dsl.SourceDocument()
    if args.provenance:
        order = sorted(pc.objects, key=lambda k: (k.count("+"), int(k.split("+")[0][6:])))
        for key in order:
            out.add("computon", key, pc.objects[key])
        for key in sorted(pc.morphisms, key=lambda k: int(k[5:])):
            out.add("morphism", key, pc.morphisms[key])
    out.add("computon", name, pc.result)
    text = dsl.serialize(out)
    _write(args.output, text)
    payload = {"result": name, "class": classify(pc.result).value, **_interface_summary(pc.result)}
    if args.provenance:
        payload["objects"] = sorted(pc.objects)
        payload["morphisms"] = sorted(pc.morphisms, key=lambda k: int(k[5:]))
    if not args.output:
        payload["document"] = text
    return payload


def cmd_pushout(args) -> dict:
    doc = _load(args.file)
    span = _get(doc, args.span, "span")
    for label, leg in (("left", span.left), ("right", span.right)):
        report = validate_morphism(leg)
        if not report.ok:
            raise Rejected([f"{label} leg: {v}" for v in report.violations])
    report = is_pushable(span)
    if not report.ok:
        raise Rejected([f"not pushable: {v}" for v in report.violations])
    try:
        po = pushout(span)
    except ComputonError as exc:
        raise Rejected([str(exc)]) from None
    name = args.name or f"{args.span}_pushout"
    text = dsl.serialize(po.result, name)
    _write(args.output, text)
    payload = {"result": name, "class": classify(po.result).value, **_interface_summary(po.result)}
    try:
        payload["sequencing"] = check_sequential(span).mode
    except ComputonError as exc:
        payload["sequencing"] = f"not sequential: {exc}"
    if not args.output:
        payload["document"] = text
    return payload


def cmd_iso(args) -> dict:
    doc = _load(args.file)
    a, b = _get(doc, args.a, "computon"), _get(doc, args.b, "computon")
    witness = find_isomorphism(a, b)
    if witness is None:
        return {"isomorphic": False, "message": "not isomorphic"}
    fmt = lambda d: [f"{x}=>{y}" for x, y in sorted(d.items())]
    return {
        "isomorphic": True,
        "units": fmt(witness.unit_map),
        "ports": fmt(witness.port_map),
        "out_edges": fmt(witness.out_edge_map),
        "in_edges": fmt(witness.in_edge_map),
    }


def cmd_simulate(args) -> dict:
    doc = _load(args.file)
    c = _operand(doc, args.name)
    marking = _get(doc, args.marking, "marking")
    if marking.computon != c:
        raise UsageError(f"marking {args.marking!r} is not declared on {args.name!r}")
    trace = run(marking, policy=args.policy, seed=args.seed, step_limit=args.steps)
    _write(args.trace, trace.to_text())
    return {
        "events": len(trace.events),
        "termination": trace.termination,
        "final": [f"{p}={n}" for p, n in trace.final.counts().items()],
        "trace": trace.to_text().splitlines(),
    }


def cmd_export(args) -> dict:
    doc = _load(args.file)
    if args.name not in doc:
        raise UsageError(f"no declaration named {args.name!r}")
    decl = doc.declaration(args.name)
    if decl.kind not in ("computon", "marking"):
        raise UsageError(f"{args.name!r} is a {decl.kind}; export needs a computon or a marking")
    c = decl.value if decl.kind == "computon" else decl.value.computon
    report = validate_computon(c)
    if not report.ok:
        raise Rejected([f"{args.name}: {v}" for v in report.violations])
    text = dsl.export_dot(decl.value, args.syntax, name=args.name)
    _write(args.output, text)
    payload = {"syntax": args.syntax, "lines": len(text.splitlines())}
    if not args.output:
        payload["dot"] = text
    return payload


# -- argument parsing and output ---------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="computons", description="Validate, compose, simulate and export computons.")
    p.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check computon and morphism declarations")
    s.add_argument("file")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="class tag and interface of a computon")
    s.add_argument("file")
    s.add_argument("name")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("compose", help="sequential or parallel composition")
    csub = s.add_subparsers(dest="mode", required=True)
    q = csub.add_parser("seq", help="sequential composition")
    q.add_argument("file")
    q.add_argument("left")
    q.add_argument("right")
    q.add_argument("--pair", action="append", metavar="LPORT=RPORT", help="fuse an e-outport with an e-inport")
    q.add_argument("--name", help="name of the composite in the output document")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_compose_seq)
    q = csub.add_parser("par", help="parallel composition")
    q.add_argument("file")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--provenance", action="store_true", help="also write every intermediate object and morphism")
    q.add_argument("--name")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_compose_par)

    s = sub.add_parser("pushout", help="pushout of a declared span")
    s.add_argument("file")
    s.add_argument("span")
    s.add_argument("--name")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_pushout)

    s = sub.add_parser("iso", help="search for an isomorphism")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("simulate", help="run the token game")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--marking", required=True)
    s.add_argument("--policy", choices=("least-id", "random"), default="least-id")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--steps", type=int, default=DEFAULT_STEP_LIMIT)
    s.add_argument("--trace", metavar="OUT.trc")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("export", help="Graphviz export")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--syntax", choices=("petri", "computon"), default="computon")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)
    return p


def _emit_text(payload: dict, out) -> None:
    for key, value in payload.items():
        if key in ("document", "dot"):
            continue
        if isinstance(value, list):
            out.write(f"{key}: {', '.join(map(str, value)) if value else '-'}\n")
        elif isinstance(value, dict):
            for k, v in value.items():
                out.write(f"{k}: {v if isinstance(v, str) else '; '.join(v)}\n")
        else:
            out.write(f"{key}: {value}\n")
    for key in ("document", "dot"):
        if key in payload:
            out.write(payload[key])


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "steps", 0) < 0:
        print("error: --steps must be non-negative", file=sys.stderr)
        return 2
    command = args.command + (f" {args.mode}" if args.command == "compose" else "")
    try:
        payload = {"command": command, "status": "ok", **args.func(args)}
        code = 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Rejected as exc:
        payload = {"command": command, "status": "rejected", "violations": exc.violations, **exc.payload}
        code = 1
    except ComputonError as exc:
        payload = {"command": command, "status": "rejected", "violations": [str(exc)]}
        code = 1
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        _emit_text(payload, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
