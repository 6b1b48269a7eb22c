"""Text formats: the ``.cmp`` description language, its serializer, and DOT export.

A document is a sequence of blocks::

    computon Glue {
      colours: 0;
      ports: a: 0, b: 0;
      units: u;
      edges: a -> u, u -> b;   # direction follows the endpoint kinds
    }
    morphism M : Unit -> Glue { ports: p1 => a; units: ; edges: ; }
    span S { apex: Unit; left: M; right: M2; }
    marking Start on Glue { a = 1; }

Names that are not plain identifiers are written as double-quoted strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterator

from .compose import Span
from .core import Computon, Direction, interface, validate_computon
from .errors import ComputonError, InvalidSpanError, MalformedInputError
from .morphism import ComputonMorphism, validate_morphism
from .semantics import MarkedComputon, make_marking

KEYWORDS = frozenset(
    {"computon", "morphism", "span", "marking", "on", "colours", "ports", "units", "edges", "apex", "left", "right"}
)
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")
_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<nat>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<punct>->|=>|[{}:;,=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(ComputonError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(map(str, self.diagnostics)))


@dataclass(frozen=True)
class Declaration:
    kind: str  # computon | morphism | span | marking
    name: str
    value: Any
    line: int
    column: int


@dataclass
class SourceDocument:
    declarations: list[Declaration] = field(default_factory=list)

    def __getitem__(self, name: str):
        for decl in self.declarations:
            if decl.name == name:
                return decl.value
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(d.name == name for d in self.declarations)

    def names(self, kind: str | None = None) -> list[str]:
        return [d.name for d in self.declarations if kind is None or d.kind == kind]

    def declaration(self, name: str) -> Declaration:
        for decl in self.declarations:
            if decl.name == name:
                return decl
        raise KeyError(name)

    def add(self, kind: str, name: str, value) -> None:
        if name in self:
            raise MalformedInputError(f"duplicate declaration {name!r}")
        self.declarations.append(Declaration(kind, name, value, 0, 0))


# -- lexer -------------------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # string | nat | ident | punct | eof
    text: str
    value: Any
    line: int
    column: int


def _lex(text: str) -> list[_Tok]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError([Diagnostic(line, col, f"unexpected character {text[pos]!r}")])
        kind, chunk = m.lastgroup, m.group()
        if kind == "string":
            try:
                value = json.loads(chunk)
            except json.JSONDecodeError:
                raise ParseError([Diagnostic(line, col, "malformed string literal")]) from None
            out.append(_Tok("string", chunk, value, line, col))
        elif kind == "nat":
            out.append(_Tok("nat", chunk, int(chunk), line, col))
        elif kind in ("ident", "punct"):
            out.append(_Tok(kind, chunk, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", None, line, pos - line_start + 1))
    return out


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, strict: bool):
        self.toks = _lex(text)
        self.i = 0
        self.strict = strict
        self.doc = SourceDocument()

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ParseError([Diagnostic(tok.line, tok.column, message)])

    def describe(self, tok: _Tok) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self.describe(self.tok)}")
        tok = self.tok
        self.i += 1
        return tok

    def name(self) -> tuple[str, _Tok]:
        tok = self.tok
        if tok.kind == "string" or (tok.kind == "ident" and tok.text not in KEYWORDS):
            self.i += 1
            return tok.value, tok
        raise self.error(f"expected a name, found {self.describe(tok)}")

    def nat(self) -> int:
        tok = self.tok
        if tok.kind != "nat":
            raise self.error(f"expected a natural number, found {self.describe(tok)}")
        self.i += 1
        return tok.value

    def items(self, item) -> list:
        """Comma-separated list up to (and consuming) ``;``; may be empty."""
        out = []
        if self.at(";"):
            self.i += 1
            return out
        while True:
            out.append(item())
            if self.at(","):
                self.i += 1
                continue
            self.expect(";")
            return out

    def section(self, label: str, item, optional: bool = False) -> list:
        if optional and not self.at(label):
            return []
        self.expect(label)
        self.expect(":")
        return self.items(item)

    def lookup(self, name: str, kind: str, tok: _Tok):
        if name not in self.doc:
            raise self.error(f"unresolved reference to {kind} {name!r}", tok)
        decl = self.doc.declaration(name)
        if decl.kind != kind:
            raise self.error(f"{name!r} is a {decl.kind}, expected a {kind}", tok)
        return decl.value

    # grammar
    def document(self) -> SourceDocument:
        if self.tok.kind == "eof":
            raise self.error("empty document")
        while self.tok.kind != "eof":
            start = self.tok
            if self.at("computon"):
                name, value = self.computon()
            elif self.at("morphism"):
                name, value = self.morphism()
            elif self.at("span"):
                name, value = self.span()
            elif self.at("marking"):
                name, value = self.marking()
            else:
                raise self.error(f"expected a block keyword, found {self.describe(start)}")
            self.doc.declarations.append(Declaration(start.text, name, value, start.line, start.column))
        return self.doc

    def declared_name(self) -> tuple[str, _Tok]:
        name, tok = self.name()
        if name in self.doc:
            raise self.error(f"duplicate declaration {name!r}", tok)
        return name, tok

    def computon(self):
        self.expect("computon")
        name, name_tok = self.declared_name()
        self.expect("{")
        colours = self.section("colours", self.nat)
        ports = self.section("ports", self.port_item)
        units = self.section("units", self.name)
        edges = self.section("edges", self.edge_item)
        self.expect("}")

        port_colour, unit_names = {}, set()
        for (pname, tok), colour in ports:
            if pname in port_colour:
                raise self.error(f"duplicate port {pname!r}", tok)
            port_colour[pname] = colour
        for uname, tok in units:
            if uname in unit_names:
                raise self.error(f"duplicate unit {uname!r}", tok)
            if uname in port_colour:
                raise self.error(f"{uname!r} is declared both as a port and as a unit", tok)
            unit_names.add(uname)
        if len(set(colours)) != len(colours):
            raise self.error("duplicate colour in colour list", name_tok)

        explicit = set()
        for label, _, _ in edges:
            if label is not None:
                if label[0] in explicit:
                    raise self.error(f"duplicate edge {label[0]!r}", label[1])
                explicit.add(label[0])
        fresh = {"out": 0, "in": 0}

        def next_name(prefix: str, key: str) -> str:
            while True:
                fresh[key] += 1
                candidate = f"{prefix}{fresh[key]}"
                if candidate not in explicit:
                    return candidate

        out_edges, in_edges = {}, {}
        for label, (a, a_tok), (b, b_tok) in edges:
            for x, t in ((a, a_tok), (b, b_tok)):
                if x not in port_colour and x not in unit_names:
                    raise self.error(f"unknown port or unit {x!r}", t)
            if a in unit_names and b in port_colour:
                ename = label[0] if label else next_name("e", "out")
                out_edges[ename] = (a, b)
            elif a in port_colour and b in unit_names:
                ename = label[0] if label else next_name("f", "in")
                in_edges[ename] = (a, b)
            else:
                raise self.error("edge must connect a port and a unit", a_tok)
        try:
            c = Computon(unit_names, set(port_colour), out_edges, in_edges, set(colours), port_colour)
        except ComputonError as exc:
            raise self.error(str(exc), name_tok) from None
        if self.strict:
            report = validate_computon(c)
            if not report.ok:
                raise self.error(f"computon {name!r} is invalid: {report}", name_tok)
        return name, c

    def port_item(self):
        name = self.name()
        self.expect(":")
        return name, self.nat()

    def edge_item(self):
        first = self.name()
        label = None
        if self.at(":"):
            self.i += 1
            label, first = first, self.name()
        self.expect("->")
        return label, first, self.name()

    def map_item(self):
        a = self.name()
        self.expect("=>")
        return a, self.name()

    def morphism(self):
        self.expect("morphism")
        name, name_tok = self.declared_name()
        self.expect(":")
        src_name, src_tok = self.name()
        self.expect("->")
        tgt_name, tgt_tok = self.name()
        source = self.lookup(src_name, "computon", src_tok)
        target = self.lookup(tgt_name, "computon", tgt_tok)
        self.expect("{")
        ports = self.section("ports", self.map_item, optional=True)
        units = self.section("units", self.map_item, optional=True)
        edges = self.section("edges", self.map_item, optional=True)
        self.expect("}")

        def as_dict(pairs, what):
            out = {}
            for (a, a_tok), (b, _) in pairs:
                if a in out:
                    raise self.error(f"{what} {a!r} is mapped twice", a_tok)
                out[a] = b
            return out

        out_map, in_map = {}, {}
        for (a, a_tok), (b, _) in edges:
            if a in source.out_edges:
                bucket = out_map
            elif a in source.in_edges:
                bucket = in_map
            else:
                raise self.error(f"unknown source edge {a!r}", a_tok)
            if a in bucket:
                raise self.error(f"edge {a!r} is mapped twice", a_tok)
            bucket[a] = b
        m = ComputonMorphism(
            source, target, as_dict(units, "unit"), as_dict(ports, "port"), out_map, in_map
        )
        try:
            report = validate_morphism(m)
        except MalformedInputError as exc:
            raise self.error(str(exc), name_tok) from None
        if self.strict and not report.ok:
            raise self.error(f"morphism {name!r} is invalid: {report}", name_tok)
        return name, m

    def span(self):
        self.expect("span")
        name, name_tok = self.declared_name()
        self.expect("{")
        parts = {}
        for label, kind in (("apex", "computon"), ("left", "morphism"), ("right", "morphism")):
            self.expect(label)
            self.expect(":")
            ref, tok = self.name()
            parts[label] = self.lookup(ref, kind, tok)
            self.expect(";")
        self.expect("}")
        try:
            value = Span(parts["apex"], parts["left"], parts["right"])
        except InvalidSpanError as exc:
            raise self.error(str(exc), name_tok) from None
        return name, value

    def marking(self):
        self.expect("marking")
        name, _ = self.declared_name()
        self.expect("on")
        ref, ref_tok = self.name()
        c = self.lookup(ref, "computon", ref_tok)
        self.expect("{")

        def item():
            port = self.name()
            self.expect("=")
            return port, self.nat()

        assignment = self.items(item) if not self.at("}") else []
        self.expect("}")
        seen = set()
        for (port, tok), _ in assignment:
            if port not in c.ports:
                raise self.error(f"unknown port {port!r} of {ref!r}", tok)
            if port in seen:
                raise self.error(f"port {port!r} is marked twice", tok)
            seen.add(port)
        return name, make_marking(c, [(p, n) for (p, _), n in assignment])


def parse(text: str, strict: bool = True) -> SourceDocument:
    """Parse a ``.cmp`` document.

    With ``strict`` every computon must validate and every morphism must be
    a computon morphism; otherwise only structural errors are diagnosed and
    the axioms are left to :func:`validate_computon`.  Raises
    :class:`ParseError` carrying line/column diagnostics.
    """
    return _Parser(text, strict).document()


# -- serializer --------------------------------------------------------------


def quote(name: str) -> str:
    if _IDENT.match(name) and name not in KEYWORDS:
        return name
    return json.dumps(name, ensure_ascii=False)


def _computon_block(name: str, c: Computon) -> str:
    ordered_edges = sorted(
        [(e, f"{quote(e)}: {quote(u)} -> {quote(p)}") for e, (u, p) in c.out_edges.items()]
        + [(f, f"{quote(f)}: {quote(p)} -> {quote(u)}") for f, (p, u) in c.in_edges.items()]
    )
    lines = [
        f"computon {quote(name)} {{",
        f"  colours: {', '.join(str(x) for x in sorted(c.colours))};",
        f"  ports: {', '.join(f'{quote(p)}: {c.colour_of[p]}' for p in sorted(c.ports))};",
        f"  units: {', '.join(quote(u) for u in sorted(c.units))};",
        f"  edges: {', '.join(text for _, text in ordered_edges)};",
        "}",
    ]
    return "\n".join(lines) + "\n"


def _morphism_block(name: str, m: ComputonMorphism, src: str, tgt: str) -> str:
    pairs = lambda d: ", ".join(f"{quote(a)} => {quote(b)}" for a, b in sorted(d.items()))
    edges = dict(m.out_edge_map)
    edges.update(m.in_edge_map)
    lines = [
        f"morphism {quote(name)} : {quote(src)} -> {quote(tgt)} {{",
        f"  ports: {pairs(m.port_map)};",
        f"  units: {pairs(m.unit_map)};",
        f"  edges: {pairs(edges)};",
        "}",
    ]
    return "\n".join(lines) + "\n"


def _marking_block(name: str, m: MarkedComputon, target: str) -> str:
    counts = ", ".join(f"{quote(p)} = {n}" for p, n in m.counts().items())
    return f"marking {quote(name)} on {quote(target)} {{ {counts}; }}\n" if counts else (
        f"marking {quote(name)} on {quote(target)} {{ }}\n"
    )


class _Namer:
    """Assigns declaration names to computons while serializing composite values."""

    def __init__(self):
        self.blocks: list[str] = []
        self.names: dict[Computon, str] = {}
        self.used: set[str] = set()

    def fresh(self, base: str) -> str:
        name, k = base, 1
        while name in self.used:
            k += 1
            name = f"{base}{k}"
        self.used.add(name)
        return name

    def computon(self, c: Computon, base: str) -> str:
        if c not in self.names:
            self.names[c] = self.fresh(base)
            self.blocks.append(_computon_block(self.names[c], c))
        return self.names[c]

    def morphism(self, m: ComputonMorphism, base: str) -> str:
        src = self.computon(m.source, f"{base}_source")
        tgt = self.computon(m.target, f"{base}_target")
        name = self.fresh(base)
        self.blocks.append(_morphism_block(name, m, src, tgt))
        return name


def serialize(value, name: str = "C") -> str:
    """Canonical text for a computon, morphism, span, marking or whole document.

    Output is sorted by identifier inside each block, every edge is named,
    and ``parse(serialize(x))`` rebuilds a structurally equal value.
    """
    if isinstance(value, SourceDocument):
        return _serialize_document(value)
    namer = _Namer()
    if isinstance(value, Computon):
        namer.computon(value, name)
    elif isinstance(value, ComputonMorphism):
        namer.morphism(value, name)
    elif isinstance(value, Span):
        apex = namer.computon(value.apex, f"{name}_apex")
        left = namer.morphism(value.left, f"{name}_left")
        right = namer.morphism(value.right, f"{name}_right")
        namer.blocks.append(
            f"span {quote(namer.fresh(name))} {{ apex: {quote(apex)}; left: {quote(left)}; right: {quote(right)}; }}\n"
        )
    elif isinstance(value, MarkedComputon):
        target = namer.computon(value.computon, f"{name}_net")
        namer.blocks.append(_marking_block(namer.fresh(name), value, target))
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return "\n".join(namer.blocks)


def _serialize_document(doc: SourceDocument) -> str:
    """Declarations in order; references resolve by object identity, then by equality."""
    names: dict[int, str] = {}
    by_value: dict[Any, str] = {}

    def ref(value) -> str:
        if id(value) in names:
            return names[id(value)]
        return by_value[value]

    blocks = []
    for d in doc.declarations:
        if d.kind == "computon":
            blocks.append(_computon_block(d.name, d.value))
        elif d.kind == "morphism":
            blocks.append(_morphism_block(d.name, d.value, ref(d.value.source), ref(d.value.target)))
        elif d.kind == "span":
            s = d.value
            blocks.append(
                f"span {quote(d.name)} {{ apex: {quote(ref(s.apex))}; "
                f"left: {quote(ref(s.left))}; right: {quote(ref(s.right))}; }}\n"
            )
        elif d.kind == "marking":
            blocks.append(_marking_block(d.name, d.value, ref(d.value.computon)))
        names[id(d.value)] = d.name
        by_value.setdefault(d.value, d.name)
    return "\n".join(blocks)


# -- DOT export --------------------------------------------------------------


def _dot_id(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def _attrs(**kw) -> str:
    return "[" + ", ".join(f"{k}={_dot_id(str(v))}" for k, v in kw.items()) + "]"


def export_dot(value, syntax: str = "computon", name: str = "computon") -> str:
    """Graphviz text for a computon or marked computon.

    ``petri`` draws places as circles labelled by colour and units as black
    bars.  ``computon`` draws control ports as squares and data ports as
    circles; in-ports are hollow, out-ports filled, and inoutports and
    i-ports half-filled.  Control-flow edges are dashed.  Token counts of a
    marking appear as external labels on the places.
    """
    if syntax not in ("petri", "computon"):
        raise ValueError(f"unknown syntax {syntax!r}; use 'petri' or 'computon'")
    marking = value if isinstance(value, MarkedComputon) else None
    c = value.computon if marking else value
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=\"LR\";"]
    face = interface(c)

    for p in sorted(c.ports):
        colour = c.colour_of[p]
        extra = {}
        if marking and marking.count(p):
            extra["xlabel"] = f"{marking.count(p)} token" + ("s" if marking.count(p) > 1 else "")
        if syntax == "petri":
            attrs = dict(shape="circle", label=str(colour), **{"class": "place"}, **extra)
        else:
            control = colour == 0
            direction = face.classes[p].direction
            if direction is Direction.E_INPORT:
                fill, style, fillcolor = "hollow", "solid", "white"
            elif direction is Direction.E_OUTPORT:
                fill, style, fillcolor = "filled", "filled", "black"
            else:
                fill = "half-filled"
                style = "striped" if control else "wedged"
                fillcolor = "black;0.5:white"
            attrs = dict(
                shape="square" if control else "circle",
                label="" if control else str(colour),
                style=style,
                fillcolor=fillcolor,
                tooltip=p,
                **{"class": f"port {'control' if control else 'data'} {fill}"},
                **extra,
            )
        lines.append(f"  {_dot_id(p)} {_attrs(**attrs)};")
    for u in sorted(c.units):
        if syntax == "petri":
            attrs = dict(shape="box", style="filled", fillcolor="black", width="0.1", label="", tooltip=u)
            attrs["class"] = "transition"
        else:
            attrs = dict(shape="box", label=u)
            attrs["class"] = "unit"
        lines.append(f"  {_dot_id(u)} {_attrs(**attrs)};")
    arcs = [(e, u, p, c.colour_of[p]) for e, (u, p) in c.out_edges.items()]
    arcs += [(f, p, u, c.colour_of[p]) for f, (p, u) in c.in_edges.items()]
    for e, a, b, colour in sorted(arcs):
        if syntax == "petri":
            attrs = dict(style="solid", tooltip=e)
            attrs["class"] = "arc"
        else:
            flow = "control" if colour == 0 else "data"
            attrs = dict(style="dashed" if colour == 0 else "solid", tooltip=e)
            attrs["class"] = f"edge {flow}"
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} {_attrs(**attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- DOT reading and validation ----------------------------------------------

_DOT_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*|/\*.*?\*/)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
  | (?P<punct>->|--|[{}\[\];,=])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class DotGraph:
    name: str
    nodes: dict[str, dict[str, str]]
    edges: list[tuple[str, str, dict[str, str]]]
    graph_attrs: dict[str, str]


class DotSyntaxError(ComputonError):
    pass


def _dot_tokens(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise DotSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup == "string":
            yield "id", json.loads(m.group())
        elif m.lastgroup == "id":
            yield "id", m.group()
        elif m.lastgroup == "punct":
            yield "punct", m.group()
        pos = m.end()


def parse_dot(text: str) -> DotGraph:
    """Read the ``digraph`` subset produced by :func:`export_dot`."""
    toks = list(_dot_tokens(text))
    toks.append(("eof", ""))
    i = 0

    def peek(k: int = 0):
        return toks[min(i + k, len(toks) - 1)]

    def take(kind=None, text_=None):
        nonlocal i
        tk = toks[i]
        if (kind and tk[0] != kind) or (text_ is not None and tk[1] != text_):
            raise DotSyntaxError(f"expected {text_ or kind}, found {tk[1] or 'end of input'!r}")
        i += 1
        return tk[1]

    def attr_list() -> dict[str, str]:
        out = {}
        take("punct", "[")
        while peek() != ("punct", "]"):
            key = take("id")
            take("punct", "=")
            out[key] = take("id")
            if peek() in (("punct", ","), ("punct", ";")):
                take()
        take("punct", "]")
        return out

    take("id", "digraph")
    name = take("id") if peek()[0] == "id" else ""
    take("punct", "{")
    nodes: dict[str, dict[str, str]] = {}
    edges: list = []
    graph_attrs: dict[str, str] = {}
    while peek() != ("punct", "}"):
        if peek()[0] == "eof":
            raise DotSyntaxError("unbalanced braces: missing '}'")
        first = take("id")
        if peek() == ("punct", "="):
            take()
            graph_attrs[first] = take("id")
        elif peek() == ("punct", "->"):
            take()
            second = take("id")
            attrs = attr_list() if peek() == ("punct", "[") else {}
            edges.append((first, second, attrs))
        elif first in ("graph", "node", "edge"):
            attr_list()
        else:
            attrs = attr_list() if peek() == ("punct", "[") else {}
            nodes.setdefault(first, {}).update(attrs)
        if peek() == ("punct", ";"):
            take()
    take("punct", "}")
    if peek()[0] != "eof":
        raise DotSyntaxError("trailing content after the closing brace")
    return DotGraph(name, nodes, edges, graph_attrs)


def validate_dot(text: str) -> list[str]:
    """Problems found in DOT text; empty when it is well formed.

    Checks tokenization, balanced braces, statement structure, that every
    identifier in an emitted statement is quoted, and that edges join
    declared nodes.
    """
    problems = []
    depth = 0
    for kind, chunk in _raw_scan(text):
        if chunk == "{":
            depth += 1
        elif chunk == "}":
            depth -= 1
            if depth < 0:
                problems.append("closing brace without opening brace")
                depth = 0
    if depth:
        problems.append("unbalanced braces")
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.strip()
        if not body or body.startswith("digraph") or body == "}" or "=" in body.split("[")[0] and "->" not in body:
            continue
        head = body.split("[")[0]
        for token in re.findall(r'"(?:[^"\\]|\\.)*"|[^\s";\-><]+', head):
            if not token.startswith('"'):
                problems.append(f"line {lineno}: unquoted identifier {token!r}")
    if problems:
        return problems
    try:
        graph = parse_dot(text)
    except (DotSyntaxError, json.JSONDecodeError) as exc:
        return [str(exc)]
    for a, b, _ in graph.edges:
        for end in (a, b):
            if end not in graph.nodes:
                problems.append(f"edge endpoint {end!r} is not a declared node")
    return problems


def _raw_scan(text: str) -> Iterator[tuple[str, str]]:
    """Braces outside string literals."""
    in_string = escaped = False
    for ch in text:
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch in "{}":
            yield "punct", ch
