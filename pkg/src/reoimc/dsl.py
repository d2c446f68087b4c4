"""Parser and printer for the textual connector format.

Example::

    circuit LossyFifo {
      lossy(a, b) { gamma_ab = 2.0; gamma_aL = 0.5; }
      node m(b -> c) { gamma_e = 4.0; gamma_d = 4.0; }
      fifo(c, d) { gamma_aB = 1.0; gamma_Bb = 1.0; }
      writer(a) { gamma = 1.0; }
      reader(d) { gamma = 3.0; }
    }
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .circuit import Channel, Circuit, IoSpec
from .primitives import CHANNEL_KINDS, CHANNEL_RATES, NODE_FAMILIES, NodeSpec


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class DslError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<number>-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[{}(),;=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslError(
                [Diagnostic(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")]
            )
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.diags: list[Diagnostic] = []
        self.first_use: dict[str, Token] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DslError(self.diags + [Diagnostic(tok.line, tok.col, message)])

    def note(self, message: str, tok: Token):
        self.diags.append(Diagnostic(tok.line, tok.col, message))

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind == "eof":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected '{text}', found {found}")
        self.i += 1
        return tok

    def ident(self, what: str = "identifier") -> Token:
        tok = self.tok
        if tok.kind != "ident":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected {what}, found {found}")
        self.i += 1
        if what == "port name":
            self.first_use.setdefault(tok.text, tok)
        return tok

    def circuit(self) -> Circuit:
        if self.tok.text != "circuit":
            self.fail("expected 'circuit'")
        self.i += 1
        name = self.ident("circuit name").text
        self.expect("{")
        circ = Circuit(name)
        while self.tok.text != "}":
            if self.tok.kind == "eof":
                self.fail("expected '}' to close the circuit")
            head = self.ident("channel kind, 'node', 'writer' or 'reader'")
            if head.text in CHANNEL_KINDS:
                circ.channels.append(self.channel(head))
            elif head.text == "node":
                circ.nodes.append(self.node(head))
            elif head.text in ("writer", "reader"):
                circ.ios.append(self.io(head))
            else:
                self.note(f"unknown channel kind '{head.text}'", head)
                self.skip_item()
        self.expect("}")
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r} after circuit")
        return circ

    def skip_item(self):
        depth = 0
        while self.tok.kind != "eof":
            t = self.tok.text
            self.i += 1
            if t == "{":
                depth += 1
            elif t == "}":
                depth -= 1
                if depth <= 0:
                    return

    def rates(self) -> list[tuple[Token, float]]:
        self.expect("{")
        out = []
        while self.tok.text != "}":
            name = self.ident("rate name")
            self.expect("=")
            tok = self.tok
            if tok.kind == "ident" and name.text == "family":
                self.i += 1
                out.append((name, tok.text))
            else:
                if tok.kind != "number":
                    self.fail("expected decimal rate")
                self.i += 1
                value = float(tok.text)
                if not value > 0:
                    self.note(f"rate {name.text} must be positive, got {tok.text}", tok)
                out.append((name, value))
            self.expect(";")
        self.expect("}")
        return out

    def channel(self, head: Token) -> Channel:
        self.expect("(")
        a = self.ident("port name")
        self.expect(",")
        b = self.ident("port name")
        self.expect(")")
        given = {}
        allowed = CHANNEL_RATES[head.text]
        for name, value in self.rates():
            if name.text not in allowed:
                self.note(f"{head.text} channel does not take rate '{name.text}'", name)
            elif name.text in given:
                self.note(f"rate '{name.text}' given twice", name)
            given[name.text] = value
        for k in allowed:
            if k not in given:
                self.note(f"{head.text}({a.text}, {b.text}) is missing rate '{k}'", head)
        if a.text == b.text:
            self.note("channel ends must differ", a)
        return Channel(head.text, a.text, b.text, {k: v for k, v in given.items() if k in allowed})

    def idlist(self) -> list[str]:
        names = [self.ident("port name").text]
        while self.tok.text == ",":
            self.i += 1
            names.append(self.ident("port name").text)
        return names

    def node(self, head: Token) -> NodeSpec:
        name = self.ident("node name")
        self.expect("(")
        ins = self.idlist()
        self.expect("->")
        outs = self.idlist()
        self.expect(")")
        fields = {"family": "merger_replicator"}
        for key, value in self.rates():
            if key.text == "family":
                if value not in NODE_FAMILIES:
                    self.note(f"unknown node family '{value}'", key)
                    continue
            elif key.text not in ("gamma_e", "gamma_d"):
                self.note(f"node does not take rate '{key.text}'", key)
                continue
            fields[key.text] = value
        try:
            return NodeSpec(
                tuple(ins),
                tuple(outs),
                fields.get("gamma_e"),
                fields.get("gamma_d"),
                fields["family"],
                name.text,
            )
        except ValueError as exc:
            self.note(f"node '{name.text}': {exc}", name)
            return None

    def io(self, head: Token) -> IoSpec:
        self.expect("(")
        port = self.ident("port name")
        self.expect(")")
        rates = self.rates()
        names = [n.text for n, _ in rates]
        if names != ["gamma"]:
            self.note(f"{head.text}({port.text}) takes exactly one rate 'gamma'", head)
        gamma = rates[0][1] if rates else 1.0
        return IoSpec(head.text, port.text, gamma)


def parse(text: str) -> Circuit:
    """Parse and check a circuit; raises :class:`DslError` with diagnostics."""
    p = _Parser(text)
    circ = p.circuit()
    circ.nodes = [n for n in circ.nodes if n is not None]
    diags = list(p.diags)
    if not diags:
        for problem in circ.problems():
            quoted = re.search(r"'([^']+)'", problem)
            tok = p.first_use.get(quoted.group(1)) if quoted else None
            diags.append(Diagnostic(tok.line if tok else 1, tok.col if tok else 1, problem))
    if diags:
        raise DslError(diags)
    return circ


def _num(x: float) -> str:
    return repr(float(x))


def format_circuit(c: Circuit) -> str:
    """Canonical text for a circuit; ``parse(format_circuit(c)) == c``."""
    lines = [f"circuit {c.name} {{"]
    for ch in c.channels:
        rates = " ".join(f"{k} = {_num(ch.rates[k])};" for k in CHANNEL_RATES[ch.kind])
        lines.append(f"  {ch.kind}({ch.source}, {ch.sink}) {{ {rates} }}")
    for n in c.nodes:
        body = []
        if n.family != "merger_replicator":
            body.append(f"family = {n.family};")
        if not n.immediate:
            body.append(f"gamma_e = {_num(n.gamma_e)}; gamma_d = {_num(n.gamma_d)};")
        inner = " ".join(body)
        lines.append(
            f"  node {n.name or 'n'}({', '.join(n.inputs)} -> {', '.join(n.outputs)}) "
            + (f"{{ {inner} }}" if inner else "{ }")
        )
    for io in c.ios:
        lines.append(f"  {io.role}({io.port}) {{ gamma = {_num(io.gamma)}; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
