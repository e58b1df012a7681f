"""Text grammar for polynomials and the statement files read by the CLI.

Polynomials are ASCII expressions built from ``+ - * ^ /``, parentheses,
integer literals and declared variable names, e.g. ``z^2 - b*x*w``.
Division is only allowed by nonzero constants.

A statement file is a sequence of ``;``-terminated statements, ``#``
starting a comment::

    ring F0 vars x,y,z,w;             # F0 = rationals, F<p> = prime field
    ideal z^2, z*x, z*y, x^3;
    matrix 2 x 4: z, 0, 0, -x^2,
                  0, z, x, y;
    vector z*x, z*y, z^2, x^3;
    obstruction b*c;
    deformation a, b, c;
    truncate 3;
    fitting 0;
    seed 5;
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .polyring import Field, PolyMatrix, PolyRing, Polynomial


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^/()]))")


def _tokenize(text: str, base_line: int = 1, base_col: int = 1):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            line, col = _locate(text, pos, base_line, base_col)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


def _locate(text, pos, base_line, base_col):
    before = text[:pos]
    nl = before.count("\n")
    if nl:
        return base_line + nl, pos - before.rfind("\n")
    return base_line, base_col + pos


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int = 1, col: int = 1):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text, line, col)
        self.i = 0
        self.line = line
        self.col = col

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        line, col = _locate(self.text, tok[2], self.line, self.col)
        raise ParseError(msg, line, col)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            g = self.unary()
            if op[1] == "*":
                f = f * g
            else:
                if not g.is_constant() or not g:
                    self.error("division only by nonzero constants", op)
                f = f.scale(self.ring.field.inv(g.constant_value()))
        return f

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            f = self.unary()
            return -f if t[1] == "-" else f
        return self.power()

    def power(self):
        f = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                self.error("exponent must be a nonnegative integer literal", t)
            f = f ** t[1]
        return f

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ring.constant(t[1])
        if t[0] == "name":
            if not self.ring.has_var(t[1]):
                self.error(f"undeclared variable {t[1]!r}", t)
            return self.ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            f = self.expr()
            c = self.take()
            if c[0] != "op" or c[1] != ")":
                self.error("expected ')'", c)
            return f
        self.error(f"unexpected token {t[1]!r}", t)


def parse_polynomial(text: str, ring: PolyRing, line: int = 1, column: int = 1) -> Polynomial:
    return _Parser(text, ring, line, column).parse()


@dataclass
class Document:
    """Parsed statement file."""

    ring: PolyRing | None = None
    ideal: list[Polynomial] = field(default_factory=list)
    matrices: list[PolyMatrix] = field(default_factory=list)
    vector: list[Polynomial] | None = None
    obstruction: list[Polynomial] = field(default_factory=list)
    deformation: list[str] = field(default_factory=list)
    truncate: int | None = None
    fitting: int = 0
    seed: int | None = None


_RING = re.compile(r"ring\s+F(\d+)\s+vars\s+(.+)$", re.S)
_MATRIX = re.compile(r"matrix\s+(\d+)\s*x\s*(\d+)\s*:(.*)$", re.S)


def _split_top(body: str, offset: int):
    """Split on commas at parenthesis depth zero; yields (piece, start offset)."""
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield body[start:i], offset + start
            start = i + 1
    yield body[start:], offset + start


def parse_document(text: str, field_override: Field | None = None) -> Document:
    doc = Document()
    clean = re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)
    pos = 0
    for chunk in clean.split(";"):
        stmt_start = pos
        pos += len(chunk) + 1
        stripped = chunk.strip()
        if not stripped:
            continue
        lead = stmt_start + (len(chunk) - len(chunk.lstrip()))
        line, col = _locate(clean, lead, 1, 1)
        head = stripped.split(None, 1)[0]

        def polys(body: str, body_start: int):
            out = []
            for piece, off in _split_top(body, body_start):
                if not piece.strip():
                    l2, c2 = _locate(clean, off, 1, 1)
                    raise ParseError("empty expression", l2, c2)
                l2, c2 = _locate(clean, off, 1, 1)
                out.append(parse_polynomial(piece, _need_ring(doc, line, col), l2, c2))
            return out

        body_start = lead + len(head)
        body = stripped[len(head):]
        if head == "ring":
            m = _RING.match(stripped)
            if not m:
                raise ParseError("expected 'ring F<p> vars a,b,...'", line, col)
            try:
                fld = field_override or Field(int(m.group(1)))
            except ValueError as exc:
                raise ParseError(str(exc), line, col) from None
            names = [v.strip() for v in m.group(2).split(",")]
            if not all(re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in names):
                raise ParseError("bad variable list", line, col)
            doc.ring = PolyRing(names, fld)
        elif head == "ideal":
            doc.ideal.extend(polys(body, body_start))
        elif head == "vector":
            doc.vector = polys(body, body_start)
        elif head == "obstruction":
            doc.obstruction.extend(polys(body, body_start))
        elif head == "matrix":
            m = _MATRIX.match(stripped)
            if not m:
                raise ParseError("expected 'matrix <r> x <c>: entries'", line, col)
            r, c = int(m.group(1)), int(m.group(2))
            entries_start = lead + m.start(3)
            entries = polys(m.group(3), entries_start)
            if len(entries) != r * c:
                raise ParseError(f"matrix needs {r * c} entries, got {len(entries)}", line, col)
            doc.matrices.append(PolyMatrix(doc.ring, [entries[i * c:(i + 1) * c] for i in range(r)]))
        elif head == "deformation":
            names = [v.strip() for v in body.split(",") if v.strip()]
            ring = _need_ring(doc, line, col)
            for v in names:
                if not ring.has_var(v):
                    raise ParseError(f"undeclared variable {v!r}", line, col)
            doc.deformation = names
        elif head in ("truncate", "fitting", "seed"):
            try:
                val = int(body.strip())
            except ValueError:
                raise ParseError(f"{head} expects an integer", line, col) from None
            setattr(doc, head, val)
        else:
            raise ParseError(f"unknown statement {head!r}", line, col)
    return doc


def _need_ring(doc: Document, line: int, col: int) -> PolyRing:
    if doc.ring is None:
        raise ParseError("no ring declared before this statement", line, col)
    return doc.ring

