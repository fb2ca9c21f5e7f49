"""A small text format for rings, forms, frames and points.

    # comment
    ring projective x0 x1 x2 x3;
    form w = -x3*dx1^dx2 + x2*dx1^dx3 - x1*dx2^dx3;
    frame E = [x2*dx1 - x1*dx2, x3*dx1 - x1*dx3];
    point p = (1, 0, 0, 0);

Inside expressions ``dV`` is the differential of the declared variable ``V``
and ``d(expr)`` is the exterior derivative. ``*`` and ``^`` both denote the
exterior product, except that ``^`` followed by an integer literal after a
function is a power. ``/`` divides by a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, SemanticError
from .extalg import DiffForm, dx, exterior_derivative, form_to_vector, format_form, function_form, wedge
from .foliation import FoliationForm, TangentFrame
from .groebner import syzygies
from .polycore import PolyRing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()=;,\[\]])"
)
KEYWORDS = ("ring", "form", "frame", "point")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass
class Document:
    ambient: str
    ring: PolyRing
    forms: Dict[str, DiffForm] = field(default_factory=dict)
    frames: Dict[str, List[DiffForm]] = field(default_factory=dict)
    points: Dict[str, Tuple[Fraction, ...]] = field(default_factory=dict)
    source: str = ""

    def foliation(self, name: Optional[str] = None) -> FoliationForm:
        if name is None:
            if not self.forms:
                raise SemanticError("document defines no form")
            name = next(iter(self.forms))
        if name not in self.forms:
            raise SemanticError(f"no form named {name!r}")
        return FoliationForm(self.forms[name], self.ambient)

    def frame(self, name: str) -> TangentFrame:
        gens = self.frames[name]
        return TangentFrame(gens, syzygies([form_to_vector(g, 1) for g in gens]))

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.ring.names == other.ring.names
            and self.forms == other.forms
            and self.frames == other.frames
            and self.points == other.points
        )


class _Parser:
    def __init__(self, text: str, order: str = "degrevlex"):
        self.text = text
        self.order = order
        self.toks = tokenize(text)
        self.i = 0
        self.ring: Optional[PolyRing] = None

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, *expected, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, expected)

    def semantic(self, msg, tok=None):
        tok = tok or self.tok
        return SemanticError(f"line {tok.line}, column {tok.col}: {msg}")

    def at(self, text) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def expect(self, text) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise self.error(f"unexpected {got!r}", repr(text))
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            got = self.tok.text or "end of input"
            raise self.error(f"unexpected {got!r}", "identifier")
        t = self.tok
        self.i += 1
        return t

    # document

    def document(self) -> Document:
        self.expect("ring")
        amb = self.ident()
        if amb.text not in ("affine", "projective"):
            raise self.error(f"unexpected {amb.text!r}", "'affine'", "'projective'", tok=amb)
        names = []
        while self.tok.kind == "ident":
            if self.tok.text in KEYWORDS:
                raise self.error(f"unexpected {self.tok.text!r}", "';'")
            t = self.ident()
            if t.text in names:
                raise self.semantic(f"variable {t.text!r} declared twice", t)
            if t.text == "d":
                raise self.semantic(f"{t.text!r} cannot be a variable name", t)
            names.append(t.text)
        if not names:
            raise self.error("ring needs variables", "identifier")
        for a in names:
            if a.startswith("d") and a[1:] in names:
                raise self.semantic(f"variable {a!r} clashes with the differential of {a[1:]!r}")
        self.expect(";")
        self.ring = PolyRing(names, self.order)
        doc = Document(amb.text, self.ring, source=self.text)
        seen = set()
        while self.tok.kind != "eof":
            kw = self.tok
            if not any(self.at(k) for k in KEYWORDS[1:]):
                raise self.error(f"unexpected {kw.text!r}", "'form'", "'frame'", "'point'", "end of input")
            self.i += 1
            name = self.ident()
            if name.text in seen:
                raise self.semantic(f"name {name.text!r} defined twice", name)
            seen.add(name.text)
            self.expect("=")
            if kw.text == "form":
                doc.forms[name.text] = self.expr()
            elif kw.text == "frame":
                doc.frames[name.text] = self.frame_body()
            else:
                doc.points[name.text] = self.point_body()
            self.expect(";")
        return doc

    def frame_body(self):
        self.expect("[")
        gens = []
        while True:
            t = self.tok
            f = self.expr()
            if f.degree != 1 and not f.is_zero():
                raise self.semantic("frame entries must be 1-forms", t)
            gens.append(f if f.degree == 1 else DiffForm(self.ring, 1))
            if self.at("]"):
                break
            self.expect(",")
        self.expect("]")
        return gens

    def point_body(self):
        start = self.expect("(")
        coords = []
        while True:
            coords.append(self.signed_number())
            if self.at(")"):
                break
            self.expect(",")
        self.expect(")")
        if len(coords) != self.ring.nvars:
            raise self.semantic(f"point has {len(coords)} coordinates, ring has {self.ring.nvars}", start)
        return tuple(coords)

    def signed_number(self) -> Fraction:
        sign = 1
        while self.at("-") or self.at("+"):
            sign *= -1 if self.tok.text == "-" else 1
            self.i += 1
        if self.tok.kind != "num":
            raise self.error(f"unexpected {self.tok.text!r}", "number")
        val = Fraction(int(self.tok.text))
        self.i += 1
        if self.at("/"):
            self.i += 1
            if self.tok.kind != "num":
                raise self.error(f"unexpected {self.tok.text!r}", "number")
            den = int(self.tok.text)
            if den == 0:
                raise self.semantic("division by zero")
            self.i += 1
            val /= den
        return sign * val

    # expressions

    def expr(self) -> DiffForm:
        val = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok
            self.i += 1
            rhs = self.term()
            val = self._add(val, rhs if op.text == "+" else -rhs, op)
        return val

    def _add(self, a, b, tok):
        if a.degree != b.degree and not a.is_zero() and not b.is_zero():
            raise self.semantic(f"degree mismatch: {a.degree}-form plus {b.degree}-form", tok)
        return a + b

    def term(self) -> DiffForm:
        val = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok
            self.i += 1
            rhs = self.unary()
            if op.text == "*":
                val = wedge(val, rhs)
            else:
                if rhs.degree != 0 or not (rhs.is_zero() or rhs[()].is_constant()):
                    raise self.semantic("can only divide by a constant", op)
                c = rhs[()].constant_value() if not rhs.is_zero() else 0
                if c == 0:
                    raise self.semantic("division by zero", op)
                val = val.scale(Fraction(1) / c)
        return val

    def unary(self) -> DiffForm:
        if self.at("-"):
            self.i += 1
            return -self.unary()
        if self.at("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> DiffForm:
        val = self.atom()
        while self.at("^"):
            self.i += 1
            if self.tok.kind == "num" and val.degree == 0:
                k = int(self.tok.text)
                self.i += 1
                p = val[()] if not val.is_zero() else self.ring.zero()
                val = function_form(p ** k)
            else:
                val = wedge(val, self.atom())
        return val

    def atom(self) -> DiffForm:
        t = self.tok
        ring = self.ring
        if t.kind == "num":
            self.i += 1
            return function_form(ring.constant(int(t.text)))
        if self.at("("):
            self.i += 1
            val = self.expr()
            self.expect(")")
            return val
        if t.kind == "ident":
            self.i += 1
            if t.text in ring.names:
                return function_form(ring.var(t.text))
            if t.text == "d" and self.at("("):
                self.i += 1
                val = self.expr()
                self.expect(")")
                return exterior_derivative(val)
            if t.text.startswith("d") and t.text[1:] in ring.names:
                return dx(ring, t.text[1:])
            raise self.semantic(f"unknown variable {t.text!r}", t)
        got = t.text or "end of input"
        raise self.error(f"unexpected {got!r}", "number", "identifier", "'('")


def parse(text: str, order: str = "degrevlex") -> Document:
    """Parse a document; raises ParseError or SemanticError with positions."""
    return _Parser(text, order).document()


def parse_form(text: str, ring: PolyRing) -> DiffForm:
    """Parse a single expression over an existing ring."""
    p = _Parser(text)
    p.ring = ring
    val = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}", "end of input")
    return val


def _print_form(f: DiffForm) -> str:
    if f.is_zero() and f.degree > 0:
        return "0*" + "^".join("d" + v for v in f.ring.names[: f.degree])
    return format_form(f)


def print_document(doc: Document) -> str:
    lines = [f"ring {doc.ambient} {' '.join(doc.ring.names)};"]
    for name, f in doc.forms.items():
        lines.append(f"form {name} = {_print_form(f)};")
    for name, gens in doc.frames.items():
        lines.append(f"frame {name} = [{', '.join(_print_form(g) for g in gens)}];")
    for name, p in doc.points.items():
        lines.append(f"point {name} = ({', '.join(str(c) for c in p)});")
    return "\n".join(lines) + "\n"
