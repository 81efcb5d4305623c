"""Expression and presentation-file parsing.

Expression grammar (loosest binding first)::

    sum     := unary (('+' | '-') unary)*
    unary   := '-' unary | tensor
    tensor  := product ('@' product)*
    product := power (('*' | '/') power)*
    power   := atom ('^' ['-'] INT)?
    atom    := IDENT | INT | 'q' | '(' sum ')'

Division is only allowed by scalars, so ``1/2*q`` and ``(q^2-1)/(q-1)``
work while ``E/F`` is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ArityMismatch, ParseError, UnknownGenerator
from ..ncalg import NcElement, Presentation
from ..qcoeff import ONE, Q, LaurentPoly, QFrac, as_coeff
from ..tensor import TensorElement, tensor_concat, tensor_normalize

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|(.))")


@dataclass
class Token:
    kind: str  # IDENT, INT, OP, END
    text: str
    line: int
    col: int


def tokenize(src: str, line0: int = 1) -> list[Token]:
    toks = []
    line, line_start = line0, 0
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        ws_and_tok = src[pos:m.end()]
        # line tracking over skipped whitespace
        for i, ch in enumerate(ws_and_tok):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        start = m.start(m.lastindex) if m.lastindex else m.end()
        col = start - line_start + 1
        pos = m.end()
        if m.group(1) is not None:
            continue
        if m.group(2) is not None:
            toks.append(Token("IDENT", m.group(2), line, col))
        elif m.group(3) is not None:
            toks.append(Token("INT", m.group(3), line, col))
        elif m.group(4) is not None:
            ch = m.group(4)
            if ch.isspace():
                continue
            if ch not in "+-*/^@()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(Token("OP", ch, line, col))
    toks.append(Token("END", "", line, len(src) - line_start + 1))
    return toks


# value kinds during evaluation: coefficient, NcElement (raw or normal), TensorElement

class _Eval:
    def __init__(self, p: Presentation, raw: bool):
        self.p = p
        self.raw = raw

    def is_scalar(self, v) -> bool:
        return isinstance(v, (LaurentPoly, QFrac))

    def elem(self, v) -> NcElement:
        if self.is_scalar(v):
            return NcElement(self.p, {(): v} if v else {})
        return v

    def tensor(self, v) -> TensorElement:
        if isinstance(v, TensorElement):
            return v
        e = self.elem(v)
        return TensorElement(self.p, 1, {(w,): c for w, c in e.terms.items()})

    def add(self, a, b, tok: Token):
        if self.is_scalar(a) and self.is_scalar(b):
            return a + b
        if isinstance(a, TensorElement) or isinstance(b, TensorElement):
            ta = a if isinstance(a, TensorElement) else None
            tb = b if isinstance(b, TensorElement) else None
            if ta is None or tb is None or ta.arity != tb.arity:
                arities = [x.arity if isinstance(x, TensorElement) else 1 for x in (a, b)]
                raise ArityMismatch(f"cannot add terms of arity {arities[0]} and {arities[1]}",
                                    tok.line, tok.col)
            return ta + tb
        return self.elem(a) + self.elem(b)

    def neg(self, a):
        return -a

    def mul(self, a, b, tok: Token):
        if self.is_scalar(a) and self.is_scalar(b):
            return a * b
        if self.is_scalar(a):
            return b.scale(a)
        if self.is_scalar(b):
            return a.scale(b)
        if isinstance(a, TensorElement) or isinstance(b, TensorElement):
            if not (isinstance(a, TensorElement) and isinstance(b, TensorElement)) or a.arity != b.arity:
                raise ArityMismatch("product of tensors of different arity", tok.line, tok.col)
            if self.raw:
                out = {}
                for x, cx in a.terms.items():
                    for y, cy in b.terms.items():
                        k = tuple(u + v for u, v in zip(x, y))
                        out[k] = out.get(k, 0) + cx * cy
                return TensorElement(self.p, a.arity, {k: v for k, v in out.items() if v})
            return a * b
        if self.raw:
            out = {}
            for x, cx in a.terms.items():
                for y, cy in b.terms.items():
                    s = out.get(x + y)
                    out[x + y] = cx * cy if s is None else s + cx * cy
            return NcElement(self.p, {k: v for k, v in out.items() if v})
        return a * b

    def div(self, a, b, tok: Token):
        if not self.is_scalar(b):
            raise ParseError("only division by a scalar is supported", tok.line, tok.col)
        if not b:
            raise ParseError("division by zero", tok.line, tok.col)
        if self.is_scalar(a):
            return as_coeff(a / b)
        return a.scale(as_coeff(ONE / b))

    def power(self, a, k: int, tok: Token):
        if self.is_scalar(a):
            if k < 0 and not a:
                raise ParseError("zero to a negative power", tok.line, tok.col)
            return as_coeff(a ** k)
        if k < 0:
            raise ParseError("negative powers are only allowed for scalars", tok.line, tok.col)
        out = None
        for _ in range(k):
            out = a if out is None else self.mul(out, a, tok)
        if out is None:
            if isinstance(a, TensorElement):
                return TensorElement(self.p, a.arity, {((),) * a.arity: ONE})
            return ONE
        return out

    def concat(self, a, b, tok: Token):
        return tensor_concat(self.tensor(a), self.tensor(b))

    def ident(self, tok: Token):
        name = tok.text
        p = self.p
        if name in p.index:
            w = (p.index[name],)
            if self.raw:
                return NcElement(p, {w: ONE})
            return p.gen(name)
        if name in p.aliases:
            a = p.aliases[name]
            return a if self.raw else NcElement(p, p.reduce(a.terms))
        if name == "q":
            return Q
        raise UnknownGenerator(f"unknown generator {name!r} in {p.name}", tok.line, tok.col)


class _Parser:
    def __init__(self, toks: list[Token], ev: _Eval):
        self.toks = toks
        self.i = 0
        self.ev = ev

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text or t.kind != "OP":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def parse(self):
        v = self.sum()
        t = self.peek()
        if t.kind != "END":
            raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
        return v

    def sum(self):
        v = self.unary()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            t = self.take()
            r = self.unary()
            v = self.ev.add(v, r if t.text == "+" else self.ev.neg(r), t)
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "OP" and t.text == "-":
            self.take()
            return self.ev.neg(self.unary())
        if t.kind == "OP" and t.text == "+":
            self.take()
            return self.unary()
        return self.tensor()

    def tensor(self):
        v = self.product()
        while self.peek().kind == "OP" and self.peek().text == "@":
            t = self.take()
            v = self.ev.concat(v, self.product(), t)
        return v

    def product(self):
        v = self.power()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            t = self.take()
            r = self.power()
            v = self.ev.mul(v, r, t) if t.text == "*" else self.ev.div(v, r, t)
        return v

    def power(self):
        v = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            t = self.take()
            sign = 1
            if self.peek().kind == "OP" and self.peek().text == "-":
                self.take()
                sign = -1
            n = self.take()
            if n.kind != "INT":
                raise ParseError("exponent must be an integer literal", n.line, n.col)
            v = self.ev.power(v, sign * int(n.text), t)
        return v

    def atom(self):
        t = self.take()
        if t.kind == "INT":
            return LaurentPoly.const(int(t.text))
        if t.kind == "IDENT":
            return self.ev.ident(t)
        if t.kind == "OP" and t.text == "(":
            v = self.sum()
            self.expect(")")
            return v
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)


def _evaluate(src: str, p: Presentation, raw: bool, line0: int = 1):
    toks = tokenize(src, line0)
    return _Parser(toks, _Eval(p, raw)).parse()


def parse_expression(src: str, p: Presentation, raw: bool = False):
    """Parse ``src`` into a normalized NcElement or TensorElement of ``p``."""
    v = _evaluate(src, p, raw)
    if isinstance(v, (LaurentPoly, QFrac)):
        return p.scalar(v)
    if raw:
        return v
    if isinstance(v, TensorElement):
        return tensor_normalize(p, v.arity, v.terms)
    return NcElement(p, p.reduce(v.terms))


class _ScalarOnly:
    name = "scalars"
    index: dict = {}
    aliases: dict = {}


def parse_scalar(src: str):
    """Parse a q-expression such as ``-1/2*q^-2 + q``."""
    v = _evaluate(src, _ScalarOnly(), True)
    if not isinstance(v, (LaurentPoly, QFrac)):
        raise ParseError("expected a scalar expression")
    return v


def parse_int(src: str, line: int, col: int) -> int:
    try:
        return int(src.strip())
    except ValueError:
        raise ParseError(f"expected an integer, found {src.strip()!r}", line, col)


def parse_rational(src: str) -> Fraction:
    return Fraction(src)
