"""Polynomial expression grammar.

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := '[' label ']' | name | '(' expr ')'

Labels may contain brackets and parentheses (``[[1,1],[0,1]]``); the
literal ends at the matching ``]``.  A leading ``-`` on a term negates it.
Input is normalised as it is read, so variables may appear in any order.
"""

from __future__ import annotations

import re

from .errors import ParseError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NAT = re.compile(r"\d+")


class _Parser:
    def __init__(self, alg, text: str):
        self.alg = alg
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        line = self.text.count("\n", 0, p) + 1
        col = p - (self.text.rfind("\n", 0, p) + 1) + 1
        raise ParseError(msg, line, col)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def parse(self):
        if not self.text.strip():
            self.error("empty expression")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self):
        out = self.signed_term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def signed_term(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.term()
        return self.term()

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        while True:
            ch = self.peek()
            if ch and (ch in "[(" or _NAME.match(ch)):
                self.error("missing '*' between factors (juxtaposition is not multiplication)")
            return out

    def factor(self):
        base = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self.skip()
            m = _NAT.match(self.text, self.pos)
            if not m:
                self.error("exponent must be a natural number")
            self.pos = m.end()
            base = base ** int(m.group())
        return base

    def atom(self):
        ch = self.peek()
        start = self.pos
        if ch == "[":
            return self.literal()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        m = _NAME.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            name = m.group()
            try:
                idx = self.alg.var_names.index(name) + 1
            except ValueError:
                self.error(f"unknown identifier {name!r}", start)
            return self.alg.var(idx)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")

    def literal(self):
        start = self.pos
        depth = 0
        i = self.pos
        while i < len(self.text):
            c = self.text[i]
            if c == "[":
                depth += 1
            elif c == "]":
                depth -= 1
                if depth == 0:
                    break
            i += 1
        else:
            self.error("unterminated coefficient literal", start)
        label = self.text[start + 1:i]
        self.pos = i + 1
        ring = getattr(self.alg, "ring", None)
        if ring is None:
            self.error("coefficient literals are not supported here", start)
        try:
            r = ring.element(label.strip())
        except KeyError:
            self.error(f"malformed or unknown coefficient literal [{label}]", start)
        return self.alg.const(r)


def parse_expr(alg, text: str):
    """Parse ``text`` into a normal-form polynomial of ``alg``."""
    return _Parser(alg, text).parse()
