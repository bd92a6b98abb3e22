"""Minimal polynomial expression grammar.

Ring relations arrive as strings over a deliberately small grammar:

    expr   := [sign] term { ('+' | '-') term }
    term   := factor { ('*' | '·') factor }
    factor := base [ '^' INT ]
    base   := IDENT | INT | '(' expr ')'

Identifiers name ring variables, integer literals are coefficients, and
whitespace is ignored. A polynomial is stored as a mapping from exponent
tuples to integer coefficients; zero coefficients are never stored.
"""

from __future__ import annotations

import re

from .errors import ConfigError

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[-+*^()·]))"
)

Poly = dict  # exponent tuple -> int coefficient


def tokenize(text: str, path: str = "relation"):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ConfigError(path, f"unexpected character {text[pos]!r} at offset {pos}")
        if m.group("ident"):
            out.append(("ident", m.group("ident")))
        elif m.group("int"):
            out.append(("int", int(m.group("int"))))
        else:
            op = m.group("op")
            out.append(("op", "*" if op == "·" else op))
        pos = m.end()
    return out


def poly_mul(a: Poly, b: Poly, nvars: int) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def poly_add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def poly_pow(a: Poly, n: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    base = a
    while n > 0:
        if n & 1:
            out = poly_mul(out, base, nvars)
        n >>= 1
        if n:
            base = poly_mul(base, base, nvars)
    return out


def monomial(nvars: int, index: int, power: int = 1) -> Poly:
    e = [0] * nvars
    e[index] = power
    return {tuple(e): 1}


class _Parser:
    def __init__(self, tokens, variables, path):
        self.toks = tokens
        self.i = 0
        self.vars = {name: k for k, name in enumerate(variables)}
        self.n = len(variables)
        self.path = path

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek()[0] != "end":
            raise ConfigError(self.path, f"trailing input near token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == ("op", "+"):
            self.take()
        elif self.peek() == ("op", "-"):
            self.take()
            sign = -1
        acc = poly_add({}, self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            acc = poly_add(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = poly_mul(acc, self.factor(), self.n)
        return acc

    def factor(self) -> Poly:
        base = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ConfigError(self.path, "exponent must be a nonnegative integer")
            return poly_pow(base, val, self.n)
        return base

    def base(self) -> Poly:
        kind, val = self.take()
        if kind == "ident":
            if val not in self.vars:
                raise ConfigError(self.path, f"unknown variable {val!r}")
            return monomial(self.n, self.vars[val])
        if kind == "int":
            return {(0,) * self.n: val} if val else {}
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ConfigError(self.path, "unbalanced parenthesis")
            return p
        raise ConfigError(self.path, f"unexpected token {val!r}")


def parse_polynomial(text: str, variables, path: str = "relation") -> Poly:
    return _Parser(tokenize(text, path), variables, path).parse()


def format_polynomial(poly: Poly, variables) -> str:
    if not poly:
        return "0"
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        body = "*".join(
            f"{v}^{k}" if k > 1 else v for v, k in zip(variables, e) if k
        )
        mag = abs(c)
        if not body:
            frag = str(mag)
        elif mag == 1:
            frag = body
        else:
            frag = f"{mag}*{body}"
        parts.append(("- " if c < 0 else "+ ") + frag)
    head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
    return " ".join([head] + parts[1:])
