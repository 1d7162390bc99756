"""Recursive-descent parser for polynomial expressions.

Grammar (``^`` binds tightest, then ``*``, then ``+``/``-``):

    expr    :=  ['+'|'-'] term ( ('+'|'-') term )*
    term    :=  factor ( '*' factor )*
    factor  :=  ['+'|'-']* atom [ '^' INTEGER ]
    atom    :=  INTEGER | NAME | '(' expr ')'

Exponents must be nonnegative integer literals.  Juxtaposition is not
multiplication: ``2a`` is a syntax error, write ``2*a``.  The canonical
text emitted by :meth:`Polynomial.canonical_text` is valid input and parses
back to an equal polynomial.
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import NonIntegerExponentError, ParseError, UnknownVariableError
from .poly import Polynomial, sum_polynomials

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError("unexpected character %r" % text[at], at)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allowed: set[str] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError("expected %r" % op, pos)
        return self.advance()

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected %r" % value, pos)
        return result

    def expr(self) -> Polynomial:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.advance()
            if value == "-":
                sign = -1
        parts = [self.term() * sign]
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                parts.append(rhs if value == "+" else -rhs)
            else:
                # single merge keeps long sums (e.g. persisted expanded
                # products with tens of thousands of terms) linear
                return sum_polynomials(parts)

    def term(self) -> Polynomial:
        factors = [self.factor()]
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                factors.append(self.factor())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        if all(f.term_count() <= 1 for f in factors):
            # canonical-text input is a sum of monomials; combining their
            # exponents directly keeps reparsing large files linear
            coeff = 1
            exps: dict[str, int] = {}
            for f in factors:
                if f.is_zero():
                    return Polynomial.zero()
                ((e, c),) = f.term_items()
                coeff *= c
                for v, x in zip(f.variables, e):
                    if x:
                        exps[v] = exps.get(v, 0) + x
            names = tuple(exps)
            return Polynomial(names, {tuple(exps[v] for v in names): coeff})
        result = factors[0]
        for f in factors[1:]:
            result = result * f
        return result

    def factor(self) -> Polynomial:
        sign = 1
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                if value == "-":
                    sign = -sign
            else:
                break
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != "int":
                raise NonIntegerExponentError(
                    "exponent must be a nonnegative integer literal", pos
                )
            self.advance()
            base = base ** int(value)
        return base if sign == 1 else -base

    def atom(self) -> Polynomial:
        kind, value, pos = self.advance()
        if kind == "int":
            return Polynomial.constant(int(value))
        if kind == "name":
            if self.allowed is not None and value not in self.allowed:
                raise UnknownVariableError(
                    "unknown variable %r (allowed: %s)"
                    % (value, ", ".join(sorted(self.allowed))),
                    pos,
                )
            return Polynomial.variable(value)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, variable or parenthesis", pos)


def parse_polynomial(
    text: str,
    delta: int | None = None,
    variables: Iterable[str] | None = None,
) -> Polynomial:
    """Parse an expression into a canonical polynomial.

    With ``delta`` given, the variable set is restricted to
    ``a, h1..h<delta>`` (the source-representation grammar).  With
    ``variables`` given, that explicit set is allowed.  With neither, any
    variable name is accepted.
    """
    if delta is not None:
        allowed = {"a", *("h%d" % i for i in range(1, delta + 1))}
    elif variables is not None:
        allowed = set(variables)
    else:
        allowed = None
    return _Parser(text, allowed).parse()
