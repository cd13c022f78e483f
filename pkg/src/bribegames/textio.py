"""Concrete syntax: a small text grammar for formulas, plus the inverse printer.

Grammar (UTF-8 text)::

    formula  := or ('->' formula)?
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '!' unary | ('exists'|'forall') var '.' formula
              | '(' formula ')' | 'true' | 'false' | relation
    relation := term relop term ['(' 'mod' int ')']
    relop    := '<=' | '<' | '>=' | '>' | '=' | '!='
    term     := ['-'] addend (('+'|'-') addend)*
    addend   := int '*' var | int | var

Variables match ``[A-Za-z_][A-Za-z0-9_']*``; multiplication is only allowed
between a literal and a variable; quantifiers extend maximally to the right.
Sugar relations are rewritten at parse time (``t < u`` to ``t <= u-1``,
``t = u`` to a pair of inequalities, ``t != u`` to a negated equality); the
``(mod p)`` suffix is only legal after ``=`` and produces a congruence atom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Collection, Iterator

from .errors import FormulaSyntaxError
from .formulas import (
    FALSE, TRUE, And, Cong, Exists, Forall, Formula, Implies, Leq, Not, Or,
    Term, TrueF, FalseF, children, const, free_vars, fresh_name, rebuild,
)

_KEYWORDS = frozenset({"exists", "forall", "true", "false", "mod"})

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<op><=|>=|!=|->|<|>|=|!|&|\||\+|-|\*|\(|\)|\.)"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident' | 'int' | 'op' | 'eof'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup or ""
        lexeme = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], known_vars: Collection[str] | None) -> None:
        self.tokens = tokens
        self.pos = 0
        self.known_vars = None if known_vars is None else set(known_vars)

    # -- token plumbing ------------------------------------------------------

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def fail(self, message: str, tok: _Token | None = None) -> None:
        tok = tok or self.peek()
        raise FormulaSyntaxError(message, tok.line, tok.column)

    # -- grammar -------------------------------------------------------------

    def formula(self) -> Formula:
        lhs = self.disjunction()
        if self.peek().text == "->":
            self.next()
            return Implies(lhs, self.formula())
        return lhs

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek().text == "|":
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek().text == "&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(parts)

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "!":
            self.next()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in ("exists", "forall"):
            self.next()
            name_tok = self.next()
            if name_tok.kind != "ident" or name_tok.text in _KEYWORDS:
                self.fail("expected a variable name after quantifier", name_tok)
            self.expect(".")
            body = self.formula()
            return (Exists if tok.text == "exists" else Forall)(name_tok.text, body)
        if tok.kind == "ident" and tok.text == "true":
            self.next()
            return TRUE
        if tok.kind == "ident" and tok.text == "false":
            self.next()
            return FALSE
        if tok.text == "(":
            self.next()
            inner = self.formula()
            self.expect(")")
            return inner
        return self.relation()

    def relation(self) -> Formula:
        lhs = self.term()
        op = self.next()
        if op.text not in ("<=", "<", ">=", ">", "=", "!="):
            self.fail(f"expected a relation, found {op.text!r}", op)
        rhs = self.term()
        if self.peek().text == "(" and self.peek(1).text == "mod":
            if op.text != "=":
                self.fail("'(mod p)' is only allowed after '='", self.peek())
            self.next()
            self.next()
            modulus = self.signed_int()
            self.expect(")")
            if modulus <= 0:
                self.fail(f"modulus must be positive, got {modulus}", op)
            return Cong(lhs - rhs, modulus)
        diff = lhs - rhs
        if op.text == "<=":
            return Leq(diff)
        if op.text == "<":
            return Leq(diff + 1)
        if op.text == ">=":
            return Leq(-diff)
        if op.text == ">":
            return Leq(-diff + 1)
        equality = And((Leq(diff), Leq(-diff)))
        return equality if op.text == "=" else Not(equality)

    def signed_int(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.next()
        if tok.kind != "int":
            self.fail(f"expected an integer, found {tok.text!r}", tok)
        return sign * int(tok.text)

    def term(self) -> Term:
        total = const(0)
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        total = total + self.addend(sign)
        while self.peek().text in ("+", "-"):
            sign = 1 if self.next().text == "+" else -1
            total = total + self.addend(sign)
        return total

    def addend(self, sign: int) -> Term:
        tok = self.next()
        if tok.kind == "int":
            value = int(tok.text)
            if self.peek().text == "*":
                self.next()
                var_tok = self.next()
                if var_tok.kind != "ident" or var_tok.text in _KEYWORDS:
                    self.fail("expected a variable after '*'", var_tok)
                self.check_known(var_tok)
                return Term({var_tok.text: sign * value})
            return const(sign * value)
        if tok.kind == "ident" and tok.text not in _KEYWORDS:
            self.check_known(tok)
            return Term({tok.text: sign})
        self.fail(f"expected a term, found {tok.text!r}", tok)
        raise AssertionError  # unreachable

    def check_known(self, tok: _Token) -> None:
        if self.known_vars is not None and tok.text not in self.known_vars:
            self.fail(f"unknown identifier {tok.text!r}", tok)


def parse(text: str, known_vars: Collection[str] | None = None) -> Formula:
    """Parse a formula from text.

    ``known_vars`` restricts the identifier universe: when given, any other
    identifier raises a syntax error (quantified variables are exempt from the
    restriction only if listed as well).  Duplicate quantifier bindings and
    free/bound name clashes are resolved by priming the inner binder, so the
    result always satisfies the one-binder-per-variable invariant.
    """
    parser = _Parser(_tokenize(text), known_vars)
    phi = parser.formula()
    trailing = parser.peek()
    if trailing.kind != "eof":
        parser.fail(f"unexpected trailing input {trailing.text!r}", trailing)
    return ensure_unique_bindings(phi)


def ensure_unique_bindings(phi: Formula) -> Formula:
    """Rename binders so no name is bound twice or both free and bound."""
    used = set(free_vars(phi))

    def walk(node: Formula, ren: dict[str, str]) -> Formula:
        if isinstance(node, (Leq, Cong)):
            term = node.term
            for old, new in ren.items():
                if term.coeff(old):
                    term = term.subst(old, Term({new: 1}))
            if term is node.term:
                return node
            return Leq(term) if isinstance(node, Leq) else Cong(term, node.modulus)
        if isinstance(node, (Exists, Forall)):
            name = node.var
            if name in used:
                new_name = fresh_name(name, used)
            else:
                new_name = name
            used.add(new_name)
            body = walk(node.body, {**ren, name: new_name} if new_name != name else ren)
            return type(node)(new_name, body)
        kids = children(node)
        if not kids:
            return node
        return rebuild(node, tuple(walk(c, ren) for c in kids))

    return walk(phi, {})


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_LVL_IMPLIES, _LVL_OR, _LVL_AND, _LVL_NOT, _LVL_ATOM = 1, 2, 3, 4, 5


def _coeff_part(term: Term) -> str:
    parts: list[str] = []
    for v, c in term.coeffs:
        if not parts:
            if c == 1:
                parts.append(v)
            elif c == -1:
                parts.append(f"-{v}")
            else:
                parts.append(f"{c}*{v}")
        else:
            mag = abs(c)
            op = "+" if c > 0 else "-"
            parts.append(f"{op} {v}" if mag == 1 else f"{op} {mag}*{v}")
    return " ".join(parts)


def _atom_str(phi: Leq | Cong) -> str:
    lhs = _coeff_part(phi.term)
    rhs = -phi.term.constant
    if not lhs:
        lhs, rhs = str(phi.term.constant), 0
    if isinstance(phi, Leq):
        return f"{lhs} <= {rhs}"
    return f"{lhs} = {rhs} (mod {phi.modulus})"


def serialize(phi: Formula) -> str:
    """Render a formula in the grammar accepted by :func:`parse`.

    Structural round-trip: ``parse(serialize(phi))`` equals ``phi`` whenever
    ``phi`` has unique binder names.
    """
    return _emit(phi, _LVL_IMPLIES)


def _emit(phi: Formula, level: int) -> str:
    if isinstance(phi, TrueF):
        return "true"
    if isinstance(phi, FalseF):
        return "false"
    if isinstance(phi, (Leq, Cong)):
        return _atom_str(phi)
    if isinstance(phi, Implies):
        text = f"{_emit(phi.lhs, _LVL_OR)} -> {_emit(phi.rhs, _LVL_IMPLIES)}"
        return f"({text})" if level > _LVL_IMPLIES else text
    if isinstance(phi, Or):
        text = " | ".join(_emit(a, _LVL_AND) for a in phi.args)
        return f"({text})" if level > _LVL_OR else text
    if isinstance(phi, And):
        text = " & ".join(_emit(a, _LVL_NOT) for a in phi.args)
        return f"({text})" if level > _LVL_AND else text
    if isinstance(phi, Not):
        inner = _emit(phi.arg, _LVL_ATOM)
        if not isinstance(phi.arg, (Leq, Cong, TrueF, FalseF, Not)):
            inner = f"({inner})"
        elif isinstance(phi.arg, Not):
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(phi, (Exists, Forall)):
        word = "exists" if isinstance(phi, Exists) else "forall"
        text = f"{word} {phi.var}. {_emit(phi.body, _LVL_IMPLIES)}"
        return f"({text})" if level > _LVL_IMPLIES else text
    raise TypeError(f"unknown formula node {type(phi).__name__}")
