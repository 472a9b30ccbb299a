"""Text syntax for terms, equations, formulas and frame records.

Terms: ``x0``, ``f2(x0, x1)``, and ``s * t`` as sugar for binary ``f0``.
Equations: ``s = t`` (``≈`` also accepted).
Formulas: ``p0``, ``bot``, ``top``, ``~A``, ``A & B``, ``A | B``, ``A -> B``, ``box0 A``, ``box1 A``
(``box`` alone means ``box0``). Binding: unary > ``&`` > ``|`` > ``->``; ``->`` is right-associative.
Frames: ``{"size": n, "edges": [[i, j], ...]}``.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Optional

from .errors import ParseError
from .formulas import BOT, And, Bot, Box, Formula, Implies, Prop, neg, top
from .frames import FiniteFrame
from .terms import App, Equation, Signature, Term, Var, check_term

_TOKEN = re.compile(r"\s*(->|box[01]?|bot|top|[pxf]\d+|[&|~()*,=≈])")


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Stream:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input starting at {self.peek()!r}")


# -- terms ---------------------------------------------------------------------------------

def _term(s: _Stream) -> Term:
    t = _term_atom(s)
    while s.peek() == "*":
        s.take()
        t = App(0, (t, _term_atom(s)))
    return t


def _term_atom(s: _Stream) -> Term:
    tok = s.take()
    if tok == "(":
        t = _term(s)
        s.take(")")
        return t
    if tok[0] == "x" and tok[1:].isdigit():
        return Var(int(tok[1:]))
    if tok[0] == "f" and tok[1:].isdigit():
        args: list[Term] = []
        if s.peek() == "(":
            s.take()
            if s.peek() != ")":
                args.append(_term(s))
                while s.peek() == ",":
                    s.take()
                    args.append(_term(s))
            s.take(")")
        return App(int(tok[1:]), tuple(args))
    raise ParseError(f"unexpected token {tok!r} in term")


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    s = _Stream(text)
    t = _term(s)
    s.done()
    if sig is not None:
        check_term(t, sig)
    return t


def parse_equation(text: str, sig: Optional[Signature] = None) -> Equation:
    s = _Stream(text)
    left = _term(s)
    if s.peek() not in ("=", "≈"):
        raise ParseError("equation needs '=' between its sides")
    s.take()
    right = _term(s)
    s.done()
    if sig is not None:
        check_term(left, sig)
        check_term(right, sig)
    return Equation(left, right)


def infer_signature(terms: Iterable[Term]) -> Signature:
    """Smallest signature covering the symbols used; unused indices get arity 0."""
    found: dict[int, int] = {}

    def walk(t: Term):
        if isinstance(t, App):
            prev = found.setdefault(t.symbol, len(t.args))
            if prev != len(t.args):
                raise ParseError(f"f{t.symbol} used with arities {prev} and {len(t.args)}")
            for a in t.args:
                walk(a)

    for t in terms:
        walk(t)
    n = max(found) + 1 if found else 0
    return Signature(tuple(found.get(k, 0) for k in range(n)))


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if t.symbol == 0 and len(t.args) == 2:
        a, b = (format_term(u) if not _infix(u) else f"({format_term(u)})" for u in t.args)
        return f"{a} * {b}"
    return f"f{t.symbol}(" + ", ".join(format_term(a) for a in t.args) + ")"


def _infix(t: Term) -> bool:
    return isinstance(t, App) and t.symbol == 0 and len(t.args) == 2


def format_equation(e: Equation) -> str:
    return f"{format_term(e.left)} = {format_term(e.right)}"


# -- formulas ------------------------------------------------------------------------------

def _imp(s: _Stream) -> Formula:
    left = _disj(s)
    if s.peek() == "->":
        s.take()
        return Implies(left, _imp(s))
    return left


def _disj(s: _Stream) -> Formula:
    f = _conj(s)
    while s.peek() == "|":
        s.take()
        f = Implies(neg(f), _conj(s))
    return f


def _conj(s: _Stream) -> Formula:
    f = _unary(s)
    while s.peek() == "&":
        s.take()
        f = And(f, _unary(s))
    return f


def _unary(s: _Stream) -> Formula:
    tok = s.take()
    if tok.startswith("box"):
        slot = int(tok[3:]) if len(tok) > 3 else 0
        return Box(slot, _unary(s))
    if tok == "~":
        return neg(_unary(s))
    if tok == "(":
        f = _imp(s)
        s.take(")")
        return f
    if tok == "bot":
        return BOT
    if tok == "top":
        return top()
    if tok[0] == "p" and tok[1:].isdigit():
        return Prop(int(tok[1:]))
    raise ParseError(f"unexpected token {tok!r} in formula")


def parse_formula(text: str) -> Formula:
    s = _Stream(text)
    f = _imp(s)
    s.done()
    return f


_IMP, _AND, _UNARY = 0, 1, 2


def format_formula(f: Formula, level: int = _IMP) -> str:
    if isinstance(f, Prop):
        return f"p{f.index}"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Box):
        return f"box{f.slot} " + format_formula(f.body, _UNARY)
    if isinstance(f, Implies) and isinstance(f.right, Bot):
        return "~" + format_formula(f.left, _UNARY)
    if isinstance(f, And):
        text = format_formula(f.left, _AND) + " & " + format_formula(f.right, _UNARY)
        return f"({text})" if level > _AND else text
    text = format_formula(f.left, _AND) + " -> " + format_formula(f.right, _IMP)
    return f"({text})" if level > _IMP else text


# -- frames --------------------------------------------------------------------------------

def parse_frame(text: str, tense: bool = False) -> FiniteFrame:
    try:
        rec = json.loads(text)
        return FiniteFrame.from_edges(int(rec["size"]), [tuple(e) for e in rec.get("edges", [])],
                                      tense)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad frame record: {exc}") from exc


def format_frame(frame: FiniteFrame) -> str:
    return json.dumps(frame.as_record(), separators=(", ", ": "))
