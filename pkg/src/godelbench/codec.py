"""Gödel coding of terms, equations, formulas, frames, and the recursive syntactic predicates.

Scheme (all values are Python ints, so codes never overflow):

* terms: ``x_i -> 2i``; ``f_k(t_1..t_n) -> 2*pair(k, seq(codes)) + 1``
* equations: ``pair(code(left), code(right))``
* formulas: ``pair(tag, payload)`` with tags ``0 p_i | 1 bot | 2 & | 3 -> | 4 box0 | 5 box1``
* frames: ``pair(n-1, mask)`` where bit ``i*n + j`` of ``mask`` is ``i R j``

Every decoder validates; malformed codes raise :class:`MalformedCode`.

Frames are coded raw. Isomorphism-invariant codes come from :func:`canonical_frame_code`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

from .errors import MalformedCode
from .formulas import And, Bot, Box, Formula, Implies, Prop
from .frames import FiniteFrame, canonical_mask
from .pairing import pair, seq, unpair, unseq
from .terms import App, Equation, Signature, Term, Var, check_term, positions, replace_at, \
    substitute

TAG_PROP, TAG_BOT, TAG_AND, TAG_IMP, TAG_BOX0, TAG_BOX1 = range(6)


# -- terms and equations -----------------------------------------------------------------

def encode_term(t: Term, sig: Optional[Signature] = None) -> int:
    if sig is not None:
        check_term(t, sig)
    return _encode_term(t)


def _encode_term(t: Term) -> int:
    if isinstance(t, Var):
        return 2 * t.index
    return 2 * pair(t.symbol, seq(_encode_term(a) for a in t.args)) + 1


def decode_term(c: int, sig: Signature) -> Term:
    return _decode_term(c, sig)


@lru_cache(maxsize=1 << 16)
def _decode_term(c: int, sig: Signature) -> Term:
    if c < 0:
        raise MalformedCode(f"negative code {c}")
    if c % 2 == 0:
        return Var(c // 2)
    k, s = unpair((c - 1) // 2)
    if k >= len(sig):
        raise MalformedCode(f"code {c}: symbol f{k} not in signature")
    codes = unseq(s)
    if len(codes) != sig.arities[k]:
        raise MalformedCode(f"code {c}: f{k} has arity {sig.arities[k]}, got {len(codes)} arguments")
    return App(k, tuple(_decode_term(a, sig) for a in codes))


def encode_equation(e: Equation, sig: Optional[Signature] = None) -> int:
    return pair(encode_term(e.left, sig), encode_term(e.right, sig))


def decode_equation(c: int, sig: Signature) -> Equation:
    if c < 0:
        raise MalformedCode(f"negative code {c}")
    a, b = unpair(c)
    return Equation(decode_term(a, sig), decode_term(b, sig))


def is_term_code(c: int, sig: Signature) -> bool:
    try:
        decode_term(c, sig)
    except MalformedCode:
        return False
    return True


def is_eq_code(c: int, sig: Signature) -> bool:
    try:
        decode_equation(c, sig)
    except MalformedCode:
        return False
    return True


# The Rep and SubstInst predicates are probed on many codes sharing the same pieces.
@lru_cache(maxsize=1 << 16)
def _try_term(c: int, sig: Signature) -> Optional[Term]:
    try:
        return decode_term(c, sig)
    except MalformedCode:
        return None


@lru_cache(maxsize=1 << 16)
def _try_equation(c: int, sig: Signature) -> Optional[Equation]:
    try:
        return decode_equation(c, sig)
    except MalformedCode:
        return None


def replaces_one_occurrence(t: Term, t2: Term, s: Term, s2: Term) -> bool:
    """True iff ``t2`` is ``t`` with exactly one occurrence of ``s`` replaced by ``s2``."""
    if t == s and t2 == s2:
        return True
    if not (isinstance(t, App) and isinstance(t2, App)):
        return False
    if t.symbol != t2.symbol or len(t.args) != len(t2.args):
        return False
    diff = [i for i, (a, b) in enumerate(zip(t.args, t2.args)) if a != b]
    if not diff:
        # s == s2 somewhere below leaves t unchanged
        return s == s2 and any(u == s for _, u in positions(t))
    if len(diff) > 1:
        return False
    i = diff[0]
    return replaces_one_occurrence(t.args[i], t2.args[i], s, s2)


def is_replacement_instance(result: int, t: int, e: int, sig: Signature) -> bool:
    """``Rep(result, t, e)``: ``result`` codes ``t ≈ t'`` where ``t'`` replaces one occurrence
    of ``e.left`` in ``t`` by ``e.right``. Total: malformed inputs give False."""
    if min(result, t, e) < 0:
        return False
    eq = _try_equation(result, sig)
    term = _try_term(t, sig)
    rule = _try_equation(e, sig)
    if eq is None or term is None or rule is None or eq.left != term:
        return False
    return replaces_one_occurrence(term, eq.right, rule.left, rule.right)


def replacement_results(t: Term, e: Equation) -> list[Term]:
    """All terms obtained from ``t`` by replacing one occurrence of ``e.left`` by ``e.right``."""
    return [replace_at(t, pos, e.right) for pos, u in positions(t) if u == e.left]


def substitution_instance(e: int, subst: Sequence[int], sig: Signature) -> int:
    """Code of ``e`` with ``x_i`` replaced by the term coded ``subst[i]`` (others fixed)."""
    eq = decode_equation(e, sig)
    terms = [decode_term(c, sig) for c in subst]
    return encode_equation(Equation(substitute(eq.left, terms), substitute(eq.right, terms)))


def is_substitution_instance(result: int, e: int, subst_seq: int, sig: Signature) -> bool:
    """``SubstInst(result, e, s)``: ``s`` is a sequence code of term codes and ``result`` is
    the corresponding substitution instance of ``e``. Total."""
    if min(result, e, subst_seq) < 0 or _try_equation(e, sig) is None:
        return False
    codes = unseq(subst_seq)
    if any(_try_term(c, sig) is None for c in codes):
        return False
    return substitution_instance(e, codes, sig) == result


# -- formulas ----------------------------------------------------------------------------

def encode_formula(f: Formula) -> int:
    if isinstance(f, Prop):
        return pair(TAG_PROP, f.index)
    if isinstance(f, Bot):
        return pair(TAG_BOT, 0)
    if isinstance(f, And):
        return pair(TAG_AND, pair(encode_formula(f.left), encode_formula(f.right)))
    if isinstance(f, Implies):
        return pair(TAG_IMP, pair(encode_formula(f.left), encode_formula(f.right)))
    if isinstance(f, Box):
        if f.slot not in (0, 1):
            raise MalformedCode(f"box slot {f.slot}")
        return pair(TAG_BOX0 + f.slot, encode_formula(f.body))
    raise TypeError(f"not a formula: {f!r}")


def decode_formula(c: int, tense: bool = True) -> Formula:
    """Decode a formula code; with ``tense=False`` codes using ``box1`` are rejected."""
    return _decode_formula(c, tense)


@lru_cache(maxsize=1 << 18)
def _decode_formula(c: int, tense: bool) -> Formula:
    if c < 0:
        raise MalformedCode(f"negative code {c}")
    tag, payload = unpair(c)
    if tag == TAG_PROP:
        return Prop(payload)
    if tag == TAG_BOT:
        if payload != 0:
            raise MalformedCode(f"code {c}: bot carries payload {payload}")
        return Bot()
    if tag in (TAG_AND, TAG_IMP):
        a, b = unpair(payload)
        left, right = _decode_formula(a, tense), _decode_formula(b, tense)
        return And(left, right) if tag == TAG_AND else Implies(left, right)
    if tag == TAG_BOX0 or (tag == TAG_BOX1 and tense):
        return Box(tag - TAG_BOX0, _decode_formula(payload, tense))
    raise MalformedCode(f"code {c}: unknown formula tag {tag}")


def is_formula_code(c: int, tense: bool = True) -> bool:
    try:
        decode_formula(c, tense)
    except MalformedCode:
        return False
    return True


# -- frames ------------------------------------------------------------------------------

def encode_frame(frame: FiniteFrame) -> int:
    return pair(frame.size - 1, frame.mask)


def decode_frame(c: int, tense: bool = False) -> FiniteFrame:
    if c < 0:
        raise MalformedCode(f"negative code {c}")
    a, mask = unpair(c)
    n = a + 1
    if mask >= 1 << (n * n):
        raise MalformedCode(f"code {c}: relation mask exceeds 2^{n * n}")
    return FiniteFrame(n, mask, tense)


def is_frame_code(c: int) -> bool:
    if c < 0:
        return False
    a, mask = unpair(c)
    return mask < 1 << ((a + 1) * (a + 1))


def canonical_frame_code(frame: FiniteFrame) -> int:
    return pair(frame.size - 1, canonical_mask(frame.size, frame.mask))
