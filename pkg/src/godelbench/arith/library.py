"""The recursive predicates available to matrices. Every predicate is total on naturals."""

from __future__ import annotations

from functools import lru_cache

from ..codec import (_try_equation, _try_term, decode_formula, decode_frame, encode_equation,
                     encode_formula, is_eq_code, is_formula_code, is_frame_code,
                     is_replacement_instance, is_substitution_instance, replacement_results,
                     substitution_instance)
from ..formulas import fsubstitute, is_duality_instance, is_k_instance
from ..frames import canonical_mask
from ..hilbert import tautology_check
from ..kripke import validates
from ..pairing import unpair, unseq
from ..terms import Equation, Signature


def is_fml(c: int, tense: bool) -> bool:
    return is_formula_code(c, tense)


def normal_axiom(c: int, tense: bool) -> bool:
    """``c`` codes a tautology, a K instance, or (tense) a duality instance."""
    if not is_formula_code(c, tense):
        return False
    f = decode_formula(c, tense)
    slots = (0, 1) if tense else (0,)
    return (tautology_check(f) or any(is_k_instance(f, s) for s in slots)
            or (tense and any(is_duality_instance(f, s) for s in slots)))


@lru_cache(maxsize=1 << 16)
def is_frame(c: int) -> bool:
    """``c`` is the canonical code of a finite frame (one code per isomorphism class)."""
    if not is_frame_code(c):
        return False
    n1, mask = unpair(c)
    return canonical_mask(n1 + 1, mask) == mask


def val(f: int, i: int, tense: bool) -> bool:
    """``Val(f, i)``: ``f`` codes a frame, ``i`` a formula, and the frame validates it."""
    if not (is_frame(f) and is_formula_code(i, tense)):
        return False
    return validates(decode_frame(f, tense), decode_formula(i, tense))


def _formula_subst(s: int, tense: bool):
    """Decode a substitution code ``seq(pair(var, formula code), ...)``; None if malformed."""
    out = {}
    for item in unseq(s):
        v, fc = unpair(item)
        if v in out or not is_formula_code(fc, tense):
            return None
        out[v] = decode_formula(fc, tense)
    return out


def fsubst_result(i: int, s: int, tense: bool):
    """Code of the substitution instance of formula ``i`` under ``s``, or None."""
    if not is_formula_code(i, tense):
        return None
    sub = _formula_subst(s, tense)
    if sub is None:
        return None
    return encode_formula(fsubstitute(decode_formula(i, tense), sub))


def fsubst_inst(j: int, i: int, s: int, tense: bool) -> bool:
    """``FSubstInst(j, i, s)``: formula ``j`` is formula ``i`` under substitution ``s``."""
    return fsubst_result(i, s, tense) == j


def rep_results(t: int, e: int, sig: Signature) -> list[int]:
    """Codes ``i`` with ``Rep(i, t, e)``."""
    term, rule = _try_term(t, sig), _try_equation(e, sig)
    if term is None or rule is None:
        return []
    return sorted({encode_equation(Equation(term, r)) for r in replacement_results(term, rule)})


def subst_result(e: int, s: int, sig: Signature):
    """Code ``i`` with ``SubstInst(i, e, s)``, or None."""
    if _try_equation(e, sig) is None:
        return None
    codes = unseq(s)
    if any(_try_term(c, sig) is None for c in codes):
        return None
    return substitution_instance(e, codes, sig)


def evaluate_atom(pred: str, args: tuple[int, ...], ctx) -> bool:
    sig, tense = ctx.get("sig"), ctx.get("tense", False)
    if pred == "CodeEq":
        return args[0] == args[1]
    if pred == "IsEq":
        return is_eq_code(args[0], sig)
    if pred == "IsTerm":
        return _try_term(args[0], sig) is not None
    if pred == "Rep":
        return is_replacement_instance(args[0], args[1], args[2], sig)
    if pred == "SubstInst":
        return is_substitution_instance(args[0], args[1], args[2], sig)
    if pred == "IsFml":
        return is_fml(args[0], tense)
    if pred == "NormalAxiom":
        return normal_axiom(args[0], tense)
    if pred == "FSubstInst":
        return fsubst_inst(args[0], args[1], args[2], tense)
    if pred == "IsFrame":
        return is_frame(args[0])
    if pred == "Val":
        return val(args[0], args[1], tense)
    raise ValueError(f"unknown predicate {pred}")
