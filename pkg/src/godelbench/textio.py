"""File formats: axiom lists, logic presentations, proof listings and real parameters.

Proof listings have one line per step, numbered from 0::

    0: p0 -> p0 [taut]
    1: box0 (p0 -> p0) [nec 0 0]

Justifications: ``taut``, ``k S``, ``dual S``, ``mp MAJOR MINOR``, ``nec STEP S``, ``base``,
``extra p0:=F; p1:=G``, ``axiom I p0:=F; ...``.

Real parameters are JSON objects with a ``kind`` of ``finite``, ``cofinite``, ``prefix``,
``equations``, ``formulas``, ``theory`` or ``logic``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Optional, Union

from .arith.reals import (Cofinite, EquationalTheoryApprox, ExplicitPrefix, FiniteSet,
                          ModalTheoryApprox, Real, all_equations, all_formulas)
from .eqlogic import AxiomSet, SaturationBudget
from .errors import ParseError
from .formulas import Formula
from .hilbert import (MP, BaseAxiomInstance, ExtraAxiomInstance, InBase, Justification,
                      KInstance, Nec, ProofObject, ProofStep, Tautology, TenseDuality,
                      make_subst)
from .kripke import LogicPresentation
from .parsing import format_formula, infer_signature, parse_equation, parse_formula
from .terms import Equation, Signature

PathLike = Union[str, Path]


def _lines(path: PathLike) -> list[str]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        text = raw.split("#", 1)[0].strip()
        if text:
            out.append(text)
    return out


def parse_signature(text: str) -> Signature:
    """``"2,1"`` -> arities (2, 1); the empty string is the empty signature."""
    try:
        return Signature(tuple(int(a) for a in text.split(",") if a.strip()))
    except ValueError as exc:
        raise ParseError(f"bad signature {text!r}") from exc


def load_equations(path: PathLike) -> list[Equation]:
    return [parse_equation(line) for line in _lines(path)]


def load_axioms(path: PathLike, sig: Optional[Signature] = None,
                extra: tuple[Equation, ...] = ()) -> AxiomSet:
    eqs = load_equations(path)
    if sig is None:
        sig = infer_signature([t for e in list(eqs) + list(extra) for t in (e.left, e.right)])
    return AxiomSet(sig, tuple(eqs))


def load_logic(path: PathLike, tense: bool = False) -> LogicPresentation:
    return LogicPresentation(tuple(parse_formula(line) for line in _lines(path)), tense)


# -- proofs ---------------------------------------------------------------------------------

_STEP = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*\[([^\]]*)\]\s*$")


def _parse_subst(text: str) -> tuple:
    mapping: dict[int, Formula] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        var, sep, body = part.partition(":=")
        var = var.strip()
        if not sep or not re.fullmatch(r"p\d+", var):
            raise ParseError(f"bad substitution entry {part!r}")
        mapping[int(var[1:])] = parse_formula(body)
    return make_subst(mapping)


def parse_justification(text: str) -> Justification:
    head, _, rest = text.strip().partition(" ")
    args = rest.split()
    try:
        if head == "taut" and not args:
            return Tautology()
        if head == "base" and not args:
            return InBase()
        if head == "k" and len(args) == 1:
            return KInstance(int(args[0]))
        if head == "dual" and len(args) == 1:
            return TenseDuality(int(args[0]))
        if head == "mp" and len(args) == 2:
            return MP(int(args[0]), int(args[1]))
        if head == "nec" and len(args) == 2:
            return Nec(int(args[0]), int(args[1]))
        if head == "extra":
            return ExtraAxiomInstance(_parse_subst(rest))
        if head == "axiom" and args:
            idx, _, subst = rest.strip().partition(" ")
            return BaseAxiomInstance(int(idx), _parse_subst(subst))
    except ValueError as exc:
        raise ParseError(f"bad justification {text!r}") from exc
    raise ParseError(f"bad justification {text!r}")


def parse_proof(text: str) -> ProofObject:
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _STEP.match(line)
        if not m:
            raise ParseError(f"bad proof line {raw!r}")
        if int(m.group(1)) != len(steps):
            raise ParseError(f"proof lines must be numbered 0, 1, ...; got {m.group(1)}")
        steps.append(ProofStep(parse_formula(m.group(2)), parse_justification(m.group(3))))
    return ProofObject(tuple(steps))


def _format_subst(s) -> str:
    return "; ".join(f"p{v}:={format_formula(f)}" for v, f in s)


def format_justification(j: Justification) -> str:
    if isinstance(j, Tautology):
        return "taut"
    if isinstance(j, InBase):
        return "base"
    if isinstance(j, KInstance):
        return f"k {j.slot}"
    if isinstance(j, TenseDuality):
        return f"dual {j.slot}"
    if isinstance(j, MP):
        return f"mp {j.major} {j.minor}"
    if isinstance(j, Nec):
        return f"nec {j.step} {j.slot}"
    if isinstance(j, ExtraAxiomInstance):
        return ("extra " + _format_subst(j.subst)).rstrip()
    return (f"axiom {j.index} " + _format_subst(j.subst)).rstrip()


def format_proof(proof: ProofObject) -> str:
    return "\n".join(f"{k}: {format_formula(s.formula)} [{format_justification(s.justification)}]"
                     for k, s in enumerate(proof.steps))


# -- reals ----------------------------------------------------------------------------------

def real_from_record(rec: dict) -> Real:
    kind = rec.get("kind")
    if kind == "finite":
        return FiniteSet(int(c) for c in rec.get("codes", []))
    if kind == "cofinite":
        return Cofinite(int(c) for c in rec.get("excluded", []))
    if kind == "prefix":
        return ExplicitPrefix(str(rec["bits"]), bool(rec.get("default", False)))
    if kind == "equations":
        return all_equations(parse_signature(str(rec.get("sig", "2"))))
    if kind == "formulas":
        return all_formulas(bool(rec.get("tense", True)))
    if kind == "theory":
        sig = parse_signature(str(rec.get("sig", "2")))
        ax = AxiomSet(sig, tuple(parse_equation(e, sig) for e in rec.get("axioms", [])))
        budget = SaturationBudget(int(rec.get("max_term_size", 3)), int(rec.get("max_vars", 2)))
        return EquationalTheoryApprox(ax, rec.get("polarity", "under"), budget,
                                      int(rec.get("model_size", 2)))
    if kind == "logic":
        logic = LogicPresentation(tuple(parse_formula(f) for f in rec.get("axioms", [])),
                                  bool(rec.get("tense", False)))
        return ModalTheoryApprox(logic, rec.get("polarity", "over"),
                                 int(rec.get("frame_size", 2)), int(rec.get("proof_length", 4)),
                                 int(rec.get("formula_size", 5)))
    raise ParseError(f"unknown real kind {kind!r}")


def load_real(path: PathLike) -> Real:
    try:
        rec = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(rec, dict):
        raise ParseError(f"{path}: expected a JSON object")
    if rec.get("polarity", "under" if rec.get("kind") == "theory" else "over") not in ("under", "over"):
        raise ParseError(f"{path}: polarity must be 'under' or 'over'")
    return real_from_record(rec)
