"""Hilbert proofs for normal modal and tense logics.

A proof is a list of lines, each a formula with a justification. Uniform substitution is
folded into the axiom justifications (``BaseAxiomInstance``, ``ExtraAxiomInstance``), so the
only inference rules are modus ponens and necessitation.

The base logic is given either by a finite :class:`LogicPresentation` (axiomatic mode) or by a
membership oracle over formula codes (oracle mode, justification ``InBase``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Union

from .codec import decode_formula, encode_formula, is_formula_code
from .errors import MalformedCode, MalformedProof
from .formulas import (BOT, And, Bot, Box, Formula, Implies, Prop, fsize, fsubstitute,
                       is_duality_instance, is_k_instance, match, props, uses_slot)
from .kripke import LogicPresentation
from .pairing import pair, seq, unpair, unseq

Subst = tuple[tuple[int, Formula], ...]


def make_subst(mapping: Mapping[int, Formula]) -> Subst:
    return tuple(sorted(mapping.items()))


@dataclass(frozen=True)
class InBase:
    pass


@dataclass(frozen=True)
class BaseAxiomInstance:
    index: int
    subst: Subst = ()


@dataclass(frozen=True)
class Tautology:
    pass


@dataclass(frozen=True)
class KInstance:
    slot: int = 0


@dataclass(frozen=True)
class TenseDuality:
    slot: int = 0


@dataclass(frozen=True)
class ExtraAxiomInstance:
    subst: Subst = ()


@dataclass(frozen=True)
class MP:
    major: int  # line holding ``minor -> this``
    minor: int


@dataclass(frozen=True)
class Nec:
    step: int
    slot: int = 0


Justification = Union[InBase, BaseAxiomInstance, Tautology, KInstance, TenseDuality,
                      ExtraAxiomInstance, MP, Nec]


@dataclass(frozen=True)
class ProofStep:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class ProofObject:
    steps: tuple[ProofStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.steps[-1].formula if self.steps else None

    def __len__(self) -> int:
        return len(self.steps)


# -- tautologies ---------------------------------------------------------------------------

def skeleton_atoms(f: Formula) -> list[Formula]:
    """Propositional atoms of the skeleton: variables and maximal boxed subformulas."""
    out: dict[Formula, None] = {}

    def walk(g: Formula):
        if isinstance(g, (Prop, Box)):
            out.setdefault(g, None)
        elif isinstance(g, (And, Implies)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return list(out)


@lru_cache(maxsize=1 << 16)
def tautology_check(f: Formula) -> bool:
    """Truth-table check of the propositional skeleton (boxed subformulas act as atoms)."""
    atoms = skeleton_atoms(f)
    index = {a: k for k, a in enumerate(atoms)}
    width = len(atoms)
    low = min(width, 12)
    full = (1 << (1 << low)) - 1
    for outer in range(1 << (width - low)):
        def ev(g: Formula) -> int:
            if isinstance(g, Bot):
                return 0
            if isinstance(g, (Prop, Box)):
                k = index[g]
                if k < low:
                    return _bit_pattern(k, low)
                return full if outer >> (k - low) & 1 else 0
            if isinstance(g, And):
                return ev(g.left) & ev(g.right)
            return (full ^ ev(g.left)) | ev(g.right)

        if ev(f) != full:
            return False
    return True


@lru_cache(maxsize=None)
def _bit_pattern(bit: int, width_bits: int) -> int:
    total = 1 << width_bits
    block = 1 << bit
    unit = ((1 << block) - 1) << block
    return unit * ((1 << total) - 1) // ((1 << (2 * block)) - 1)


# -- checking ------------------------------------------------------------------------------

Oracle = Callable[[int], bool]


def _as_oracle(base) -> Oracle:
    if callable(base):
        return base
    return lambda c: c in base


def _check_subst(subst: Subst, tense: bool) -> dict[int, Formula]:
    out = {}
    for item in subst:
        if not (isinstance(item, tuple) and len(item) == 2):
            raise MalformedProof(f"bad substitution entry {item!r}")
        var, val = item
        if not isinstance(var, int) or var < 0 or var in out:
            raise MalformedProof(f"bad substitution variable {var!r}")
        if not isinstance(val, (Prop, Bot, And, Implies, Box)):
            raise MalformedProof(f"substitution value for p{var} is not a formula")
        if not tense and uses_slot(val, 1):
            raise MalformedProof("box1 in a unimodal substitution")
        out[var] = val
    return out


def _check_slot(slot, tense: bool) -> None:
    if slot not in ((0, 1) if tense else (0,)):
        raise MalformedProof(f"slot {slot!r} invalid in {'tense' if tense else 'unimodal'} mode")


def check_proof(base: Union[LogicPresentation, Oracle, Iterable[int]], extra: Optional[int],
                proof: ProofObject, goal: int, *, tense: Optional[bool] = None) -> bool:
    """True iff every line of ``proof`` is justified and the last line codes ``goal``.

    ``base`` is a presentation (axiomatic mode) or a membership oracle on formula codes.
    ``extra`` is the code of the additional axiom (``L + extra``) or None. Structural defects
    raise :class:`MalformedProof`; unjustified lines just make the result False.
    """
    axiomatic = isinstance(base, LogicPresentation)
    if tense is None:
        tense = base.tense if axiomatic else False
    oracle = None if axiomatic else _as_oracle(base)
    extra_f = None
    if extra is not None and is_formula_code(extra, tense):
        extra_f = decode_formula(extra, tense)
    if not proof.steps:
        return False
    ok = True
    for k, step in enumerate(proof.steps):
        f, j = step.formula, step.justification
        if not isinstance(f, (Prop, Bot, And, Implies, Box)):
            raise MalformedProof(f"line {k} is not a formula")
        if not tense and uses_slot(f, 1):
            raise MalformedProof(f"line {k}: box1 in unimodal mode")
        if isinstance(j, MP):
            for idx in (j.major, j.minor):
                if not isinstance(idx, int) or not 0 <= idx < k:
                    raise MalformedProof(f"line {k}: MP cites line {idx}")
            ok = ok and proof.steps[j.major].formula == Implies(proof.steps[j.minor].formula, f)
        elif isinstance(j, Nec):
            if not isinstance(j.step, int) or not 0 <= j.step < k:
                raise MalformedProof(f"line {k}: Nec cites line {j.step}")
            _check_slot(j.slot, tense)
            ok = ok and f == Box(j.slot, proof.steps[j.step].formula)
        elif isinstance(j, Tautology):
            ok = ok and tautology_check(f)
        elif isinstance(j, KInstance):
            _check_slot(j.slot, tense)
            ok = ok and is_k_instance(f, j.slot)
        elif isinstance(j, TenseDuality):
            if not tense:
                raise MalformedProof(f"line {k}: tense duality in unimodal mode")
            _check_slot(j.slot, tense)
            ok = ok and is_duality_instance(f, j.slot)
        elif isinstance(j, ExtraAxiomInstance):
            s = _check_subst(j.subst, tense)
            ok = ok and extra_f is not None and fsubstitute(extra_f, s) == f
        elif isinstance(j, BaseAxiomInstance):
            s = _check_subst(j.subst, tense)
            if not axiomatic:
                raise MalformedProof(f"line {k}: axiom instance needs a presentation")
            if not isinstance(j.index, int) or not 0 <= j.index < len(base.axioms):
                raise MalformedProof(f"line {k}: no base axiom {j.index!r}")
            ok = ok and fsubstitute(base.axioms[j.index], s) == f
        elif isinstance(j, InBase):
            if oracle is None:
                raise MalformedProof(f"line {k}: InBase needs an oracle")
            ok = ok and bool(oracle(encode_formula(f)))
        else:
            raise MalformedProof(f"line {k}: unknown justification {j!r}")
    return ok and encode_formula(proof.steps[-1].formula) == goal


# -- proof codes ---------------------------------------------------------------------------

def _subst_code(s: Subst) -> int:
    return seq(pair(v, encode_formula(f)) for v, f in s)


def encode_justification(j: Justification) -> int:
    if isinstance(j, InBase):
        return pair(0, 0)
    if isinstance(j, BaseAxiomInstance):
        return pair(1, pair(j.index, _subst_code(j.subst)))
    if isinstance(j, Tautology):
        return pair(2, 0)
    if isinstance(j, KInstance):
        return pair(3, j.slot)
    if isinstance(j, TenseDuality):
        return pair(4, j.slot)
    if isinstance(j, ExtraAxiomInstance):
        return pair(5, _subst_code(j.subst))
    if isinstance(j, MP):
        return pair(6, pair(j.major, j.minor))
    if isinstance(j, Nec):
        return pair(7, pair(j.step, j.slot))
    raise TypeError(j)


def _decode_subst(c: int, tense: bool) -> Subst:
    out = []
    for item in unseq(c):
        v, fc = unpair(item)
        out.append((v, decode_formula(fc, tense)))
    return tuple(out)


def decode_justification(c: int, tense: bool = True) -> Justification:
    tag, payload = unpair(c)
    if tag in (0, 2):
        if payload:
            raise MalformedCode(f"justification tag {tag} carries payload")
        return InBase() if tag == 0 else Tautology()
    if tag == 1:
        idx, s = unpair(payload)
        return BaseAxiomInstance(idx, _decode_subst(s, tense))
    if tag == 3:
        return KInstance(payload)
    if tag == 4:
        return TenseDuality(payload)
    if tag == 5:
        return ExtraAxiomInstance(_decode_subst(payload, tense))
    if tag == 6:
        return MP(*unpair(payload))
    if tag == 7:
        return Nec(*unpair(payload))
    raise MalformedCode(f"unknown justification tag {tag}")


def encode_proof(proof: ProofObject) -> int:
    return seq(pair(encode_formula(s.formula), encode_justification(s.justification))
               for s in proof.steps)


def decode_proof(c: int, tense: bool = True) -> ProofObject:
    if c < 0:
        raise MalformedCode("negative code")
    steps = []
    for item in unseq(c):
        fc, jc = unpair(item)
        steps.append(ProofStep(decode_formula(fc, tense), decode_justification(jc, tense)))
    return ProofObject(tuple(steps))


def proof_predicate(oracle, extra: int, p: int, goal: int, tense: bool = True) -> bool:
    """``Proof(A, i, p, j)``: ``p`` codes a proof of formula ``j`` in ``L_A + formula i``.
    Total on naturals."""
    try:
        proof = decode_proof(p, tense)
        return check_proof(oracle, extra, proof, goal, tense=tense)
    except (MalformedCode, MalformedProof):
        return False


# -- search --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Found:
    proof: ProofObject


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


@dataclass
class _Universe:
    formulas: list[Formula]
    index: dict[Formula, int]
    one_step: list[Optional[Justification]]  # tautology / K / duality, independent of axioms


@lru_cache(maxsize=64)
def _universe(atoms: tuple[int, ...], cap: int, tense: bool) -> _Universe:
    slots = (0, 1) if tense else (0,)
    by_size: dict[int, list[Formula]] = {1: [Prop(a) for a in atoms] + [BOT]}
    for s in range(2, cap + 1):
        level: list[Formula] = [Box(sl, g) for sl in slots for g in by_size[s - 1]]
        for ls in range(1, s - 1):
            for a in by_size[ls]:
                for b in by_size[s - 1 - ls]:
                    level.append(And(a, b))
                    level.append(Implies(a, b))
        by_size[s] = level
    formulas = [f for s in range(1, cap + 1) for f in by_size[s]]
    one_step: list[Optional[Justification]] = []
    for f in formulas:
        j: Optional[Justification] = None
        if tautology_check(f):
            j = Tautology()
        else:
            for sl in slots:
                if is_k_instance(f, sl):
                    j = KInstance(sl)
                    break
                if tense and is_duality_instance(f, sl):
                    j = TenseDuality(sl)
                    break
        one_step.append(j)
    return _Universe(formulas, {f: i for i, f in enumerate(formulas)}, one_step)


def search_proof(base: LogicPresentation, extra: Optional[int], goal: int, length_bound: int,
                 formula_size_bound: int) -> Union[Found, Unknown]:
    """Shortest-first proof search in ``base + extra`` with at most ``length_bound`` lines, each
    of at most ``formula_size_bound`` symbols, over the variables of the goal and axioms.

    Lines are grown level by level (a level-ℓ formula has a proof tree with ℓ nodes), which is
    iterative deepening over proof length. ``Unknown`` never claims unprovability.
    """
    if length_bound < 1 or formula_size_bound < 1:
        raise ValueError("bounds must be >= 1")
    tense = base.tense
    if not is_formula_code(goal, tense):
        return Unknown("goal is not a formula code")
    goal_f = decode_formula(goal, tense)
    extra_f = decode_formula(extra, tense) if extra is not None and is_formula_code(extra, tense) \
        else None
    if fsize(goal_f) > formula_size_bound:
        return Unknown("goal exceeds the formula-size cap")
    atoms = set(props(goal_f))
    for ax in base.axioms + ((extra_f,) if extra_f is not None else ()):
        atoms |= props(ax)
    uni = _universe(tuple(sorted(atoms)) or (0,), formula_size_bound, tense)

    cost: dict[int, int] = {}
    how: dict[int, tuple] = {}
    target = uni.index[goal_f]
    for i, f in enumerate(uni.formulas):
        j = uni.one_step[i]
        if j is None and extra_f is not None:
            s = match(extra_f, f)
            if s is not None:
                j = ExtraAxiomInstance(make_subst(s))
        if j is None:
            for k, ax in enumerate(base.axioms):
                s = match(ax, f)
                if s is not None:
                    j = BaseAxiomInstance(k, make_subst(s))
                    break
        if j is not None:
            cost[i] = 1
            how[i] = ("leaf", j)
    implications = [(i, uni.index[f.left], uni.index[f.right])
                    for i, f in enumerate(uni.formulas) if isinstance(f, Implies)]
    slots = (0, 1) if tense else (0,)
    level = 1
    while target not in cost and level < length_bound:
        level += 1
        fresh: dict[int, tuple] = {}
        for i, f in enumerate(uni.formulas):
            if cost.get(i) == level - 1:
                for sl in slots:
                    b = uni.index.get(Box(sl, f))
                    if b is not None and b not in cost and b not in fresh:
                        fresh[b] = ("nec", i, sl)
        for imp, a, c in implications:
            if c in cost or c in fresh or imp not in cost or a not in cost:
                continue
            if cost[imp] + cost[a] + 1 <= level:
                fresh[c] = ("mp", imp, a)
        if not fresh:
            break
        for i in sorted(fresh):
            cost[i] = level
            how[i] = fresh[i]
    if target not in cost:
        return Unknown(f"no proof within {length_bound} lines and size {formula_size_bound}")
    return Found(_linearize(uni, how, target))


def _linearize(uni: _Universe, how: dict[int, tuple], target: int) -> ProofObject:
    line: dict[int, int] = {}
    steps: list[ProofStep] = []

    def emit(i: int) -> int:
        if i in line:
            return line[i]
        rule = how[i]
        if rule[0] == "leaf":
            j: Justification = rule[1]
        elif rule[0] == "nec":
            j = Nec(emit(rule[1]), rule[2])
        else:
            major = emit(rule[1])
            j = MP(major, emit(rule[2]))
        steps.append(ProofStep(uni.formulas[i], j))
        line[i] = len(steps) - 1
        return line[i]

    emit(target)
    return ProofObject(tuple(steps))


# -- tabularity formulas and bounded pretabularity -----------------------------------------

@dataclass(frozen=True)
class TabTable:
    """Codes of the tabularity formulas ``tab_n`` on a finite domain (supplied externally)."""

    codes: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "codes", dict(sorted(self.codes.items())))
        for n, c in self.codes.items():
            if n < 0 or not is_formula_code(c, True):
                raise MalformedCode(f"tab entry {n}: {c} is not a formula code")

    def __getitem__(self, n: int) -> int:
        return self.codes[n]

    def get(self, n: int) -> Optional[int]:
        return self.codes.get(n)

    def __len__(self) -> int:
        return len(self.codes)

    @classmethod
    def from_formulas(cls, table: Mapping[int, Formula]) -> "TabTable":
        return cls({n: encode_formula(f) for n, f in table.items()})

    @classmethod
    def load(cls, path: Union[str, Path]) -> "TabTable":
        """Lines ``n <formula>``; blank lines and ``#`` comments ignored."""
        from .parsing import parse_formula
        table = {}
        for raw in Path(path).read_text().splitlines():
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            n, _, body = text.partition(" ")
            table[int(n)] = parse_formula(body)
        return cls.from_formulas(table)


@dataclass(frozen=True)
class Discharge:
    disjunct: str  # "member" | "tab" | "bottom"
    proof: ProofObject
    tab_index: Optional[int] = None


@dataclass(frozen=True)
class PretabConsistent:
    code_bound: int
    ledger: Mapping[int, tuple[Discharge, ...]]


@dataclass(frozen=True)
class PretabFalsified:
    code: int
    ledger: Mapping[int, tuple[Discharge, ...]]


def discharges(logic: LogicPresentation, tabs: TabTable, code: int, proof_length_bound: int,
               formula_size_bound: int) -> tuple[Discharge, ...]:
    """Which of ``code ∈ L``, ``L + code ⊢ tab_n``, ``L + code ⊢ bot`` are witnessed in bounds."""
    out = []
    r = search_proof(logic, None, code, proof_length_bound, formula_size_bound)
    if isinstance(r, Found):
        out.append(Discharge("member", r.proof))
    for n, tab in tabs.codes.items():
        r = search_proof(logic, code, tab, proof_length_bound, formula_size_bound)
        if isinstance(r, Found):
            out.append(Discharge("tab", r.proof, n))
            break
    r = search_proof(logic, code, encode_formula(BOT), proof_length_bound, formula_size_bound)
    if isinstance(r, Found):
        out.append(Discharge("bottom", r.proof))
    return tuple(out)


def pretabular_bounded(logic: LogicPresentation, tabs: TabTable, formula_code_bound: int,
                       proof_length_bound: int, formula_size_bound: int = 5
                       ) -> Union[PretabConsistent, PretabFalsified]:
    """Bounded evidence for pretabularity of a tense logic.

    Every formula code ``i <= formula_code_bound`` must be discharged by one of the three
    disjuncts within the proof bounds. ``PretabFalsified(i)`` reports the first code with no
    witnessed disjunct; it is evidence at this bound, not a refutation.
    """
    if not logic.tense:
        raise ValueError("pretabularity is checked for tense logics")
    if not len(tabs):
        raise ValueError("tab table is empty")
    ledger: dict[int, tuple[Discharge, ...]] = {}
    for i in range(formula_code_bound + 1):
        if not is_formula_code(i, True):
            continue
        got = discharges(logic, tabs, i, proof_length_bound, formula_size_bound)
        ledger[i] = got
        if not got:
            return PretabFalsified(i, ledger)
    return PretabConsistent(formula_code_bound, ledger)
