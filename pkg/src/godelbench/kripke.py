"""Finite Kripke semantics: frame validity, frames up to isomorphism, FFr(L), fmp comparison.

``validates`` evaluates a formula for all valuations at once: the truth value of a subformula
at a point is a big integer whose bit ``v`` is its value under valuation number ``v``. Only
variables that occur in the formula are valuated.
"""

from __future__ import annotations

import heapq
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence, Union

import numpy as np

from .codec import encode_frame
from .errors import EnumerationTooLarge, ModeMismatch
from .formulas import And, Bot, Formula, Implies, Prop, is_tense, props
from .frames import FiniteFrame, _cell_maps, canonical_frame

DEFAULT_MAX_FRAME_SIZE = int(os.environ.get("GODELBENCH_MAX_FRAME_SIZE", 5))
_CHUNK_BITS = 16


@dataclass(frozen=True)
class LogicPresentation:
    """The least normal (or tense) logic containing ``axioms``."""

    axioms: tuple[Formula, ...] = ()
    tense: bool = False

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        if not self.tense and any(is_tense(a) for a in self.axioms):
            raise ModeMismatch("box1 used in a unimodal presentation")

    def extend(self, *more: Formula) -> "LogicPresentation":
        return LogicPresentation(self.axioms + tuple(more), self.tense)


@dataclass(frozen=True)
class EqualUpTo:
    max_size: int


@dataclass(frozen=True)
class Distinguished:
    frame: FiniteFrame
    validated_by: Literal["left", "right"]


FmpVerdict = Union[EqualUpTo, Distinguished]


# -- validity ------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pattern(bit: int, width_bits: int) -> int:
    """Bitmask over ``2**width_bits`` valuations whose bit ``v`` is bit ``bit`` of ``v``."""
    total = 1 << width_bits
    block = 1 << bit
    unit = ((1 << block) - 1) << block
    return unit * ((1 << total) - 1) // ((1 << (2 * block)) - 1)


def validates(frame: FiniteFrame, f: Formula) -> bool:
    """True iff ``f`` is true at every point under every valuation of its variables."""
    if is_tense(f) and not frame.tense:
        raise ModeMismatch("box1 needs a tense frame")
    n = frame.size
    vs = sorted(props(f))
    nbits = n * len(vs)
    low = min(nbits, _CHUNK_BITS)
    full = (1 << (1 << low)) - 1
    slot_index = {v: k for k, v in enumerate(vs)}
    rel = (frame.successors, frame.predecessors)
    for outer in range(1 << (nbits - low)):
        def atom(var: int, point: int) -> int:
            b = slot_index[var] * n + point
            if b < low:
                return _pattern(b, low)
            return full if outer >> (b - low) & 1 else 0

        memo: dict[Formula, list[int]] = {}

        def ev(g: Formula) -> list[int]:
            hit = memo.get(g)
            if hit is not None:
                return hit
            if isinstance(g, Prop):
                out = [atom(g.index, x) for x in range(n)]
            elif isinstance(g, Bot):
                out = [0] * n
            elif isinstance(g, And):
                a, b = ev(g.left), ev(g.right)
                out = [p & q for p, q in zip(a, b)]
            elif isinstance(g, Implies):
                a, b = ev(g.left), ev(g.right)
                out = [(full ^ p) | q for p, q in zip(a, b)]
            else:
                body = ev(g.body)
                out = []
                for succ in rel[g.slot][:n]:
                    acc = full
                    for y in succ:
                        acc &= body[y]
                    out.append(acc)
            memo[g] = out
            return out

        if any(v != full for v in ev(f)):
            return False
    return True


def validates_all(frame: FiniteFrame, formulas: Iterable[Formula]) -> bool:
    return all(validates(frame, f) for f in formulas)


# -- enumeration ---------------------------------------------------------------------------

def _check_size(max_size: int, ceiling: int | None) -> None:
    limit = DEFAULT_MAX_FRAME_SIZE if ceiling is None else ceiling
    if max_size > limit:
        raise EnumerationTooLarge(f"frame size {max_size} exceeds ceiling {limit}")


def canonical_masks(n: int) -> Iterator[int]:
    """Least relation mask of every isomorphism class on ``n`` points, ascending.

    Masks are visited in increasing order; an unvisited mask is the minimum of its orbit, so it
    is emitted and its whole orbit marked.
    """
    cells = n * n
    maps = np.array(_cell_maps(n), dtype=np.int64)
    weights = np.left_shift(np.int64(1), np.arange(cells, dtype=np.int64))
    total = 1 << cells
    seen = np.zeros(total, dtype=bool)
    chunk = 1 << 16
    shifts = np.arange(cells, dtype=np.int64)
    for start in range(0, total, chunk):
        for off in np.flatnonzero(~seen[start:start + chunk]).tolist():
            m = start + off
            if seen[m]:
                continue
            yield m
            bits = ((m >> shifts) & 1).astype(bool)
            seen[weights[maps[:, bits]].sum(axis=1)] = True


def enumerate_frames(max_size: int, tense: bool = False, ceiling: int | None = None
                     ) -> Iterator[FiniteFrame]:
    """One canonical frame per isomorphism class with 1..max_size points, by increasing code."""
    _check_size(max_size, ceiling)
    def stream(n: int):
        return ((encode_frame(FiniteFrame(n, m)), n, m) for m in canonical_masks(n))

    streams = [stream(n) for n in range(1, max_size + 1)]
    for _, n, m in heapq.merge(*streams):
        yield FiniteFrame(n, m, tense)


def frames_of_size(n: int, tense: bool = False) -> list[FiniteFrame]:
    return [FiniteFrame(n, m, tense) for m in canonical_masks(n)]


def _map(fn, items: Sequence, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def finite_frames_of(logic: LogicPresentation, max_size: int, threads: int = 1,
                     ceiling: int | None = None) -> list[FiniteFrame]:
    """Canonical frames of size <= max_size validating every axiom of ``logic``.

    Validity of the axioms suffices because frame validity is preserved by modus ponens,
    necessitation and uniform substitution, and the base axioms hold on every frame.
    """
    frames = list(enumerate_frames(max_size, logic.tense, ceiling))
    keep = _map(lambda fr: validates_all(fr, logic.axioms), frames, threads)
    return [fr for fr, ok in zip(frames, keep) if ok]


def fmp_equal_bounded(left: LogicPresentation, right: LogicPresentation, max_size: int,
                      threads: int = 1, ceiling: int | None = None) -> FmpVerdict:
    """Compare FFr(left) and FFr(right) on frames up to ``max_size``.

    Returns the first frame (in canonical-code order) validated by exactly one side, or
    ``EqualUpTo(max_size)``. Equality is only ever claimed up to the bound.
    """
    if left.tense != right.tense:
        raise ModeMismatch("cannot compare a tense and a unimodal presentation")
    frames = enumerate_frames(max_size, left.tense, ceiling)
    batch = max(1, threads) * 32
    while True:
        group = [fr for _, fr in zip(range(batch), frames)]
        if not group:
            return EqualUpTo(max_size)
        verdicts = _map(lambda fr: (validates_all(fr, left.axioms),
                                    validates_all(fr, right.axioms)), group, threads)
        for fr, (a, b) in zip(group, verdicts):
            if a != b:
                return Distinguished(fr, "left" if a else "right")


def is_isomorphic(a: FiniteFrame, b: FiniteFrame) -> bool:
    return a.size == b.size and canonical_frame(a).mask == canonical_frame(b).mask
