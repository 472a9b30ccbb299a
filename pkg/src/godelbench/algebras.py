"""Finite algebras over a signature: enumeration and equation checking.

``holds_in`` is the scalar reference check. ``satisfaction_matrix`` evaluates one equation in
every algebra of a size at once with numpy; it is used by the search routines and is tested
against ``holds_in``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping

import numpy as np

from .errors import EnumerationTooLarge, SignatureMismatch
from .terms import App, Equation, Signature, Term, Var, variables

DEFAULT_TABLE_CEILING = int(os.environ.get("GODELBENCH_MAX_ALGEBRAS", 2_000_000))


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier ``{0..size-1}``; ``tables[f]`` lists ``f(a_1..a_n)`` in lexicographic argument order."""

    sig: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be non-empty")
        if len(self.tables) != len(self.sig):
            raise SignatureMismatch("one table per symbol required")
        for ar, tab in zip(self.sig.arities, self.tables):
            if len(tab) != self.size ** ar or any(not 0 <= v < self.size for v in tab):
                raise ValueError("operation table is not total on the carrier")

    def apply(self, symbol: int, args: tuple[int, ...]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.tables[symbol][idx]

    def evaluate(self, t: Term, assignment: Mapping[int, int]) -> int:
        if isinstance(t, Var):
            return assignment[t.index]
        return self.apply(t.symbol, tuple(self.evaluate(a, assignment) for a in t.args))


def table_space(sig: Signature, size: int) -> int:
    return size ** sum(size ** a for a in sig.arities)


def _check_ceiling(sig: Signature, size: int, ceiling: int | None) -> int:
    count = table_space(sig, size)
    limit = DEFAULT_TABLE_CEILING if ceiling is None else ceiling
    if count > limit:
        raise EnumerationTooLarge(f"{count} algebras of size {size} exceed ceiling {limit}")
    return count


def enumerate_algebras(sig: Signature, size: int, ceiling: int | None = None
                       ) -> Iterator[FiniteAlgebra]:
    """Every algebra of exactly ``size`` elements once, in lexicographic table order."""
    _check_ceiling(sig, size, ceiling)
    widths = [size ** a for a in sig.arities]
    for flat in product(range(size), repeat=sum(widths)):
        tables, off = [], 0
        for w in widths:
            tables.append(flat[off:off + w])
            off += w
        yield FiniteAlgebra(sig, size, tuple(tables))


def holds_in(alg: FiniteAlgebra, e: Equation) -> bool:
    """True iff ``e`` holds under every assignment of carrier elements to its variables."""
    _check_symbols(alg.sig, e)
    vs = sorted(variables(e.left) | variables(e.right))
    for values in product(range(alg.size), repeat=len(vs)):
        env = dict(zip(vs, values))
        if alg.evaluate(e.left, env) != alg.evaluate(e.right, env):
            return False
    return True


def falsifying_assignment(alg: FiniteAlgebra, e: Equation) -> dict[int, int] | None:
    vs = sorted(variables(e.left) | variables(e.right))
    for values in product(range(alg.size), repeat=len(vs)):
        env = dict(zip(vs, values))
        if alg.evaluate(e.left, env) != alg.evaluate(e.right, env):
            return env
    return None


def _check_symbols(sig: Signature, e: Equation) -> None:
    def walk(t: Term):
        if isinstance(t, App):
            if t.symbol >= len(sig) or sig.arities[t.symbol] != len(t.args):
                raise SignatureMismatch(f"f{t.symbol}/{len(t.args)} not in signature")
            for a in t.args:
                walk(a)
    walk(e.left)
    walk(e.right)


# -- batched evaluation --------------------------------------------------------------------

class AlgebraBatch:
    """All algebras of one size as a ``(count, cells)`` table matrix, in enumeration order."""

    def __init__(self, sig: Signature, size: int, ceiling: int | None = None):
        count = _check_ceiling(sig, size, ceiling)
        self.sig, self.size = sig, size
        self.widths = [size ** a for a in sig.arities]
        self.offsets = np.cumsum([0] + self.widths[:-1]).tolist() if self.widths else []
        cells = sum(self.widths)
        rows = np.arange(count, dtype=np.int64)
        cols = [(rows // size ** (cells - 1 - j)) % size for j in range(cells)]
        dtype = np.int8 if size < 128 else np.int32
        self.tables = (np.stack(cols, axis=1) if cells else np.zeros((count, 0))).astype(dtype)

    def __len__(self) -> int:
        return self.tables.shape[0]

    def algebra(self, i: int) -> FiniteAlgebra:
        row = self.tables[i].tolist()
        tabs = tuple(tuple(row[o:o + w]) for o, w in zip(self.offsets, self.widths))
        return FiniteAlgebra(self.sig, self.size, tabs)

    def _eval(self, t: Term, assign: np.ndarray, var_pos: dict[int, int], rows: np.ndarray):
        if isinstance(t, Var):
            return np.broadcast_to(assign[:, var_pos[t.index]], (len(rows), assign.shape[0]))
        ar = self.sig.arities[t.symbol]
        off = self.offsets[t.symbol]
        sub = self.tables[rows, off:off + self.size ** ar]
        if ar == 0:
            return np.broadcast_to(sub[:, :1], (len(rows), assign.shape[0]))
        idx = np.zeros((len(rows), assign.shape[0]), dtype=np.int64)
        for a in t.args:
            idx = idx * self.size + self._eval(a, assign, var_pos, rows)
        return np.take_along_axis(sub, idx, axis=1)

    def satisfaction_matrix(self, e: Equation, rows: np.ndarray | None = None) -> np.ndarray:
        """Boolean ``(len(rows), assignments)``: does ``e`` hold under each assignment?"""
        _check_symbols(self.sig, e)
        if rows is None:
            rows = np.arange(len(self))
        vs = sorted(variables(e.left) | variables(e.right))
        assign = np.array(list(product(range(self.size), repeat=len(vs))), dtype=np.int64)
        assign = assign.reshape(self.size ** len(vs), len(vs))
        pos = {v: i for i, v in enumerate(vs)}
        return self._eval(e.left, assign, pos, rows) == self._eval(e.right, assign, pos, rows)

    def satisfying(self, equations, rows: np.ndarray | None = None) -> np.ndarray:
        """Indices of algebras (among ``rows``) in which every equation holds."""
        rows = np.arange(len(self)) if rows is None else rows
        for e in equations:
            if len(rows) == 0:
                break
            rows = rows[self.satisfaction_matrix(e, rows).all(axis=1)]
        return rows

    def assignment(self, e: Equation, k: int) -> dict[int, int]:
        vs = sorted(variables(e.left) | variables(e.right))
        values = list(product(range(self.size), repeat=len(vs)))[k]
        return dict(zip(vs, values))
