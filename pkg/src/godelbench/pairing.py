"""Cantor pairing and finite-sequence coding on arbitrary-precision naturals."""

from __future__ import annotations

from math import isqrt
from typing import Iterable


def pair(a: int, b: int) -> int:
    """Cantor pairing ``(a+b)(a+b+1)/2 + b``; a bijection from pairs of naturals to naturals.

    >>> pair(0, 0), pair(1, 0), pair(0, 1), pair(0, 2)
    (0, 1, 2, 5)
    """
    if a < 0 or b < 0:
        raise ValueError("pair() is defined on naturals only")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(c: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if c < 0:
        raise ValueError("unpair() is defined on naturals only")
    w = (isqrt(8 * c + 1) - 1) // 2
    b = c - w * (w + 1) // 2
    return w - b, b


def seq(items: Iterable[int]) -> int:
    """Code a finite sequence: ``seq([]) = 0``, ``seq([x, *rest]) = pair(x, seq(rest)) + 1``."""
    code = 0
    for x in reversed(list(items)):
        code = pair(x, code) + 1
    return code


def unseq(c: int) -> list[int]:
    """Inverse of :func:`seq`. Every natural codes exactly one sequence."""
    if c < 0:
        raise ValueError("unseq() is defined on naturals only")
    out = []
    while c:
        x, c = unpair(c - 1)
        out.append(x)
    return out
