"""Row reduction over Q (Fractions) and over F_p."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns the nonzero rows and pivot columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    k = 0
    for col in range(ncols):
        piv = next((i for i in range(k, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[k], a[piv] = a[piv], a[k]
        p = a[k][col]
        a[k] = [x / p for x in a[k]]
        for i in range(len(a)):
            if i != k and a[i][col] != 0:
                q = a[i][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        pivots.append(col)
        k += 1
        if k == len(a):
            break
    return a[:k], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def echelon_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Reduced echelon basis of the F_p-span of ``rows``."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    k = 0
    for col in range(ncols):
        piv = next((i for i in range(k, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[k], a[piv] = a[piv], a[k]
        inv = pow(a[k][col], -1, p)
        a[k] = [x * inv % p for x in a[k]]
        for i in range(len(a)):
            if i != k and a[i][col]:
                q = a[i][col]
                a[i] = [(x - q * y) % p for x, y in zip(a[i], a[k])]
        k += 1
        if k == len(a):
            break
    return a[:k]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(echelon_mod_p(rows, p))
