"""Brute-force permutation machinery over all of ``Sigma_n`` (numpy).

Permutations are 0-based tuples ``p`` with ``p[i]`` the image of ``i``.
Composition ``(p * q)[i] = p[q[i]]`` (apply ``q`` first).  These routines
enumerate the whole symmetric group and are meant as independent oracles, so
they refuse degrees above ``MAX_DEGREE``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceBound

MAX_DEGREE = 8

Perm = tuple[int, ...]


@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    """Array of shape ``(n!, n)`` holding every permutation of ``range(n)``."""
    if n > MAX_DEGREE:
        raise ResourceBound(f"refusing to list Sigma_{n}")
    arr = np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _inverses(n: int) -> np.ndarray:
    P = all_permutations(n)
    inv = np.argsort(P, axis=1).astype(np.int8)
    inv.setflags(write=False)
    return inv


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(n))


def commute(p: Sequence[int], q: Sequence[int]) -> bool:
    return compose(p, q) == compose(q, p)


def centralizer_mask(gens: Iterable[Sequence[int]], n: int) -> np.ndarray:
    """Boolean mask over ``all_permutations(n)`` of elements commuting with every generator."""
    P = all_permutations(n)
    mask = np.ones(len(P), dtype=bool)
    for g in gens:
        g = np.asarray(g, dtype=np.int8)
        # x g == g x  <=>  x[g[i]] == g[x[i]]
        mask &= np.all(P[:, g] == g[P], axis=1)
    return mask


def centralizer_order(gens: Iterable[Sequence[int]], n: int) -> int:
    return int(centralizer_mask(gens, n).sum())


def orbits(gens: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Orbits of the group generated by ``gens`` on ``range(n)``, each sorted."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values())


def is_transitive(gens: Sequence[Sequence[int]], n: int) -> bool:
    return len(orbits(gens, n)) <= 1


def perm_order(p: Sequence[int]) -> int:
    seen, out = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out = lcm(out, k)
    return out


def conjugates(tup: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """All simultaneous conjugates ``g x g^-1`` of a tuple; shape ``(n!, len(tup), n)``."""
    P, Pinv = all_permutations(n), _inverses(n)
    out = np.empty((len(P), len(tup), n), dtype=np.int8)
    for k, x in enumerate(tup):
        x = np.asarray(x, dtype=np.int8)
        # (g x g^-1)[i] = g[x[g^-1[i]]]
        out[:, k, :] = np.take_along_axis(P, x[Pinv], axis=1)
    return out
