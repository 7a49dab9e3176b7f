"""Conjugacy classes of maps ``Z^h -> A wr Sigma_n`` and their centralizers.

A map ``alpha: Z^h -> A wr Sigma_n`` is the same thing as an action of
``Z^h + A`` on ``A x [n]`` in which ``A`` acts freely.  Up to conjugacy such
an action is a multiset of transitive pieces, and a transitive piece is
determined by its stabilizer, a finite-index subgroup ``K`` of ``Z^h + A``
with ``K`` meeting ``A`` trivially.  The quotient ``t: Z^h + A -> A_t = (Z^h + A)/K``
is the *type* of the piece.

``Z^h + A`` is presented as ``Z^(h+q)`` modulo ``0 + diag(n_1..n_q)`` where
``A = Z/n_1 + ... + Z/n_q``; a kernel is stored as the Hermite form of its
preimage lattice in ``Z^(h+q)``.

Maps out of ``Z_p^h`` correspond to the classes whose types all have
p-power order; pass ``prime=p`` to restrict to those.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from . import perms as P
from .abelian import Cokernel, FiniteAbelianGroup, IntegerMatrix, cokernel, hermite_normal_form
from .errors import ResourceBound

__all__ = [
    "TypeClass",
    "ActionClass",
    "CentralizerShape",
    "WreathElement",
    "sublattices",
    "enumerate_types",
    "enumerate_action_classes",
    "centralizer_shape",
    "is_monotypical",
    "survives_transfer",
    "to_wreath_elements",
    "to_permutations",
    "diagonal_permutations",
    "classify_permutations",
    "young_factorizations",
    "brute_force_class_count",
]


def _is_power_of(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def sublattices(h: int, index: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Hermite forms of all sublattices of ``Z^h`` of the given index."""
    for diag in itertools.product(range(1, index + 1), repeat=h):
        if prod(diag) != index:
            continue
        slots = [(i, j) for j in range(h) for i in range(j)]
        for vals in itertools.product(*(range(diag[j]) for _, j in slots)):
            rows = [[0] * h for _ in range(h)]
            for i in range(h):
                rows[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class TypeClass:
    """A surjection ``t: Z^h + A -> A_t`` whose kernel meets ``A`` trivially.

    Two types are equal iff their kernels agree, which is what comparing the
    canonical ``kernel`` lattices does.
    """

    base: FiniteAbelianGroup
    h: int
    kernel: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        q = self.base.rank
        lat = self.kernel
        if len(lat) != self.h + q or any(len(r) != self.h + q for r in lat):
            raise ValueError("kernel must be a full-rank lattice in Z^(h+q)")
        tail = tuple(r[self.h :] for r in lat[self.h :])
        if tail != tuple(tuple(r) for r in self.base.relations()):
            raise ValueError("kernel of a type must meet A trivially")

    @cached_property
    def _coker(self) -> Cokernel:
        return cokernel(IntegerMatrix(self.kernel, cols=self.h + self.base.rank))

    @property
    def quotient(self) -> FiniteAbelianGroup:
        """The group ``A_t``."""
        return self._coker.torsion

    @property
    def order(self) -> int:
        return prod(self.kernel[i][i] for i in range(len(self.kernel)))

    @property
    def index(self) -> int:
        """``|A_t| / |A|``: the number of ``A``-orbits in one orbit of this type."""
        return prod(self.kernel[i][i] for i in range(self.h))

    @property
    def surjection(self) -> IntegerMatrix:
        """Rows: images in ``A_t`` of the basis vectors of ``Z^h`` then of the generators of ``A``."""
        k = self.h + self.base.rank
        return IntegerMatrix(
            (self._coker.project(tuple(int(i == j) for j in range(k))) for i in range(k)),
            cols=self.quotient.rank,
        )

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return self._coker.project(v)

    def sort_key(self):
        return (self.order, self.quotient.invariant_factors, self.kernel)

    def __str__(self) -> str:
        return f"Type[{self.quotient}; kernel={[list(r) for r in self.kernel]}]"


@dataclass(frozen=True)
class CentralizerShape:
    """``prod_t A_t wr Sigma_{N_t}``."""

    factors: tuple[tuple[FiniteAbelianGroup, int], ...]

    @property
    def order(self) -> int:
        return prod(At.order**N * factorial(N) for At, N in self.factors)

    def __str__(self) -> str:
        return " x ".join(f"({At}) wr S{N}" for At, N in self.factors) or "1"


@dataclass(frozen=True)
class ActionClass:
    """Conjugacy class of ``Z^h -> A wr Sigma_n`` as a sorted multiset of types."""

    base: FiniteAbelianGroup
    h: int
    n: int
    types: tuple[tuple[TypeClass, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for t, N in self.types:
            if t.base != self.base or t.h != self.h:
                raise ValueError("all types must share the base group and rank")
            if N < 1:
                raise ValueError("multiplicities must be positive")
            merged[t] += N
        types = tuple(sorted(merged.items(), key=lambda tn: tn[0].sort_key()))
        object.__setattr__(self, "types", types)
        if sum(N * t.order for t, N in types) != self.n * self.base.order:
            raise ValueError("orbit sizes must add up to n|A|")

    @property
    def num_orbits(self) -> int:
        return sum(N for _, N in self.types)

    def __str__(self) -> str:
        return " + ".join(f"{N}x{t}" for t, N in self.types)


def enumerate_types(
    A: FiniteAbelianGroup,
    h: int,
    max_index: int,
    *,
    min_index: int = 1,
    prime: int | None = None,
) -> list[TypeClass]:
    """All types ``t`` with ``min_index <= |A_t|/|A| <= max_index``.

    A kernel's Hermite form is ``[[B, C], [0, diag(n)]]`` with ``B`` the
    Hermite form of an index-``l`` sublattice of ``Z^h`` and ``C`` an
    arbitrary ``h x q`` block reduced modulo the ``n_j``; every such matrix
    occurs exactly once.
    """
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    q = A.rank
    rels = [tuple(r) for r in A.relations()]
    out = []
    for index in range(max(min_index, 1), max_index + 1):
        if prime is not None and not _is_power_of(index * A.order, prime):
            continue
        for B in sublattices(h, index):
            for C in itertools.product(A.elements(), repeat=h):
                top = tuple(B[i] + tuple(C[i]) for i in range(h))
                bottom = tuple((0,) * h + r for r in rels)
                out.append(TypeClass(A, h, top + bottom))
    return sorted(out, key=TypeClass.sort_key)


def _multisets(types: Sequence[TypeClass], budget: int, start: int = 0) -> Iterator[list[tuple[TypeClass, int]]]:
    if budget == 0:
        yield []
        return
    for k in range(start, len(types)):
        t = types[k]
        for N in range(1, budget // t.index + 1):
            for rest in _multisets(types, budget - N * t.index, k + 1):
                yield [(t, N)] + rest


def enumerate_action_classes(
    A: FiniteAbelianGroup, h: int, n: int, *, prime: int | None = None
) -> list[ActionClass]:
    """All conjugacy classes of maps ``Z^h -> A wr Sigma_n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    types = enumerate_types(A, h, n, prime=prime)
    return [ActionClass(A, h, n, tuple(ms)) for ms in _multisets(types, n)]


def centralizer_shape(c: ActionClass) -> CentralizerShape:
    return CentralizerShape(tuple((t.quotient, N) for t, N in c.types))


def is_monotypical(c: ActionClass) -> bool:
    return len(c.types) == 1


def survives_transfer(c: ActionClass) -> bool:
    """True iff no conjugate of ``c`` factors through ``A wr (Sigma_m x Sigma_{n-m})``, ``0<m<n``.

    A non-monotypical class splits along a type; a monotypical class of type
    ``t`` splits exactly for ``m`` divisible by ``|A_t|/|A|``, which exists
    unless there is a single orbit.
    """
    return is_monotypical(c) and c.types[0][1] == 1


@dataclass(frozen=True)
class WreathElement:
    """``(v, sigma)`` in ``A wr Sigma_n``; acts on ``A x [n]`` by ``(a, j) -> (a + v[sigma j], sigma j)``.

    With this action the product is ``(v, s)(w, t) = (v + s.w, s t)`` where
    ``(s.w)[k] = w[s^-1 k]``.
    """

    base: FiniteAbelianGroup
    vector: tuple[tuple[int, ...], ...]
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, A: FiniteAbelianGroup, n: int) -> WreathElement:
        return cls(A, (A.zero(),) * n, tuple(range(n)))

    def __mul__(self, other: WreathElement) -> WreathElement:
        A = self.base
        inv = P.inverse(self.perm)
        vec = tuple(A.add(self.vector[k], other.vector[inv[k]]) for k in range(self.n))
        return WreathElement(A, vec, P.compose(self.perm, other.perm))

    def inverse(self) -> WreathElement:
        A = self.base
        # (v, s)^-1 = (-(s^-1 . v), s^-1)
        vec = tuple(A.neg(self.vector[self.perm[k]]) for k in range(self.n))
        return WreathElement(A, vec, P.inverse(self.perm))

    def to_permutation(self) -> tuple[int, ...]:
        """Image under ``s: A wr Sigma_n -> Sigma_{|A| n}``; point ``(a, j)`` is ``j*|A| + index(a)``."""
        A = self.base
        elems = A.elements()
        idx = {a: i for i, a in enumerate(elems)}
        out = [0] * (len(elems) * self.n)
        for j in range(self.n):
            sj = self.perm[j]
            for a in elems:
                out[j * len(elems) + idx[a]] = sj * len(elems) + idx[A.add(a, self.vector[sj])]
        return tuple(out)


def diagonal_permutations(A: FiniteAbelianGroup, n: int) -> list[tuple[int, ...]]:
    """``d = s o z`` applied to the generators of ``A``."""
    gens = [tuple(int(i == j) for j in range(A.rank)) for i in range(A.rank)]
    return [WreathElement(A, (g,) * n, tuple(range(n))).to_permutation() for g in gens]


def _orbit_layout(t: TypeClass):
    """Coset representatives of ``A`` in ``A_t`` and the inverse of ``A -> A_t``."""
    A, At, h = t.base, t.quotient, t.h
    embed = {}
    for a in A.elements():
        embed[t.project((0,) * h + a)] = a
    reps, covered = [], set()
    for x in At.elements():
        if x in covered:
            continue
        reps.append(x)
        covered.update(At.add(x, y) for y in embed)
    return reps, embed


def to_wreath_elements(c: ActionClass) -> list[WreathElement]:
    """Well-formed representative of ``c``: the images of the ``h`` basis vectors.

    Orbits are laid out on consecutive blocks of ``[n]`` in the sorted type
    order.
    """
    A, h, n = c.base, c.h, c.n
    vec = [[A.zero()] * n for _ in range(h)]
    perm = [[0] * n for _ in range(h)]
    start = 0
    for t, N in c.types:
        At = t.quotient
        reps, embed = _orbit_layout(t)
        where = {}
        for j, r in enumerate(reps):
            for y, a in embed.items():
                where[At.add(r, y)] = (j, a)
        l = len(reps)
        for _ in range(N):
            for i in range(h):
                g = t.project(tuple(int(i == k) for k in range(h + A.rank)))
                for j, r in enumerate(reps):
                    j2, b = where[At.add(r, g)]
                    perm[i][start + j] = start + j2
                    vec[i][start + j2] = b
            start += l
    return [WreathElement(A, tuple(vec[i]), tuple(perm[i])) for i in range(h)]


def to_permutations(c: ActionClass) -> list[tuple[int, ...]]:
    """The ``h`` commuting permutations of ``[n|A|]`` given by ``s o alpha``."""
    return [w.to_permutation() for w in to_wreath_elements(c)]


def classify_permutations(
    gens: Sequence[Sequence[int]], A: FiniteAbelianGroup, n: int
) -> ActionClass:
    """Type decomposition of ``h`` commuting permutations of ``[n|A|]`` commuting with ``d(A)``.

    Each orbit's stabilizer in ``Z^(h+q)`` is computed from Schreier
    generators of a spanning tree of the orbit.
    """
    h = len(gens)
    allgens = [tuple(g) for g in gens] + diagonal_permutations(A, n)
    k = len(allgens)
    degree = n * A.order
    for g in allgens:
        if len(g) != degree:
            raise ValueError(f"expected permutations of {degree} points")
    for x, y in itertools.combinations(allgens, 2):
        if not P.commute(x, y):
            raise ValueError("permutations do not commute")
    counts: Counter = Counter()
    for orbit in P.orbits(allgens, degree):
        root = orbit[0]
        word = {root: (0,) * k}
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for i, g in enumerate(allgens):
                    if g[x] not in word:
                        word[g[x]] = tuple(w + (i == j) for j, w in enumerate(word[x]))
                        nxt.append(g[x])
            frontier = nxt
        schreier = [
            tuple(w + (i == j) - v for j, (w, v) in enumerate(zip(word[x], word[g[x]])))
            for x in orbit
            for i, g in enumerate(allgens)
        ]
        rels = [(0,) * h + tuple(r) for r in A.relations()]
        lattice = hermite_normal_form(schreier + rels, k)
        counts[TypeClass(A, h, lattice)] += 1
    return ActionClass(A, h, n, tuple(counts.items()))


def young_factorizations(gens: Sequence[Sequence[int]], n: int) -> list[int]:
    """Sizes ``0 < m < n`` of subsets of ``[n]`` preserved by every generator.

    A tuple is conjugate into ``Sigma_m x Sigma_{n-m}`` exactly when such a
    subset of size ``m`` exists; this searches all subsets.
    """
    sizes = set()
    for m in range(1, n):
        for X in itertools.combinations(range(n), m):
            S = set(X)
            if all(g[x] in S for g in gens for x in X):
                sizes.add(m)
                break
    return sorted(sizes)


def brute_force_class_count(
    h: int, n: int, prime: int | None = None, *, transitive: bool = False
) -> int:
    """Conjugacy classes of commuting ``h``-tuples in ``Sigma_n`` by direct enumeration.

    With ``prime`` only tuples of ``prime``-power order elements count; with
    ``transitive`` only tuples acting transitively on ``[n]``.
    """
    if n > 6 or factorial(n) ** h > factorial(6) ** 2:
        raise ResourceBound(f"brute force over Sigma_{n}^{h} exceeds the budget")
    if h == 0:
        return int(not transitive or n <= 1)
    pool = P.all_permutations(n)
    if prime is not None:
        keep = [i for i, p in enumerate(pool) if _is_power_of(P.perm_order(p), prime)]
        pool = pool[keep]
    tuples = [(p,) for p in pool]
    for _ in range(h - 1):
        nxt = []
        for tup in tuples:
            mask = np.ones(len(pool), dtype=bool)
            for g in tup:
                mask &= np.all(pool[:, g] == g[pool], axis=1)
            nxt.extend(tup + (q,) for q in pool[mask])
        tuples = nxt
    seen: set[bytes] = set()
    count = 0
    for tup in tuples:
        key = np.stack(tup).astype(np.int8).tobytes()
        if key in seen:
            continue
        conj = P.conjugates(tup, n).reshape(-1, h * n)
        seen.update(row.tobytes() for row in conj)
        if transitive and not P.is_transitive([tuple(g) for g in tup], n):
            continue
        count += 1
    return count
