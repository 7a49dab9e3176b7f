"""Components of the torsion loop space of ``BU(m)``, regular divisors, and the rank identity.

Roots of unity are written additively: a ``p^k``-th root of unity is an
element of ``Z/p^k``, and a character of a finite abelian group is a point
of ``(Q/Z)^d`` realized in ``(Z/p^k)^d``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, NamedTuple

from .abelian import FiniteAbelianGroup, Subgroup, dual_of_surjection, enumerate_subgroups, subgroups_with_projection
from .actions import ActionClass, brute_force_class_count, enumerate_types, survives_transfer
from .errors import NotTransitive, ResourceBound

__all__ = [
    "ComponentLabel",
    "DivisorOnTorus",
    "component_count",
    "enumerate_components",
    "iter_components",
    "multiset_count",
    "transitive_classes",
    "regular_divisor",
    "rank_identity_check",
    "RankReport",
    "fiber_count_check",
    "FiberReport",
    "fiber_partition_check",
    "PartitionReport",
]

MAX_COMPONENTS = 10**6


@dataclass(frozen=True)
class ComponentLabel:
    """Unordered ``m``-tuple of ordered ``h``-tuples in ``Z/p^k``, as (tuple, multiplicity) pairs."""

    p: int
    k: int
    h: int
    counts: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def m(self) -> int:
        return sum(s for _, s in self.counts)


@dataclass(frozen=True)
class DivisorOnTorus:
    """Finite formal sum of points of ``ambient`` with positive multiplicities."""

    ambient: FiniteAbelianGroup
    points: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def degree(self) -> int:
        return sum(s for _, s in self.points)

    @property
    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(x for x, _ in self.points)

    def support_subgroup(self) -> Subgroup | None:
        """The support as a Subgroup, or None if it is not closed under addition."""
        H = Subgroup.generated_by(self.ambient, self.support)
        return H if H.order == len(self.support) else None


def component_count(m: int, k: int, h: int, p: int) -> int:
    """``C(m + p^(hk) - 1, m)``: multisets of size ``m`` from ``p^(hk)`` labels."""
    return comb(m + p ** (h * k) - 1, m)


def iter_components(m: int, k: int, h: int, p: int) -> Iterator[ComponentLabel]:
    """Lazily yield every component label, in lexicographic order of the sorted tuple."""
    labels = list(itertools.product(range(p**k), repeat=h))
    # combinations come out sorted, so equal labels are adjacent
    for ms in itertools.combinations_with_replacement(labels, m):
        yield ComponentLabel(p, k, h, tuple((x, len(list(g))) for x, g in itertools.groupby(ms)))


def enumerate_components(m: int, k: int, h: int, p: int) -> list[ComponentLabel]:
    if component_count(m, k, h, p) > MAX_COMPONENTS:
        raise ResourceBound("too many components to list; use component_count")
    return list(iter_components(m, k, h, p))


@lru_cache(maxsize=None)
def multiset_count(m: int, L: int) -> int:
    """Size-``m`` multisets from ``L`` labels by choosing the multiplicity of the first label."""
    if L == 0:
        return int(m == 0)
    return sum(multiset_count(m - j, L - 1) for j in range(m + 1))


def _power_of(n: int, p: int) -> int | None:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def transitive_classes(p: int, k: int, d: int) -> list[ActionClass]:
    """Transitive classes of maps ``Z^d -> Sigma_(p^k)``: one per index-``p^k`` sublattice."""
    one = FiniteAbelianGroup()
    n = p**k
    return [ActionClass(one, d, n, ((t, 1),)) for t in enumerate_types(one, d, n, min_index=n, prime=p)]


def regular_divisor(c: ActionClass, p: int) -> DivisorOnTorus:
    """The regular representation of ``im(alpha)`` as a divisor on ``Lambda_k = (Z/p^k)^d``.

    It is the sum of all characters of ``A = im(alpha)``, i.e. the image of
    ``A*`` in ``(Q/Z)^d`` with every point of multiplicity one.
    """
    if c.base.order != 1:
        raise ValueError("regular_divisor needs the trivial base group")
    if not survives_transfer(c):
        raise NotTransitive(f"class {c} has {c.num_orbits} orbits")
    k = _power_of(c.n, p)
    if k is None:
        raise ValueError(f"degree {c.n} is not a power of {p}")
    t = c.types[0][0]
    images = [tuple(r) for r in t.surjection][: c.h]
    dual = dual_of_surjection(images, t.quotient, exponent=p**k)
    return DivisorOnTorus(dual.ambient, tuple((x, 1) for x in dual.elements()))


class RankReport(NamedTuple):
    p: int
    k: int
    d: int
    lhs: int
    rhs: int
    bijection_ok: bool
    oracle: int | None

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and self.bijection_ok and self.oracle in (None, self.lhs)


def rank_identity_check(p: int, k: int, d: int, *, oracle: bool = True) -> RankReport:
    """Transitive commuting ``d``-tuples in ``Sigma_(p^k)`` versus order-``p^k`` subgroups of ``(Q_p/Z_p)^d``.

    The left side comes from sublattice enumeration, the right from subgroup
    enumeration in ``(Z/p^k)^d``; the bijection ``alpha -> (im alpha)*`` is
    checked elementwise.  With ``oracle`` the left side is also counted by
    brute force over ``Sigma_(p^k)^d`` when that fits the budget.
    """
    if p**k > 16 or d > 4:
        raise ResourceBound("rank identity budget is p^k <= 16, d <= 4")
    classes = transitive_classes(p, k, d)
    subgroups = enumerate_subgroups(FiniteAbelianGroup.homocyclic(p**k, d), p**k)
    images = [regular_divisor(c, p).support_subgroup() for c in classes]
    bijection_ok = (
        None not in images and len(set(images)) == len(images) and set(images) == set(subgroups)
    )
    brute = None
    if oracle:
        try:
            brute = brute_force_class_count(d, p**k, p, transitive=True)
        except ResourceBound:
            brute = None
    return RankReport(p, k, d, len(classes), len(subgroups), bijection_ok, brute)


class FiberReport(NamedTuple):
    m: int
    h: int
    count: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.count == self.expected


def fiber_count_check(m: int, h: int, A_star: Subgroup) -> FiberReport:
    """Number of order-``m`` subgroups of ``Q/Z + (Q/Z)^h`` over ``A_star``, against ``|A_star|``."""
    if m % A_star.order:
        raise ValueError("|A_star| must divide m")
    return FiberReport(m, h, len(subgroups_with_projection(m, h, A_star)), A_star.order)


class PartitionReport(NamedTuple):
    m: int
    h: int
    fibers: tuple[FiberReport, ...]
    total: int

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.fibers) and sum(f.count for f in self.fibers) == self.total


def admissible_projections(m: int, h: int) -> list[Subgroup]:
    """Subgroups of ``(Q/Z)^h`` of order dividing ``m``, realized in ``(Z/m)^h``."""
    base = FiniteAbelianGroup.homocyclic(m, h)
    return [A for d in range(1, m + 1) if m % d == 0 for A in enumerate_subgroups(base, d)]


def fiber_partition_check(m: int, h: int) -> PartitionReport:
    """Fiber counts over every admissible ``A*`` and their sum against the total count."""
    fibers = tuple(fiber_count_check(m, h, A) for A in admissible_projections(m, h))
    total = len(enumerate_subgroups(FiniteAbelianGroup.homocyclic(m, 1 + h), m))
    return PartitionReport(m, h, fibers, total)
