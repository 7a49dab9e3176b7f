#!/usr/bin/env python3
# The Honda formal group modulo x^(p^n), and counting subgroups.
#
# Part one: below degree p^n the Honda law is additive, so [i](x) = ix and
# only the top Chern class of the regular representation of Z/p survives.
# Part two: transitive commuting tuples in S_(p^k) match order-p^k subgroups
# of (Q_p/Z_p)^d through the Pontryagin dual.

from strickland_lab.divisors import (
    component_count,
    fiber_partition_check,
    rank_identity_check,
    regular_divisor,
    transitive_classes,
)
from strickland_lab.honda import chern_subring_rank, honda_sum, i_series, regular_rep_chern, stirling_divisibility

print("x +_F y for p=3, n=1:", honda_sum(3, 1))
print("[2](x) for p=3, n=2:", i_series(2, 3, 2))
print("[3](x) for p=3, n=2:", i_series(3, 3, 2) or 0)
print("Chern scalars for p=5:", regular_rep_chern(5, 1).scalars)
print("e_i(1..4):", [v for _, v, _ in stirling_divisibility(5).table])
for p, n in [(2, 3), (3, 2), (5, 2)]:
    print(f"subring rank p={p} n={n}:", chern_subring_rank(p, n), "expected", (p**n - 1) // (p - 1))

for p, k, d in [(2, 1, 2), (2, 2, 2), (3, 1, 3)]:
    r = rank_identity_check(p, k, d)
    print(f"p={p} k={k} d={d}: {r.lhs} transitive classes, {r.rhs} subgroups, bijection {r.bijection_ok}")

c = transitive_classes(2, 2, 2)[0]
print("a regular divisor on (Z/4)^2:", sorted(x for x, _ in regular_divisor(c, 2).points))

r = fiber_partition_check(4, 1)
print("fibers over A* for m=4, h=1:", [(f.count, f.expected) for f in r.fibers], "total", r.total)
print("components of the 1-torsion loop space of BU(3), p=2, h=2:", component_count(3, 1, 2, 2))
