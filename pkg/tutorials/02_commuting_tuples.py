#!/usr/bin/env python3
# Commuting tuples up to conjugacy, described by types.
#
# A map Z^h -> A wr S_n is an action of Z^h + A on A x [n].  Its orbits are
# classified by their stabilizers ("types"); a conjugacy class is a multiset
# of types.  We list classes, compute centralizers from the types, and check
# them against brute force in the symmetric group.

from strickland_lab.abelian import FiniteAbelianGroup
from strickland_lab.actions import (
    brute_force_class_count,
    centralizer_shape,
    classify_permutations,
    enumerate_action_classes,
    is_monotypical,
    survives_transfer,
    to_permutations,
)
from strickland_lab.perms import centralizer_order

one = FiniteAbelianGroup()

# single permutations of 4 points: one class per partition of 4
for c in enumerate_action_classes(one, 1, 4):
    (g,) = to_permutations(c)
    print(f"{str(g):15s} centralizer {centralizer_shape(c)!s:35s}",
          "order", centralizer_shape(c).order, "brute", centralizer_order([g], 4),
          "| monotypical", is_monotypical(c), "| survives transfer", survives_transfer(c))

# commuting pairs in S_3, counted two ways
print("pairs in S_3:", len(enumerate_action_classes(one, 2, 3)), "classes;",
      "brute force says", brute_force_class_count(2, 3))

# only 2-power types: maps from Z_2^h rather than Z^h
print("2-power classes of Z -> S_4:", len(enumerate_action_classes(one, 1, 4, prime=2)))

# a nontrivial base group: A = Z/2, n = 2, so permutations of 4 points
Z2 = FiniteAbelianGroup((2,))
for c in enumerate_action_classes(Z2, 1, 2):
    gens = to_permutations(c)
    back = classify_permutations(gens, Z2, 2)
    print(" ", gens, "round trip ok:", back == c, " centralizer order", centralizer_shape(c).order)
