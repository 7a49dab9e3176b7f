#!/usr/bin/env python3
# Finite abelian groups, Smith forms and Pontryagin duals.
#
# Everything here is exact integer arithmetic.  A group is stored by its
# invariant factors, a subgroup by the Hermite form of its preimage lattice.

from strickland_lab.abelian import (
    FiniteAbelianGroup,
    IntegerMatrix,
    Subgroup,
    cokernel,
    dual_of_surjection,
    enumerate_subgroups,
    pushout,
    smith_normal_form,
)

# Smith normal form with its transformation matrices
M = IntegerMatrix([[2, 0], [0, 3]])
S, U, V = smith_normal_form(M)
print("S =", S.tolist(), " U =", U.tolist(), " V =", V.tolist())
print("U M V == S:", (U @ M @ V).tolist() == S.tolist())

# Z/2 + Z modulo the element (1, -2) is cyclic of order 4
ck = cokernel([[2, 0], [1, -2]])
print("cokernel:", ck.torsion, "free rank", ck.free_rank)

# subgroups of order 4 in (Z/4)^2: six cyclic ones and one Klein four-group
G = FiniteAbelianGroup((4, 4))
for H in enumerate_subgroups(G, 4):
    print("  ", H, "  ~", H.invariant_factors())

# the dual of Z^2 -> Z/4, e1 -> 1, e2 -> 2, as a subgroup of (Q/Z)^2
D = dual_of_surjection([(1,), (2,)], FiniteAbelianGroup((4,)))
print("dual points:", sorted(tuple(str(c) for c in pt) for pt in D.to_fractions()))
print("same as <(1,2)>:", D == Subgroup.generated_by(G, [(1, 2)]))

# pushouts of Z/2 <- Z -> Z along multiplication by 2
Z2 = FiniteAbelianGroup((2,))
print("pushout, a = 1:", pushout([(1,)], Z2, [(2,)], 1).torsion)
print("pushout, a = 0:", pushout([(0,)], Z2, [(2,)], 1).torsion)
