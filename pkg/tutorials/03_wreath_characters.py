#!/usr/bin/env python3
# Class functions on A wr S_n and the transfer span at height one.
#
# Inducing indicator functions from the Young subgroups A wr (S_l x S_m)
# spans exactly the class functions that vanish on the n-cycle classes.
# What remains is detected by the norm map to A.

from fractions import Fraction

from strickland_lab.abelian import FiniteAbelianGroup
from strickland_lab.wreath import (
    ClassFunction,
    WreathProduct,
    YoungSubgroup,
    canonical_representative,
    induce,
    inner_product,
    norm_pullback_bijectivity,
    restrict,
    verify_height0,
)

Z2 = FiniteAbelianGroup((2,))
G = WreathProduct(Z2, 2)  # dihedral of order 8
print("classes of Z/2 wr S_2:")
for label, size in G.classes:
    w = canonical_representative(Z2, label)
    print(f"  {label!s:18s} size {size}  rep v={w.vector} perm={w.perm}")

H = YoungSubgroup(Z2, 1, 1)
f = ClassFunction.indicator(H, H.labels[0])
print("induced indicator:", [str(v) for v in induce(f, G).vector()])

# Frobenius reciprocity on a pair of class functions
f = ClassFunction.from_vector(H, [1, -2, Fraction(1, 2), 3])
g = ClassFunction.from_vector(G, [Fraction(k, 3) for k in range(5)])
print("<Ind f, g> =", inner_product(induce(f, G), g), " <f, Res g> =", inner_product(f, restrict(g, H)))

for A in (FiniteAbelianGroup(), Z2, FiniteAbelianGroup((3,)), FiniteAbelianGroup((2, 2))):
    for n in (2, 3):
        r = verify_height0(A, n)
        print(f"A={A!s:10s} n={n}: span {r.span_dim} = #classes {r.num_classes} - |A| {A.order};",
              "ok" if r.ok else "FAILED", "| norm bijective:", norm_pullback_bijectivity(A, n))
