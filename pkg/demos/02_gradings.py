"""
Gradings of M_n and how they are verified
==========================================

Elementary gradings, Pauli gradings, tensor products and coarsenings, and
what a verification failure looks like.
"""

import numpy as np

from glab import AbelianGroup, build_field, elementary_grading, pauli_grading, tensor_gradings
from glab import factor_grading, support, verify_grading
from glab.grading import Grading, subspace_from_spanners
from glab.matrices import unit

F5 = build_field(5)

# deg E_ij = g_i^-1 g_j for the tuple (1, a, a^2)
Z3 = AbelianGroup((3,))
a = Z3.gen(0)
R = elementary_grading(Z3, 3, [Z3.identity, a, a * a], F5)
for g, V in R.components.items():
    print(f"R_{g}: dim {V.dim}")
print("associative:", verify_grading(R, "associative").ok)

# the Pauli grading of M_2 is fine: four 1-dimensional components
V4 = AbelianGroup((2, 2))
P = pauli_grading(V4, 2, V4.gens(), F5)
print("Pauli support", sorted(g.exps for g in support(P)[0]), "is a subgroup:", support(P)[1])

# tensoring with an elementary grading gives a grading of M_4
T = tensor_gradings(P, elementary_grading(V4, 2, [V4.identity, V4.gen(0)], F5))
print("M_4 grading dims:", {str(g): V.dim for g, V in T.components.items()})

# coarsen Z4 -> Z4/<a^2>
Z4 = AbelianGroup((4,))
b = Z4.gen(0)
coarse = factor_grading(elementary_grading(Z4, 3, [Z4.identity, b, b * b], F5), [b * b])
print("factor grading over", coarse.group, {str(g): V.dim for g, V in coarse.components.items()})

# move E_12 into the identity component and watch the check fail
Z2 = AbelianGroup((2,))
h = Z2.gen(0)
E = lambda i, j: unit(2, i, j)
bad = Grading(Z2, F5, 2, {Z2.identity: subspace_from_spanners(F5, 2, [E(0, 0), E(1, 1), E(0, 1)]),
                         h: subspace_from_spanners(F5, 2, [E(1, 0)])})
rep = verify_grading(bad, "associative")
v = rep.violations[0]
print("corrupted grading fails:", v)
print("x =", v.x.tolist(), " y =", v.y.tolist(), " xy =", v.product.tolist())
