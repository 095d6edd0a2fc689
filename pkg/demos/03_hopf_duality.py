"""
Gradings as actions of the dual group algebra
=============================================

A grading is the same thing as an action of K = (FG)*: e_g projects onto
R_g, characters act as automorphisms, additive characters as derivations,
and divided powers generate K for cyclic p-groups.
"""

import numpy as np

from glab import AbelianGroup, build_field, elementary_grading
from glab import hopf
from glab.groups import additive_characters, characters

F5 = build_field(5)
Z2 = AbelianGroup((2,))
h = Z2.gen(0)
R = elementary_grading(Z2, 2, [Z2.identity, h], F5)

# e_h is the projection onto R_h
x = np.array([[1, 2], [3, 4]])
print("e_h . x =", hopf.act(hopf.e(Z2, F5, h), R, x).tolist())

# the nontrivial character lifts to a group-like element acting by -1 on R_h
chi = hopf.lift_mult_char(characters(Z2, F5)[1])
print("chi~ group-like:", hopf.is_grouplike(chi), " chi~ . x =", hopf.act(chi, R, x).tolist())
print("module algebra:", hopf.verify_module_algebra(R, "associative", [chi]).ok)

# roundtrip: recover the grading from the projections
back = hopf.grading_from_action(Z2, F5, 2, lambda f, X: hopf.act(f, R, X))
print("roundtrip identical:", back == R)

# divided powers over Z_9 in characteristic 3
F3 = build_field(3)
Z9 = AbelianGroup((9,))
ds = hopf.divided_powers(Z9, F3)
print("delta^(3) on a^0..a^8:", ds[3].coeffs.tolist())
print("delta^(1) is primitive:", hopf.is_primitive(ds[1]), " delta^(3) primitive:", hopf.is_primitive(ds[3]))
print("delta^(1) delta^(2) in the delta basis:", hopf.divided_power_coords(ds[1] * ds[2]).tolist())

# they act on a Z_9-graded M_2 as a module algebra
gr = elementary_grading(Z9, 2, [Z9.identity, Z9.gen(0)], F3)
print("Z9 module algebra:", hopf.verify_module_algebra(gr, "associative", ds).ok)

# census: group-like elements count |G_0|, primitives the p-rank
print("group-like in (F5 Z4)*:", hopf.grouplike_census(AbelianGroup((4,)), F5))
print("primitive dimension of (F3 (Z3 x Z3))*:", hopf.primitive_dimension(AbelianGroup((3, 3)), F3))
