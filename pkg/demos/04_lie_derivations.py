"""
Lie derivations and the p-group corollary
==========================================

Split a Lie derivation into an inner part plus a central part, check the
generalized Leibniz laws of divided powers, and test the statement that a
Lie p-grading of M_n is associative exactly when 1 lies in R_1.
"""

import numpy as np

from glab import AbelianGroup, build_field, elementary_grading
from glab.grading import Grading, Subspace
from glab.lie import (ad, check_corollary_p_grading, generalized_leibniz_check, inner_generator,
                      is_lie_derivation, martindale_decompose, trace_map)
from glab.sl import type1_grading

F5 = build_field(5)
s = np.array([[1, 2, 0], [0, 3, 1], [4, 0, 0]])
D = ad(F5, s) + 2 * trace_map(F5, 3)
print("Lie derivation:", is_lie_derivation(D)[0])
split = martindale_decompose(D)
print("tau == ad s:", split.tau == ad(F5, s), " zeta == 2 tr(.) 1:", split.zeta == 2 * trace_map(F5, 3))
print("zeta(1) = 0?", split.zeta_kills_identity)
print("generator of tau:\n", inner_generator(split.tau))

# generalized Leibniz for sigma = delta^(3) on a Z_9-grading of M_2
F3 = build_field(3)
Z9 = AbelianGroup((9,))
a = Z9.gen(0)
gr = elementary_grading(Z9, 2, [Z9.identity, a], F3)
rep = generalized_leibniz_check(gr)
print("Leibniz laws, q =", rep.q, ":", rep.ok, " lower laws:", rep.lower_ok)

# the corollary in both directions
print(check_corollary_p_grading(gr).verdict)
base = type1_grading(gr)
comps = dict(base.components)
comps[a ** 3] = base[a ** 3] + Subspace(F3, 2, np.eye(2, dtype=np.int64).reshape(1, -1))
moved = Grading(Z9, F3, 2, comps)
print(check_corollary_p_grading(moved).verdict)
