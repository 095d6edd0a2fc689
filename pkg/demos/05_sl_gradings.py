"""
Gradings of sl_n: type I, type II and the exchange of gradings
===============================================================

Restrict an associative grading to sl_n, twist it by an involution and an
element of order two, and recover the involution's skew and symmetric parts
by exchanging two compatible gradings.
"""

from glab import AbelianGroup, build_field, elementary_grading, verify_grading
from glab.ff import root_of_unity
from glab.sl import (Antiautomorphism, classify_sl_grading, correct_antiautomorphism, exchange,
                     symmetric_split, transpose_involution, twisted_lie_grading, type1_grading,
                     type2_grading)
from glab.grading import Subspace

F5 = build_field(5)
Z2 = AbelianGroup((2,))
h = Z2.gen(0)
R = elementary_grading(Z2, 2, [Z2.identity, h], F5)
star = transpose_involution(F5, 2)


def show(gr):
    return {str(g): [m.tolist() for m in V.matrices()] for g, V in gr.components.items()}


print("type I:", show(type1_grading(R)))
L = type2_grading(R, star, h)
print("type II:", show(L), " Lie grading:", verify_grading(L, "lie").ok)

# the twisted Lie regrading of all of M_2 is compatible with R; exchanging gives K and H
tw = twisted_lie_grading(R, star, h)
family, rep = exchange(tw, R, [h])
K, H = symmetric_split(star, Subspace.full(F5, 2))
print("R^1 == K:", family[Z2.identity] == K, " R^h == H:", family[h] == H, " report ok:", rep.ok)

# an antiautomorphism whose square is not the identity gets a commuting correction
F25 = build_field(5, 2)
eps = root_of_unity(F25, 3).code
phi = Antiautomorphism(F25, [[0, 1], [eps, 0]])
fix = correct_antiautomorphism(elementary_grading(Z2, 2, [Z2.identity, h], F25), phi)
print("correction u =", fix.u.tolist(), "after", fix.candidates_tried, "candidates")

# classification certificates
print(classify_sl_grading(type1_grading(R)).kind)
print(classify_sl_grading(L, [(R, None), (R, (star, h))]).kind)
