"""
Finite fields, abelian groups and their characters
===================================================

Everything in glab is exact: field elements are integer codes in GF(p^k)
and groups are products of cyclic factors.
"""

from glab import AbelianGroup, build_field, min_ext_degree, root_of_unity, binom_mod_p
from glab.groups import additive_characters, decompose_by_p, multiplicative_characters, quotient_group

# GF(25) is built from the least monic irreducible of degree 2 over GF(5)
F25 = build_field(5, 2)
print(F25, "modulus coefficients (low to high):", F25.modulus)

# a primitive cube root of unity needs the degree-2 extension
print("degree needed for 3rd roots over GF(5):", min_ext_degree(5, 3))
eps = root_of_unity(F25, 3)
print("eps =", eps, " eps^3 =", eps ** 3)

# binomial coefficients mod p via Lucas' theorem
print("C(4,3) mod 3 =", binom_mod_p(4, 3, 3), "  C(7,3) mod 5 =", binom_mod_p(7, 3, 5))

# Z_12 splits as its 3'-part times its 3-part
G = AbelianGroup((12,))
dec = decompose_by_p(G, 3)
print(G, "=", dec.g0, "x", dec.g1)

# quotients go through the Smith normal form
K = AbelianGroup((2, 2))
print("Z2 x Z2 / <(1,1)> =", quotient_group(K, [K(1, 1)]).quotient)

# multiplicative characters need roots of unity; additive ones live in GF(p)
for chi in multiplicative_characters(AbelianGroup((3,)), F25):
    print("character values:", [str(chi(g)) for g in chi.group])
for alpha in additive_characters(AbelianGroup((3, 3)), 3):
    print("additive character on generators:", [alpha(g) for g in alpha.group.gens()])
