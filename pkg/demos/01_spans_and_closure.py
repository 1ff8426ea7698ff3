"""
Spans, closures and identity elements
=====================================

Subspaces of M_n are stored by a canonical echelon basis, so two spans
compare equal exactly when they are the same subspace.
"""

from matalg import E, Mat, canonical, multiplicative_closure, span, unity_summary

# Two matrix units already generate all of M_2.
gens = span([E(1, 2, 2), E(2, 1, 2)])
print("span dim:", gens.dim)
full = multiplicative_closure(gens)
print("closure dim:", full.dim)

# Equality ignores the basis you started from.
a = span([E(1, 1, 2) + E(1, 2, 2), E(1, 2, 2)])
b = span([E(1, 1, 2), E(1, 2, 2).scale(5)])
print("same subspace:", a == b)

# W for n = 3 has left identities E11 + b E12 but no right identity.
w = canonical("W", 3)
s = unity_summary(w)
print(s.status.value)
print("left identity family dim:", s.left_identities.dim)
print("right identities empty:", s.right_identities.is_empty)

# The corner block M[R_3, C_3] is unital with unity D_2, which is not I.
corner = canonical("ZeroPattern", 3, rows={3}, cols={3})
print(unity_summary(corner).two_sided.pretty())
print("contains I:", Mat.identity(3) in corner)
