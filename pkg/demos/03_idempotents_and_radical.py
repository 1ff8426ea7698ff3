"""
Idempotent normal form and the radical
======================================
"""

from matalg import D, Mat, canonical, conjugate_algebra, idempotent_normal_form, jacobson_radical
from matalg.search import Rng, random_conjugator, random_idempotent

e = Mat.from_rows([[1, 1], [0, 0]])
s, r = idempotent_normal_form(e)
print("rank", r)
print(s.g.pretty())
print("S^-1 e S == D_1:", s.apply(e) == D(1, 2))

# A random rank-2 idempotent in M_4.
e = random_idempotent(4, 2, Rng(3))
print(e.pretty())
s, r = idempotent_normal_form(e)
print("normalized:", s.apply(e) == D(r, 4))

# The radical of P is spanned by the E_{i,n}, i < n.
p = canonical("ParabolicP", 4)
j = jacobson_radical(p)
print("dim rad(P) =", j.dim)
for x in j.basis:
    print(x.pretty(), end="\n\n")

# It moves along with conjugation.
g = random_conjugator(4, 2, Rng(4))
print(jacobson_radical(conjugate_algebra(p, g)) == conjugate_algebra(j, g))
print("rad(M_3) dim:", jacobson_radical(canonical("Full", 3)).dim)
