"""
A nonunital intersection of two unital algebras
===============================================

Intersect the corner block u = M[R_n, C_n] with its conjugate under
A = I + E_{n,n-1}.  Both factors are unital; the intersection is W,
which is not.
"""

from matalg import Conjugator, E, Mat, canonical, classify_gamma_max, conjugate_algebra, invert
from matalg import gamma_bound_check, subspace_intersect
from matalg.search import Rng, random_conjugator

for n in range(3, 7):
    u = canonical("ZeroPattern", n, rows={n}, cols={n})
    a = Mat.identity(n) + E(n, n - 1, n)
    v = conjugate_algebra(u, Conjugator(invert(a), a))  # A u A^-1
    w = subspace_intersect(u, v)
    print(n, "dim", w.dim, "equals W:", w == canonical("W", n))

# The bound check walks through the normalization: the factor with a
# unity e != I is conjugated into M[R_n, C_n].
rep = gamma_bound_check(u, v)
print("in Gamma:", rep.is_gamma, "dim", rep.dim_n, "bound", rep.bound, "tight:", rep.tight)
for line in rep.trace:
    print("  ", line)

# Hide W behind a random change of basis and recover it.
g = random_conjugator(5, 3, Rng(1))
hidden = conjugate_algebra(canonical("WTranspose", 5), g)
witness = classify_gamma_max(hidden)
print(witness.kind.value, "certified:", witness.verify(hidden))
print(witness.conj.g.pretty())
