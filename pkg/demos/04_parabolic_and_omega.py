"""
Recognizing P, its transpose, and the maximal members of Omega
==============================================================

Each classifier hands back a conjugator g with g^-1 A g equal to a
canonical algebra, and that equality is rechecked exactly.
"""

from matalg import Conjugator, canonical, classify_omega_max, conjugate_algebra, recognize_parabolic
from matalg.linalg import block_diag, invert
from matalg.search import Rng, random_conjugator, random_invertible

rng = Rng(2024)
for tag in ("ParabolicP", "ParabolicPTranspose"):
    a = conjugate_algebra(canonical(tag, 4), random_conjugator(4, 3, rng))
    w = recognize_parabolic(a)
    print(tag, "->", w.kind.value, w.verify(a))

# Omega maximizers have dimension n^2 - 2n + 3.  Conjugators of the
# shape diag(g', 1) keep them inside P.
n = 5
for tag in ("OmegaMaxColumn", "OmegaMaxRow"):
    b0 = canonical(tag, n)
    g = random_invertible(n - 1, 3, rng)
    b = conjugate_algebra(b0, Conjugator(block_diag(g, 1), block_diag(invert(g), 1)))
    w = classify_omega_max(b)
    print(tag, "dim", b.dim, "->", w.kind.value, w.verify(b))

# At n = 3 both forms are the upper triangular algebra.
print(canonical("OmegaMaxColumn", 3) == canonical("OmegaMaxRow", 3))
