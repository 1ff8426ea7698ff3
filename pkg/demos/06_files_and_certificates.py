"""
Algebra files and certificates
==============================

Scalars are written as exact strings such as "3/7".  A certificate
stores the conjugator, the target and a hash of the input space, and
anyone can re-verify it.
"""

import tempfile
from pathlib import Path

from matalg import canonical, classify_gamma_max, conjugate_algebra, io
from matalg.search import Rng, random_conjugator

a = conjugate_algebra(canonical("W", 4), random_conjugator(4, 3, Rng(9)))
print(io.emit_algebra(a)[:300], "...")

w = classify_gamma_max(a)
with tempfile.TemporaryDirectory() as tmp:
    src, cert = Path(tmp) / "a.json", Path(tmp) / "cert.json"
    io.write_algebra(src, a)
    cert.write_text(io.emit_certificate(w, a))
    print(cert.read_text())

    space = io.load_algebra(src).space()
    witness, doc = io.load_certificate(cert)
    print("re-verified:", io.verify_certificate(space, witness, doc))
