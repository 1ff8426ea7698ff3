"""Exact computations with subalgebras of the full matrix algebra M_n(Q).

Canonical subspaces, multiplicative closures, identity analysis, the
Jacobson radical, and classifiers for maximum-dimensional nonunital
intersections and maximal subalgebras of a parabolic, each returning a
conjugator that is re-checked by exact comparison.
"""

from .algebra import (
    AffineFamily,
    CanonicalSpec,
    Conjugator,
    Subalgebra,
    Subspace,
    UnityStatus,
    UnitySummary,
    canonical,
    canonical_algebra,
    compress_by_idempotent,
    conjugate_algebra,
    contains,
    corner_extract,
    multiplicative_closure,
    span,
    subspace_intersect,
    subspace_sum,
    transpose_algebra,
    unity_summary,
)
from .fields import GF, QQ, Field, Residue
from .linalg import D, E, Mat, invert, kernel_basis, rref, solve_linear
from .structure import (
    ClassificationWitness,
    FrameCase,
    RankOneFactor,
    WitnessKind,
    classify_gamma_max,
    classify_omega_max,
    gamma_bound_check,
    idempotent_normal_form,
    jacobson_radical,
    radical_frame,
    rank_one_factor,
    recognize_max_nonunital,
    recognize_parabolic,
)

__version__ = "0.1.0"
