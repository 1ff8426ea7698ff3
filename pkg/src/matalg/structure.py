"""Structure theory and certifying classifiers.

Every recognizer ends the same way: it conjugates its input by the matrix it
built and compares the result with a canonical algebra by exact subspace
equality.  Intermediate heuristics can therefore only cause a rejection,
never a wrong answer.

Conjugator convention throughout: a witness ``w`` for input ``A`` satisfies
``w.conj.g^{-1} · A · w.conj.g == target``, i.e.
``conjugate_algebra(A, w.conj) == canonical_algebra(w.target())``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .algebra import (
    CanonicalSpec,
    Conjugator,
    Subalgebra,
    Subspace,
    UnityStatus,
    canonical_algebra,
    compress_by_idempotent,
    conjugate_algebra,
    corner_extract,
    span,
    subspace_intersect,
    subspace_sum,
    transpose_algebra,
    unit_span,
    unity_summary,
)
from .errors import (
    CertificationFailed,
    DimensionTooSmall,
    FrameViolation,
    NotClosed,
    NotGammaMax,
    NotIdempotent,
    NotInOmega,
    NotMaxNonunital,
    NotOmegaMax,
    NotParabolic,
    WrongCharacteristic,
    WrongRank,
)
from .fields import Field
from .linalg import D, EchelonBasis, Mat, block_diag, from_columns, kernel_basis, rref, reversal


# ----------------------------------------------------------------------------
# vector-space helpers


def _rref_basis(vectors, n: int, field: Field) -> list[tuple]:
    eb = EchelonBasis(n, field)
    eb.extend(vectors)
    return list(eb.rows)


def joint_image(a: Subspace) -> list[tuple]:
    """Canonical basis of the sum of the column spaces of ``a``'s elements."""
    return _rref_basis((c for b in a.basis for c in b.columns()), a.n, a.field)


def joint_kernel(a: Subspace) -> list[tuple]:
    """Canonical basis of the vectors killed by every element of ``a``."""
    if a.dim == 0:
        return _rref_basis(_standard(a.n, a.field), a.n, a.field)
    rows = [r for b in a.basis for r in b.rows()]
    return _rref_basis(kernel_basis(rows, a.field), a.n, a.field)


def _standard(n: int, field: Field):
    zero, one = field.zero(), field.one()
    return [tuple(one if i == k else zero for i in range(n)) for k in range(n)]


def _first_outside(vectors, n: int, field: Field):
    """First standard basis vector outside span(vectors)."""
    eb = EchelonBasis(n, field)
    eb.extend(vectors)
    for e in _standard(n, field):
        if not eb.contains(e):
            return e
    return None


def _require_rational(a: Subspace, what: str):
    if not a.field.is_rational:
        raise WrongCharacteristic(f"{what} needs characteristic 0, got {a.field!r}")


def _as_algebra(a: Subspace) -> Subalgebra:
    return a if isinstance(a, Subalgebra) else Subalgebra.certify(a)


# ----------------------------------------------------------------------------
# idempotents


def idempotent_normal_form(e: Mat) -> tuple[Conjugator, int]:
    """Return ``(S, r)`` with ``S^{-1} e S = D_r``, ``r = rank(e)``.

    Columns of S: the canonical basis of image(e), then that of kernel(e).
    """
    if not e.is_idempotent():
        raise NotIdempotent("e @ e != e")
    n, field = e.n, e.field
    r = e.rank()
    if e == D(r, n, field):
        return Conjugator.identity(n, field), r
    image = _rref_basis(e.columns(), n, field)
    kernel = _rref_basis(kernel_basis(e), n, field)
    s = Conjugator(from_columns(image + kernel, field))
    if s.apply(e) != D(r, n, field):
        raise CertificationFailed("S^-1 e S != D_r")
    return s, r


# ----------------------------------------------------------------------------
# radical


def _trace_product(x: Mat, y: Mat):
    n = x.n
    xe, ye = x.entries, y.entries
    total = x.field.zero()
    for i in range(n):
        for k in range(n):
            a = xe[i * n + k]
            if a:
                b = ye[k * n + i]
                if b:
                    total += a * b
    return total


def jacobson_radical(a: Subalgebra) -> Subalgebra:
    """Radical of ``a`` as the kernel of the trace form ``(x, y) -> tr(xy)``.

    Valid in characteristic 0.  The result is post-verified to be a two-sided
    ideal of ``a`` that is nilpotent.
    """
    _require_rational(a, "jacobson_radical")
    a = _as_algebra(a)
    basis = a.basis
    k = len(basis)
    if k == 0:
        return Subalgebra.zero(a.n, a.field)
    gram = [[_trace_product(x, y) for y in basis] for x in basis]
    mats = []
    for v in kernel_basis(gram, a.field):
        acc = Mat.zeros(a.n, a.field)
        for c, b in zip(v, basis):
            if c:
                acc = acc + b.scale(c)
        mats.append(acc)
    j = span(mats, n=a.n, field=a.field)
    _certify_radical(a, j)
    return Subalgebra._trusted(j)


def _certify_radical(a: Subspace, j: Subspace):
    for x in a.basis:
        for y in j.basis:
            if not (j.contains(x @ y) and j.contains(y @ x)):
                raise CertificationFailed("trace-form kernel is not an ideal")
    power = j
    for _ in range(j.dim + 1):
        if power.dim == 0:
            return
        power = span((x @ y for x in power.basis for y in j.basis), n=j.n, field=j.field)
    if power.dim != 0:
        raise CertificationFailed("trace-form kernel is not nilpotent")


# ----------------------------------------------------------------------------
# rank-one frames


@dataclass(frozen=True)
class RankOneFactor:
    """Exact outer-product factorization ``x = y ⊗ mu`` (column times row)."""

    y: tuple
    mu: tuple

    def matrix(self, field: Field) -> Mat:
        return Mat._raw(len(self.y), [a * b for a in self.y for b in self.mu], field)


def rank_one_factor(x: Mat) -> RankOneFactor:
    if x.rank() != 1:
        raise WrongRank(f"expected rank 1, got {x.rank()}")
    col = next(c for c in x.columns() if any(c))
    p = next(i for i, v in enumerate(col) if v)
    lead = col[p]
    y = tuple(v / lead for v in col)
    mu = x.rows()[p]
    f = RankOneFactor(y, tuple(mu))
    if f.matrix(x.field) != x:
        raise CertificationFailed("rank-one factorization does not reproduce x")
    return f


class FrameCase(str, enum.Enum):
    COMMON_FUNCTIONAL = "CommonFunctional"
    COMMON_VECTOR = "CommonVector"


def _frame_target(case: FrameCase, n: int, field: Field) -> Subspace:
    if case is FrameCase.COMMON_FUNCTIONAL:
        return unit_span([(i, n) for i in range(1, n)], n, field)
    return unit_span([(n, i) for i in range(1, n)], n, field)


def _common_functional_frame(j: Subspace):
    """Conjugator g with g^{-1} j g = span{E_{i,n}}, or None if the case fails."""
    n, field = j.n, j.field
    factors = [rank_one_factor(b) for b in j.basis]
    mus = [f.mu for f in factors]
    if rref(mus, field)[2] != 1:
        return None
    ys = [f.y for f in factors]
    if rref(ys, field)[2] != n - 1:
        return None
    nu = mus[0]
    if any(sum((a * b for a, b in zip(nu, y)), field.zero()) for y in ys):
        return None
    k = next(i for i, v in enumerate(nu) if v)
    z = field.zero()
    y_last = tuple(1 / nu[k] if i == k else z for i in range(n))
    return Conjugator(from_columns(ys + [y_last], field))


def _frame_candidates(j: Subspace):
    n = j.n
    if j.dim != n - 1:
        raise FrameViolation(f"frame needs dim n-1 = {n - 1}, got {j.dim}")
    basis = j.basis
    for x in basis:
        for y in basis:
            if not (x @ y).is_zero():
                raise FrameViolation("radical is not square-zero")
    try:
        for x in basis:
            rank_one_factor(x)
    except WrongRank as exc:
        raise FrameViolation(str(exc)) from None
    g = _common_functional_frame(j)
    if g is not None:
        yield FrameCase.COMMON_FUNCTIONAL, g
    g = _common_functional_frame(transpose_algebra(j))
    if g is not None:
        yield FrameCase.COMMON_VECTOR, g.transpose_inverse()


def radical_frame(j: Subspace) -> tuple[FrameCase, Conjugator]:
    """Normalize a square-zero space of rank-one matrices of dim n-1.

    Returns the case and a conjugator ``g`` with ``g^{-1} j g`` equal to
    span{E_{i,n}} (common functional) or span{E_{n,i}} (common vector).
    """
    for case, g in _frame_candidates(j):
        if conjugate_algebra(j, g) == _frame_target(case, j.n, j.field):
            return case, g
    raise FrameViolation("neither a common functional nor a common vector frame")


# ----------------------------------------------------------------------------
# witnesses


class WitnessKind(str, enum.Enum):
    GAMMA_W = "GammaW"
    GAMMA_W_TRANSPOSE = "GammaWTranspose"
    ROW_ALGEBRA = "RowAlgebra"
    COLUMN_ALGEBRA = "ColumnAlgebra"
    PARABOLIC_P = "ParabolicP"
    PARABOLIC_P_TRANSPOSE = "ParabolicPTranspose"
    OMEGA_MAX_COLUMN = "OmegaMaxColumn"
    OMEGA_MAX_ROW = "OmegaMaxRow"


def witness_target(kind: WitnessKind, n: int) -> CanonicalSpec:
    kind = WitnessKind(kind)
    if kind is WitnessKind.GAMMA_W:
        return CanonicalSpec("W", n)
    if kind is WitnessKind.GAMMA_W_TRANSPOSE:
        return CanonicalSpec("WTranspose", n)
    if kind is WitnessKind.ROW_ALGEBRA:
        return CanonicalSpec("ZeroPattern", n, rows={n})
    if kind is WitnessKind.COLUMN_ALGEBRA:
        return CanonicalSpec("ZeroPattern", n, cols={n})
    return CanonicalSpec(kind.value, n)


@dataclass(frozen=True)
class ClassificationWitness:
    kind: WitnessKind
    conj: Conjugator
    certified: bool

    @property
    def n(self) -> int:
        return self.conj.g.n

    def target(self) -> CanonicalSpec:
        return witness_target(self.kind, self.n)

    def verify(self, a: Subspace) -> bool:
        """Re-check the certificate against the input algebra."""
        target = canonical_algebra(self.target(), a.field)
        return conjugate_algebra(a, self.conj) == target


def _certify(a: Subspace, conj: Conjugator, kind: WitnessKind):
    target = canonical_algebra(witness_target(kind, a.n), a.field)
    if conjugate_algebra(a, conj) == target:
        return ClassificationWitness(kind, conj, True)
    return None


# ----------------------------------------------------------------------------
# recognizers


def recognize_parabolic(l: Subspace) -> ClassificationWitness:
    """Certify that ``l`` is conjugate to P or to its transpose."""
    _require_rational(l, "recognize_parabolic")
    n = l.n
    if n < 2:
        raise NotParabolic("parabolic recognition needs n >= 2")
    want = n * n - n + 1
    if l.dim != want:
        raise NotParabolic(f"precondition: dim {l.dim} != n^2-n+1 = {want}")
    try:
        l = _as_algebra(l)
    except NotClosed:
        raise NotParabolic("input is not closed under multiplication") from None
    j = jacobson_radical(l)
    if j.dim != n - 1:
        raise NotParabolic(f"radical has dim {j.dim}, expected {n - 1}")
    try:
        for case, g in _frame_candidates(j):
            kind = (
                WitnessKind.PARABOLIC_P
                if case is FrameCase.COMMON_FUNCTIONAL
                else WitnessKind.PARABOLIC_P_TRANSPOSE
            )
            w = _certify(l, g, kind)
            if w is not None:
                return w
    except FrameViolation as exc:
        raise NotParabolic(f"radical frame: {exc}") from None
    raise NotParabolic("no frame conjugator certifies")


def _row_route(a: Subspace):
    n, field = a.n, a.field
    u = joint_image(a)
    if len(u) != n - 1:
        return None
    return Conjugator(from_columns(u + [_first_outside(u, n, field)], field))


def recognize_max_nonunital(l: Subspace) -> ClassificationWitness:
    """Certify a nonunital algebra of dim n(n-1) as conjugate to M[R_n] or M[C_n]."""
    _require_rational(l, "recognize_max_nonunital")
    n = l.n
    if l.dim != n * (n - 1):
        raise NotMaxNonunital(f"precondition: dim {l.dim} != n(n-1) = {n * (n - 1)}")
    try:
        l = _as_algebra(l)
    except NotClosed:
        raise NotMaxNonunital("input is not closed under multiplication") from None
    if unity_summary(l).status is not UnityStatus.NONUNITAL:
        raise NotMaxNonunital("precondition: algebra has a two-sided unity")
    g = _row_route(l)
    if g is not None:
        w = _certify(l, g, WitnessKind.ROW_ALGEBRA)
        if w is not None:
            return w
    g = _row_route(transpose_algebra(l))
    if g is not None:
        w = _certify(l, g.transpose_inverse(), WitnessKind.COLUMN_ALGEBRA)
        if w is not None:
            return w
    raise NotMaxNonunital("neither the row nor the column route certifies")


def _w_route(a: Subspace):
    n, field = a.n, a.field
    u = joint_image(a)
    z = joint_kernel(a)
    if len(u) != n - 2 or len(z) != 1:
        return None
    if rref(u + z, field)[2] != n - 1:
        return None
    v = _first_outside(u + z, n, field)
    return Conjugator(from_columns(u + [v] + z, field))


def classify_gamma_max(nn: Subspace) -> ClassificationWitness:
    """Certify a nonunital intersection of maximum dimension as a conjugate of W or W^T."""
    _require_rational(nn, "classify_gamma_max")
    n = nn.n
    if n < 3:
        raise DimensionTooSmall(f"classification needs n >= 3, got {n}")
    want = (n - 1) * (n - 2)
    if nn.dim != want:
        raise NotGammaMax(f"precondition: dim {nn.dim} != (n-1)(n-2) = {want}")
    try:
        nn = _as_algebra(nn)
    except NotClosed:
        raise NotGammaMax("input is not closed under multiplication") from None
    if unity_summary(nn).status is not UnityStatus.NONUNITAL:
        raise NotGammaMax("precondition: algebra has a two-sided unity")
    g = _w_route(nn)
    if g is not None:
        w = _certify(nn, g, WitnessKind.GAMMA_W)
        if w is not None:
            return w
    g = _w_route(transpose_algebra(nn))
    if g is not None:
        w = _certify(nn, g.transpose_inverse(), WitnessKind.GAMMA_W_TRANSPOSE)
        if w is not None:
            return w
    raise NotGammaMax("joint image/kernel signature matches neither W nor W^T")


@dataclass
class GammaReport:
    n: int
    is_gamma: bool
    dim_n: int
    bound: int
    bound_ok: bool
    intersection: Subalgebra
    normalizer: Conjugator | None = None
    conjugated: tuple | None = None
    trace: list[str] = dc_field(default_factory=list)

    @property
    def tight(self) -> bool:
        return self.is_gamma and self.dim_n == self.bound


def gamma_bound_check(u: Subspace, v: Subspace) -> GammaReport:
    """Check the nonunital-intersection dimension bound for the pair (u, v).

    When ``u ∩ v`` is a nonunital intersection, the factor whose unity is not
    I is normalized so the conjugated triple sits inside M[R_n, C_n].
    """
    u, v = _as_algebra(u), _as_algebra(v)
    n = u.n
    bound = (n - 1) * (n - 2)
    su, sv = unity_summary(u), unity_summary(v)
    inter = subspace_intersect(u, v)
    sn = unity_summary(inter)
    trace = [
        f"u: dim {u.dim}, {su.status.value}",
        f"v: dim {v.dim}, {sv.status.value}",
        f"u ∩ v: dim {inter.dim}, {sn.status.value}",
    ]
    is_gamma = su.is_unital and sv.is_unital and sn.status is UnityStatus.NONUNITAL
    report = GammaReport(n, is_gamma, inter.dim, bound, (not is_gamma) or inter.dim <= bound, inter)
    report.trace = trace
    if not is_gamma:
        return report
    identity = Mat.identity(n, u.field)
    e = su.two_sided if su.two_sided != identity else sv.two_sided
    which = "u" if su.two_sided != identity else "v"
    s, r = idempotent_normal_form(e)
    report.normalizer = s
    report.conjugated = tuple(conjugate_algebra(x, s) for x in (u, v, inter))
    corner = canonical_algebra(CanonicalSpec("ZeroPattern", n, rows={n}, cols={n}), u.field)
    inside = report.conjugated[0 if which == "u" else 1].issubset(corner)
    trace.append(f"unity of {which} has rank {r}; S^-1 e S = D_{r}")
    trace.append(f"S^-1 {which} S inside M[R_n,C_n]: {inside}")
    if not inside:
        raise CertificationFailed("normalized unital factor escapes M[R_n,C_n]")
    return report


def omega_bound_check(b: Subspace) -> dict:
    """Dimension bound for proper subalgebras of P other than M[R_n].

    Also reports whether ``b·D_{n-1}`` is all of M[R_n,C_n], in which case the
    sharper bound n^2-2n+2 applies.
    """
    b = _as_algebra(b)
    n = b.n
    p = canonical_algebra(CanonicalSpec("ParabolicP", n), b.field)
    rn = canonical_algebra(CanonicalSpec("ZeroPattern", n, rows={n}), b.field)
    in_omega = b.issubset(p) and b != p and b != rn
    bound = n * n - 2 * n + 3
    be = compress_by_idempotent(b, D(n - 1, n, b.field), "right")
    corner = canonical_algebra(CanonicalSpec("ZeroPattern", n, rows={n}, cols={n}), b.field)
    full_corner = be == corner
    return {
        "in_omega": in_omega,
        "dim": b.dim,
        "bound": bound,
        "bound_ok": (not in_omega) or b.dim <= bound,
        "full_corner": full_corner,
        "side_ok": not (in_omega and full_corner) or b.dim <= bound - 1,
    }


def classify_omega_max(b: Subspace) -> ClassificationWitness:
    """Certify a maximum-dimension member of Omega as conjugate to a canonical form.

    The conjugator has the shape diag(g', 1).  Forms are tried in the fixed
    order OmegaMaxColumn, OmegaMaxRow.
    """
    _require_rational(b, "classify_omega_max")
    n = b.n
    if n < 3:
        raise NotInOmega(f"Omega has no maximum-dimension members for n={n}")
    try:
        b = _as_algebra(b)
    except NotClosed:
        raise NotInOmega("input is not closed under multiplication") from None
    field = b.field
    want = n * n - 2 * n + 3
    if b.dim != want:
        raise NotInOmega(f"precondition: dim {b.dim} != n^2-2n+3 = {want}")
    p = canonical_algebra(CanonicalSpec("ParabolicP", n), field)
    if not b.issubset(p):
        raise NotInOmega("precondition: not contained in P")
    if b == p or b == canonical_algebra(CanonicalSpec("ZeroPattern", n, rows={n}), field):
        raise NotInOmega("precondition: equals P or M[R_n]")
    be = compress_by_idempotent(b, D(n - 1, n, field), "right")
    last_col = unit_span([(i, n) for i in range(1, n + 1)], n, field)
    if subspace_sum(be, last_col) != b:
        raise NotOmegaMax("b != b·e + M E_nn")
    try:
        w = recognize_parabolic(corner_extract(be))
    except NotParabolic as exc:
        raise NotOmegaMax(f"corner is not parabolic: {exc}") from None
    flip = Conjugator(reversal(n - 1, field), reversal(n - 1, field))
    candidates = [w.conj, w.conj.then(flip)]
    for kind in (WitnessKind.OMEGA_MAX_COLUMN, WitnessKind.OMEGA_MAX_ROW):
        for c in candidates:
            s = Conjugator(block_diag(c.g, 1), block_diag(c.g_inv, 1))
            out = _certify(b, s, kind)
            if out is not None:
                return out
    raise NotOmegaMax("no corner conjugator certifies")


