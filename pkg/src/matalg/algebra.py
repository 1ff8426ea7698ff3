"""Subspaces and subalgebras of the full matrix algebra M_n.

A :class:`Subspace` is stored by the reduced row echelon basis of the
row-major vectorizations of its elements, so two subspaces are equal exactly
when their stored rows are equal.  A :class:`Subalgebra` is a subspace whose
multiplicative closure has been verified at construction.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    FieldMismatch,
    InvalidSpec,
    NotClosed,
    NotIdempotent,
    NotInCorner,
)
from .fields import QQ, Field
from .linalg import D, EchelonBasis, Mat, invert


class Subspace:
    """Linear subspace of M_n in canonical (reduced echelon) form."""

    __slots__ = ("n", "field", "rows", "pivots", "_basis")

    def __init__(self, n: int, field: Field = QQ, rows=(), pivots=()):
        # rows/pivots must already be a reduced echelon basis; use span() otherwise
        self.n = n
        self.field = field
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)
        self._basis = None

    @classmethod
    def _from_echelon(cls, n, eb: EchelonBasis):
        return cls(n, eb.field, eb.rows, eb.pivots)

    @classmethod
    def zero(cls, n: int, field: Field = QQ):
        return cls(n, field)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple[Mat, ...]:
        if self._basis is None:
            self._basis = tuple(Mat._raw(self.n, r, self.field) for r in self.rows)
        return self._basis

    def echelon(self) -> EchelonBasis:
        eb = EchelonBasis(self.n * self.n, self.field)
        eb.rows = list(self.rows)
        eb.pivots = list(self.pivots)
        return eb

    def contains(self, m: Mat) -> bool:
        self._check_mat(m)
        v = list(m.entries)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return not any(v)

    __contains__ = contains

    def issubset(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def _check_mat(self, m: Mat):
        if m.n != self.n:
            raise AmbientMismatch(f"matrix of size {m.n} in M_{self.n}")
        if m.field != self.field:
            raise FieldMismatch(f"{m.field!r} matrix in a {self.field!r} subspace")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.field, self.rows))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, dim={self.dim}, field={self.field!r})"

    def support(self) -> set[tuple[int, int]]:
        """1-based positions where some element can be nonzero."""
        n = self.n
        return {(k // n + 1, k % n + 1) for r in self.rows for k, x in enumerate(r) if x}


def closure_defect(s: Subspace):
    """First basis product outside the span, or None if ``s`` is closed."""
    if s.dim == s.n * s.n:
        return None
    basis = s.basis
    for x in basis:
        for y in basis:
            p = x @ y
            if not s.contains(p):
                return p
    return None


class Subalgebra(Subspace):
    """A subspace closed under matrix multiplication.

    Instances are only created through :meth:`certify`, which checks every
    pairwise basis product, or by operations that provably preserve closure.
    """

    __slots__ = ()
    closed = True

    @classmethod
    def certify(cls, s: Subspace) -> "Subalgebra":
        if isinstance(s, Subalgebra):
            return s
        bad = closure_defect(s)
        if bad is not None:
            raise NotClosed(f"product {bad!r} lies outside the span")
        return cls._trusted(s)

    @classmethod
    def _trusted(cls, s: Subspace) -> "Subalgebra":
        return cls(s.n, s.field, s.rows, s.pivots)

    @classmethod
    def zero(cls, n: int, field: Field = QQ):
        return cls(n, field)


def _check_ambient(a: Subspace, b: Subspace):
    if a.n != b.n:
        raise AmbientMismatch(f"M_{a.n} vs M_{b.n}")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


# ----------------------------------------------------------------------------
# spans, closure, lattice operations


def span(mats: Iterable[Mat], n: int | None = None, field: Field | None = None) -> Subspace:
    """Canonical span.  ``n`` (and ``field``) are required for an empty list."""
    mats = list(mats)
    if not mats:
        if n is None:
            raise ValueError("span of an empty list needs an explicit n")
        return Subspace.zero(n, field or QQ)
    n0, f0 = mats[0].n, mats[0].field
    if n is not None and n != n0:
        raise AmbientMismatch(f"expected n={n}, got {n0}")
    if field is not None and field != f0:
        raise FieldMismatch(f"expected {field!r}, got {f0!r}")
    eb = EchelonBasis(n0 * n0, f0)
    for m in mats:
        if m.n != n0:
            raise AmbientMismatch(f"mixed sizes {n0} and {m.n}")
        if m.field != f0:
            raise FieldMismatch(f"mixed fields {f0!r} and {m.field!r}")
        eb.add(m.entries)
    return Subspace._from_echelon(n0, eb)


def multiplicative_closure(s: Subspace | Iterable[Mat], n: int | None = None) -> Subalgebra:
    """Smallest (not necessarily unital) subalgebra containing ``s``."""
    if not isinstance(s, Subspace):
        s = span(s, n=n)
    size = s.n
    full = size * size
    eb = s.echelon()
    # every element is a sum of words in the generators, and a word of length
    # k+1 is a word of length k times a generator: right products suffice
    gens = list(s.basis)
    new = list(gens)
    while new and len(eb) < full:
        added = []
        for x in new:
            for g in gens:
                p = x @ g
                if eb.add(p.entries):
                    added.append(p)
        new = added
    return Subalgebra.certify(Subspace._from_echelon(size, eb))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    eb = a.echelon()
    eb.extend(b.rows)
    return Subspace._from_echelon(a.n, eb)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical intersection; certified as a Subalgebra when both inputs are."""
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        out = Subspace.zero(a.n, a.field)
    else:
        # Zassenhaus: echelonize [a | a] over [b | 0]; rows of the form [0 | w] span a ∩ b.
        N = a.n * a.n
        zero = a.field.zero()
        eb = EchelonBasis(2 * N, a.field)
        for r in a.rows:
            eb.add(r + r)
        for r in b.rows:
            eb.add(r + (zero,) * N)
        ib = EchelonBasis(N, a.field)
        for row, p in zip(eb.rows, eb.pivots):
            if p >= N:
                ib.add(row[N:])
        out = Subspace._from_echelon(a.n, ib)
    if isinstance(a, Subalgebra) and isinstance(b, Subalgebra):
        return Subalgebra.certify(out)
    return out


def contains(s: Subspace, m: Mat) -> bool:
    return s.contains(m)


# ----------------------------------------------------------------------------
# conjugation and transposition


class Conjugator:
    """Invertible matrix ``g`` with its exact inverse cached.

    Conjugating a subspace ``A`` by it means ``g^{-1} A g``.
    """

    __slots__ = ("g", "g_inv")

    def __init__(self, g: Mat, g_inv: Mat | None = None):
        if g_inv is None:
            g_inv = invert(g)
        elif g @ g_inv != Mat.identity(g.n, g.field):
            raise ValueError("g_inv is not the inverse of g")
        self.g = g
        self.g_inv = g_inv

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Conjugator":
        i = Mat.identity(n, field)
        return cls(i, i)

    def inverse(self) -> "Conjugator":
        return Conjugator(self.g_inv, self.g)

    def transpose_inverse(self) -> "Conjugator":
        return Conjugator(self.g_inv.T, self.g.T)

    def then(self, other: "Conjugator") -> "Conjugator":
        """Conjugate by self, then by other: combined g is ``self.g @ other.g``."""
        return Conjugator(self.g @ other.g, other.g_inv @ self.g_inv)

    def apply(self, m: Mat) -> Mat:
        return self.g_inv @ m @ self.g

    def is_identity(self) -> bool:
        return self.g == Mat.identity(self.g.n, self.g.field)

    def __eq__(self, other):
        return isinstance(other, Conjugator) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        return f"Conjugator({self.g!r})"


def _as_conjugator(g) -> Conjugator:
    return g if isinstance(g, Conjugator) else Conjugator(g)


def conjugate_algebra(a: Subspace, g: Mat | Conjugator) -> Subspace:
    """``{g^{-1} X g : X in a}``; raises SingularMatrix for singular ``g``."""
    c = _as_conjugator(g)
    if c.g.n != a.n:
        raise AmbientMismatch(f"conjugator of size {c.g.n} on M_{a.n}")
    out = span((c.apply(x) for x in a.basis), n=a.n, field=a.field)
    if isinstance(a, Subalgebra):
        return Subalgebra._trusted(out)
    return out


def transpose_algebra(a: Subspace) -> Subspace:
    out = span((x.T for x in a.basis), n=a.n, field=a.field)
    if isinstance(a, Subalgebra):
        return Subalgebra._trusted(out)
    return out


# ----------------------------------------------------------------------------
# identity elements


class UnityStatus(str, enum.Enum):
    CONTAINS_I = "ContainsI"
    UNITAL_PROPER = "UnitalProper"
    NONUNITAL = "Nonunital"


@dataclass(frozen=True)
class AffineFamily:
    """Solution set ``point + directions``; empty when ``point`` is None."""

    point: Mat | None
    directions: Subspace

    @property
    def is_empty(self) -> bool:
        return self.point is None

    @property
    def dim(self) -> int | None:
        return None if self.point is None else self.directions.dim

    def __contains__(self, m: Mat) -> bool:
        return self.point is not None and self.directions.contains(m - self.point)


@dataclass(frozen=True)
class UnitySummary:
    two_sided: Mat | None
    left_identities: AffineFamily
    right_identities: AffineFamily
    status: UnityStatus

    @property
    def is_unital(self) -> bool:
        return self.two_sided is not None


def _affine_solutions(equations: Iterable[Sequence], k: int, field: Field):
    """Solve rows ``[coeffs | rhs]`` in ``k`` unknowns: (particular or None, kernel)."""
    eb = EchelonBasis(k + 1, field)
    for row in equations:
        if any(row):
            eb.add(row)
    if k in eb.pivots:
        return None, []
    zero, one = field.zero(), field.one()
    x = [zero] * k
    for row, p in zip(eb.rows, eb.pivots):
        x[p] = row[k]
    pivset = set(eb.pivots)
    kernel = []
    for f in range(k):
        if f in pivset:
            continue
        v = [zero] * k
        v[f] = one
        for row, p in zip(eb.rows, eb.pivots):
            v[p] = -row[f]
        kernel.append(v)
    return x, kernel


def _combine(basis: Sequence[Mat], coeffs: Sequence, n: int, field: Field) -> Mat:
    acc = Mat.zeros(n, field)
    for c, b in zip(coeffs, basis):
        if c:
            acc = acc + b.scale(c)
    return acc


def unity_summary(a: Subalgebra) -> UnitySummary:
    """Exact analysis of left, right and two-sided identities of ``a``.

    The zero algebra has the two-sided unity 0, so it counts as unital.
    """
    n, field, basis = a.n, a.field, a.basis
    k = len(basis)
    products = [[x @ y for y in basis] for x in basis]
    # e = sum c_i B_i; left identity: sum_i c_i B_i B_j = B_j for all j
    left_eqs = [
        [products[i][j].entries[q] for i in range(k)] + [basis[j].entries[q]]
        for j in range(k) for q in range(n * n)
    ]
    right_eqs = [
        [products[j][i].entries[q] for i in range(k)] + [basis[j].entries[q]]
        for j in range(k) for q in range(n * n)
    ]

    def family(eqs):
        x, kern = _affine_solutions(eqs, k, field)
        if x is None:
            return AffineFamily(None, Subspace.zero(n, field))
        dirs = span((_combine(basis, v, n, field) for v in kern), n=n, field=field)
        return AffineFamily(_combine(basis, x, n, field), dirs)

    left = family(left_eqs)
    right = family(right_eqs)
    two = None
    if not left.is_empty and not right.is_empty:
        x, _ = _affine_solutions(left_eqs + right_eqs, k, field)
        if x is not None:
            two = _combine(basis, x, n, field)
    if two is None:
        status = UnityStatus.NONUNITAL
    elif two == Mat.identity(n, field):
        status = UnityStatus.CONTAINS_I
    else:
        status = UnityStatus.UNITAL_PROPER
    return UnitySummary(two, left, right, status)


# ----------------------------------------------------------------------------
# canonical algebras

TAGS = (
    "Full",
    "ZeroPattern",
    "ParabolicP",
    "ParabolicPPrime",
    "ParabolicPTranspose",
    "W",
    "WTranspose",
    "OmegaMaxColumn",
    "OmegaMaxRow",
    "DiagIdempotent",
    "Elementary",
)


class GammaRangeWarning(UserWarning):
    """W or its transpose requested for n < 3, where it is not a nonunital intersection."""


@dataclass(frozen=True)
class CanonicalSpec:
    """Name of a canonical subalgebra of M_n.  Indices are 1-based.

    ``ZeroPattern(rows, cols)`` is M[R_rows, C_cols], the matrices whose listed
    rows and columns vanish.
    """

    tag: str
    n: int
    rows: frozenset = dc_field(default_factory=frozenset)
    cols: frozenset = dc_field(default_factory=frozenset)
    r: int | None = None
    i: int | None = None
    j: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(self.rows))
        object.__setattr__(self, "cols", frozenset(self.cols))
        n = self.n
        if self.tag not in TAGS:
            raise InvalidSpec(f"unknown canonical algebra {self.tag!r}")
        if not isinstance(n, int) or n < 1:
            raise InvalidSpec(f"n must be a positive integer, got {n!r}")
        for idx in self.rows | self.cols:
            if not 1 <= idx <= n:
                raise InvalidSpec(f"index {idx} outside 1..{n}")
        if self.tag == "DiagIdempotent" and (self.r is None or not 0 <= self.r <= n):
            raise InvalidSpec(f"DiagIdempotent needs 0 <= r <= {n}")
        if self.tag == "Elementary" and not (
            self.i is not None and self.j is not None and 1 <= self.i <= n and 1 <= self.j <= n
        ):
            raise InvalidSpec(f"Elementary needs 1 <= i, j <= {n}")
        if self.tag in ("W", "WTranspose", "OmegaMaxRow", "OmegaMaxColumn") and n < 2:
            raise InvalidSpec(f"{self.tag} needs n >= 2")

    def positions(self) -> set[tuple[int, int]] | None:
        """Matrix-unit support of the algebra (None for DiagIdempotent)."""
        n = self.n
        allpos = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}

        def zp(rows=(), cols=()):
            return {(i, j) for (i, j) in allpos if i not in rows and j not in cols}

        t = self.tag
        if t == "Full":
            return allpos
        if t == "ZeroPattern":
            return zp(self.rows, self.cols)
        if t == "ParabolicP":
            return zp(rows={n}) | {(n, n)}
        if t == "ParabolicPPrime":
            return zp(cols={1}) | {(1, 1)}
        if t == "ParabolicPTranspose":
            return zp(cols={n}) | {(n, n)}
        if t == "W":
            return zp(rows={n, n - 1}, cols={n})
        if t == "WTranspose":
            return zp(rows={n}, cols={n - 1, n})
        if t == "OmegaMaxColumn":
            return {(i, n) for i in range(1, n + 1)} | zp(rows={n}, cols={1}) | {(1, 1)}
        if t == "OmegaMaxRow":
            return {(i, n) for i in range(1, n + 1)} | zp(rows={n, n - 1}) | {(n - 1, n - 1)}
        if t == "Elementary":
            return {(self.i, self.j)}
        return None

    def label(self) -> str:
        extra = []
        if self.rows:
            extra.append("R" + ",".join(map(str, sorted(self.rows))))
        if self.cols:
            extra.append("C" + ",".join(map(str, sorted(self.cols))))
        if self.r is not None:
            extra.append(f"r={self.r}")
        if self.i is not None:
            extra.append(f"i={self.i},j={self.j}")
        suffix = f"[{'; '.join(extra)}]" if extra else ""
        return f"{self.tag}{suffix}(n={self.n})"


def unit_span(positions: Iterable[tuple[int, int]], n: int, field: Field = QQ) -> Subspace:
    """Span of matrix units at the given 1-based positions (already canonical)."""
    zero, one = field.zero(), field.one()
    rows, pivots = [], []
    for i, j in sorted(positions):
        k = (i - 1) * n + (j - 1)
        v = [zero] * (n * n)
        v[k] = one
        rows.append(tuple(v))
        pivots.append(k)
    return Subspace(n, field, rows, pivots)


def canonical_algebra(spec: CanonicalSpec, field: Field = QQ) -> Subalgebra:
    """Build and certify the named algebra."""
    if spec.tag in ("W", "WTranspose") and spec.n < 3:
        warnings.warn(
            f"{spec.tag} with n={spec.n} is not a nonunital intersection (needs n >= 3)",
            GammaRangeWarning,
            stacklevel=2,
        )
    pos = spec.positions()
    if pos is None:
        s = span([D(spec.r, spec.n, field)], n=spec.n, field=field)
    else:
        s = unit_span(pos, spec.n, field)
    return Subalgebra.certify(s)


def canonical(tag: str, n: int, field: Field = QQ, **kw) -> Subalgebra:
    return canonical_algebra(CanonicalSpec(tag, n, **kw), field)


# ----------------------------------------------------------------------------
# idempotent compression and corners


def compress_by_idempotent(a: Subspace, e: Mat, mode: str = "right") -> Subalgebra:
    """``a·e`` (mode ``"right"``) or ``e·a·e`` (mode ``"two_sided"``), certified closed."""
    if not e.is_idempotent():
        raise NotIdempotent("e @ e != e")
    if mode == "right":
        mats = (x @ e for x in a.basis)
    elif mode == "two_sided":
        mats = (e @ x @ e for x in a.basis)
    else:
        raise ValueError(f"mode must be 'right' or 'two_sided', got {mode!r}")
    return Subalgebra.certify(span(mats, n=a.n, field=a.field))


def corner_extract(a: Subspace) -> Subalgebra:
    """Upper-left (n-1)x(n-1) corners of an algebra inside M[R_n, C_n]."""
    n = a.n
    if n < 2:
        raise NotInCorner("corner extraction needs n >= 2")
    m = n - 1
    mats = []
    for b in a.basis:
        if any(b[n - 1, j] for j in range(n)) or any(b[i, n - 1] for i in range(n)):
            raise NotInCorner(f"{b!r} has a nonzero last row or column")
        mats.append(Mat._raw(m, [b[i, j] for i in range(m) for j in range(m)], a.field))
    return Subalgebra.certify(span(mats, n=m, field=a.field))


def embed_corner(a: Subspace) -> Subspace:
    """Inverse of :func:`corner_extract`: pad with a zero last row and column."""
    n = a.n + 1
    zero = a.field.zero()
    mats = []
    for b in a.basis:
        ent = []
        for i in range(a.n):
            ent.extend(b.entries[i * a.n:(i + 1) * a.n])
            ent.append(zero)
        ent.extend([zero] * n)
        mats.append(Mat._raw(n, ent, a.field))
    out = span(mats, n=n, field=a.field)
    return Subalgebra._trusted(out) if isinstance(a, Subalgebra) else out
