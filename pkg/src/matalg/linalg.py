"""Dense exact linear algebra over Q or F_p.

Everything here is deterministic: pivots are the first nonzero entry in
column order, so reduced echelon forms (and everything canonicalized through
them) compare structurally.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .errors import AmbientMismatch, FieldMismatch, SingularMatrix
from .fields import QQ, Field, field_of, format_scalar


class Mat:
    """Immutable n x n matrix, stored row-major as a flat tuple.

    Indexing via ``m[i, j]`` is 0-based; the matrix-unit constructors
    :func:`E` and :func:`D` take 1-based indices.
    """

    __slots__ = ("n", "entries", "field", "_hash")

    def __init__(self, n: int, entries: Sequence, field: Field | None = None):
        if n < 1:
            raise ValueError("matrix side must be >= 1")
        if len(entries) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(entries)}")
        if field is None:
            field = field_of(entries)
        self.n = n
        self.field = field
        self.entries = tuple(field.coerce(x) for x in entries)
        self._hash = None

    @classmethod
    def _raw(cls, n, entries, field):
        m = object.__new__(cls)
        m.n = n
        m.entries = tuple(entries)
        m.field = field
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, rows, field: Field | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(n, [x for r in rows for x in r], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Mat":
        z, o = field.zero(), field.one()
        return cls._raw(n, [o if i == j else z for i in range(n) for j in range(n)], field)

    @classmethod
    def zeros(cls, n: int, field: Field = QQ) -> "Mat":
        return cls._raw(n, [field.zero()] * (n * n), field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.n + j]

    def rows(self) -> list[tuple]:
        n, e = self.n, self.entries
        return [e[i * n:(i + 1) * n] for i in range(n)]

    def columns(self) -> list[tuple]:
        n, e = self.n, self.entries
        return [e[j::n] for j in range(n)]

    @property
    def T(self) -> "Mat":
        n, e = self.n, self.entries
        return Mat._raw(n, [e[j * n + i] for i in range(n) for j in range(n)], self.field)

    def _check(self, other: "Mat"):
        if self.n != other.n:
            raise AmbientMismatch(f"size {self.n} vs {other.n}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(self.n, [a + b for a, b in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat._raw(self.n, [a - b for a, b in zip(self.entries, other.entries)], self.field)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.n, [-a for a in self.entries], self.field)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        return Mat._raw(self.n, [c * a for a in self.entries], self.field)

    def __rmul__(self, c) -> "Mat":
        return self.scale(c)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        n = self.n
        a, b = self.entries, other.entries
        zero = self.field.zero()
        out = []
        for i in range(n):
            acc = [zero] * n
            base = i * n
            for k in range(n):
                aik = a[base + k]
                if not aik:
                    continue
                kb = k * n
                for j in range(n):
                    bkj = b[kb + j]
                    if bkj:
                        acc[j] += aik * bkj
            out.extend(acc)
        return Mat._raw(n, out, self.field)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field, self.entries))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_idempotent(self) -> bool:
        return self @ self == self

    def trace(self):
        n = self.n
        return sum((self.entries[i * n + i] for i in range(n)), self.field.zero())

    def rank(self) -> int:
        return rref(self.rows(), self.field)[2]

    def inverse(self) -> "Mat":
        return invert(self)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v`` for a column vector ``v``."""
        n = self.n
        zero = self.field.zero()
        return tuple(
            sum((self.entries[i * n + k] * v[k] for k in range(n) if v[k]), zero)
            for i in range(n)
        )

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows())
        tag = "" if self.field.is_rational else f", {self.field!r}"
        return f"Mat([{body}]{tag})"

    def pretty(self) -> str:
        cells = [[format_scalar(x) for x in r] for r in self.rows()]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def E(i: int, j: int, n: int, field: Field = QQ) -> Mat:
    """Matrix unit with a single 1 at row ``i``, column ``j`` (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"E({i},{j}) out of range for n={n}")
    z = field.zero()
    entries = [z] * (n * n)
    entries[(i - 1) * n + (j - 1)] = field.one()
    return Mat._raw(n, entries, field)


def D(r: int, n: int, field: Field = QQ) -> Mat:
    """Diagonal idempotent with ``r`` leading ones."""
    if not 0 <= r <= n:
        raise ValueError(f"D_{r} out of range for n={n}")
    z, o = field.zero(), field.one()
    return Mat._raw(n, [o if i == j and i < r else z for i in range(n) for j in range(n)], field)


def block_diag(a: Mat, tail) -> Mat:
    """``diag(a, tail)`` with ``tail`` a scalar; used to embed corner conjugators."""
    n = a.n + 1
    z = a.field.zero()
    entries = []
    for i in range(a.n):
        entries.extend(a.entries[i * a.n:(i + 1) * a.n])
        entries.append(z)
    entries.extend([z] * a.n)
    entries.append(a.field.coerce(tail))
    return Mat._raw(n, entries, a.field)


def from_columns(cols: Sequence[Sequence], field: Field) -> Mat:
    n = len(cols)
    return Mat._raw(n, [field.coerce(cols[j][i]) for i in range(n) for j in range(n)], field)


def permutation_matrix(perm: Sequence[int], field: Field = QQ) -> Mat:
    """Matrix sending e_j to e_{perm[j]} (0-based)."""
    n = len(perm)
    z, o = field.zero(), field.one()
    entries = [z] * (n * n)
    for j, i in enumerate(perm):
        entries[i * n + j] = o
    return Mat._raw(n, entries, field)


def reversal(n: int, field: Field = QQ) -> Mat:
    return permutation_matrix(list(range(n - 1, -1, -1)), field)


# ----------------------------------------------------------------------------
# elimination


def _as_rows(grid, field: Field | None):
    if isinstance(grid, Mat):
        return [list(r) for r in grid.rows()], grid.field
    rows = [list(r) for r in grid]
    if not rows or not rows[0]:
        raise ValueError("grid must be nonempty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged grid")
    if field is None:
        field = field_of(x for r in rows for x in r)
    return [[field.coerce(x) for x in r] for r in rows], field


def _eliminate(rows: list[list], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for piv in range(r, nrows):
            if rows[piv][c]:
                break
        else:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = 1 / lead
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(grid, field: Field | None = None):
    """Reduced row echelon form of a (possibly rectangular) grid.

    Returns ``(echelon, pivot_columns, rank)``; ``echelon`` keeps the input
    shape (zero rows at the bottom) and pivot columns are 0-based.
    """
    rows, field = _as_rows(grid, field)
    pivots = _eliminate(rows, len(rows[0]))
    return tuple(tuple(r) for r in rows), pivots, len(pivots)


def solve_linear(a, b: Sequence, field: Field | None = None):
    """Solve ``a x = b``; free variables are set to zero.  None if inconsistent."""
    rows, field = _as_rows(a, field)
    if len(rows) != len(b):
        raise ValueError(f"{len(rows)} equations but {len(b)} right-hand sides")
    ncols = len(rows[0])
    aug = [r + [field.coerce(x)] for r, x in zip(rows, b)]
    pivots = _eliminate(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero()] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    return tuple(x)


def kernel_basis(a, field: Field | None = None) -> list[tuple]:
    """Standard free-variable basis of the right null space of ``a``."""
    rows, field = _as_rows(a, field)
    ncols = len(rows[0])
    pivots = _eliminate(rows, ncols)
    pivset = set(pivots)
    zero, one = field.zero(), field.one()
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def invert(s: Mat) -> Mat:
    """Exact inverse; raises :class:`SingularMatrix` when rank < n."""
    n, field = s.n, s.field
    zero, one = field.zero(), field.one()
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(s.rows())]
    pivots = _eliminate(aug, n)
    if len(pivots) < n or pivots[-1] >= n:
        raise SingularMatrix(f"matrix of size {n} has rank < {n}")
    return Mat._raw(n, [x for r in aug for x in r[n:]], field)


def is_invertible(s: Mat) -> bool:
    return s.rank() == s.n


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a vector space.

    Rows are kept sorted by pivot column with pivot entries equal to one and
    every pivot column cleared in the other rows, i.e. the unique RREF of the
    span.  Used for spans, membership tests and multiplicative closure.
    """

    __slots__ = ("ncols", "field", "rows", "pivots")

    def __init__(self, ncols: int, field: Field):
        self.ncols = ncols
        self.field = field
        self.rows: list[tuple] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        w = self.reduce(v)
        for q, lead in enumerate(w):
            if lead:
                break
        else:
            return False
        if lead != 1:
            inv = 1 / lead
            w = [x * inv if x else x for x in w]
        w = tuple(w)
        for i, row in enumerate(self.rows):
            c = row[q]
            if c:
                self.rows[i] = tuple(a - c * b if b else a for a, b in zip(row, w))
        at = bisect_left(self.pivots, q)
        self.rows.insert(at, w)
        self.pivots.insert(at, q)
        return True

    def extend(self, vs: Iterable[Sequence]) -> int:
        return sum(1 for v in vs if self.add(v))

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` in the echelon basis, or None if ``v`` is outside."""
        coords = [v[p] for p in self.pivots]
        zero = self.field.zero()
        acc = [zero] * self.ncols
        for c, row in zip(coords, self.rows):
            if c:
                acc = [a + c * b if b else a for a, b in zip(acc, row)]
        if tuple(acc) != tuple(v):
            return None
        return coords
