"""Seeded random generation and the verification suites.

Each trial draws from its own generator, split off the master seed by trial
index, so any trial replays from ``(seed, trial)`` alone and reports do not
depend on execution order.

Sampling: every suite injects the extremal construction as trial 0; after
that every fifth trial is structured (a random conjugate of a canonical
algebra) and the other four are unstructured random samples.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable

import numpy as np

from .algebra import (
    Conjugator,
    Subalgebra,
    UnityStatus,
    canonical,
    conjugate_algebra,
    multiplicative_closure,
    span,
    subspace_intersect,
    unity_summary,
)
from .errors import InvalidParams, MatalgError, UnknownSuite
from .fields import QQ, Field
from .linalg import D, E, Mat, block_diag, invert
from .structure import (
    WitnessKind,
    classify_gamma_max,
    classify_omega_max,
    gamma_bound_check,
    idempotent_normal_form,
    omega_bound_check,
    recognize_max_nonunital,
    recognize_parabolic,
)


class Rng:
    """Deterministic splittable generator (PCG64 keyed by seed and split path)."""

    def __init__(self, seed: int, path: tuple = ()):
        if not 0 <= seed < 2**64:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.path = tuple(path)
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=self.path)))

    def split(self, index: int) -> "Rng":
        return Rng(self.seed, self.path + (index,))

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        return int(self._gen.integers(lo, hi + 1))

    def integers(self, lo: int, hi: int, size: int) -> list[int]:
        return [int(x) for x in self._gen.integers(lo, hi + 1, size=size)]

    def chance(self, p: float) -> bool:
        return bool(self._gen.random() < p)


# ----------------------------------------------------------------------------
# generators


def random_matrix(n: int, bound: int, rng: Rng, density: float = 1.0, field: Field = QQ) -> Mat:
    vals = rng.integers(-bound, bound, n * n)
    if density < 1.0:
        mask = rng._gen.random(n * n) < density
        vals = [v if keep else 0 for v, keep in zip(vals, mask)]
    return Mat(n, vals, field)


def random_invertible(n: int, bound: int, rng: Rng, field: Field = QQ) -> Mat:
    """Integer matrix with entries in [-bound, bound] and nonzero determinant."""
    if bound < 1:
        raise InvalidParams("bound must be >= 1")
    while True:
        for _ in range(1000):
            m = random_matrix(n, bound, rng, field=field)
            if m.rank() == n:
                return m
        bound *= 2


def random_conjugator(n: int, bound: int, rng: Rng, field: Field = QQ) -> Conjugator:
    return Conjugator(random_invertible(n, bound, rng, field))


def random_idempotent(n: int, r: int, rng: Rng, bound: int = 3, field: Field = QQ) -> Mat:
    """``g D_r g^{-1}`` for a random invertible ``g``."""
    if not 0 <= r <= n:
        raise InvalidParams(f"need 0 <= r <= n, got r={r}, n={n}")
    g = random_invertible(n, bound, rng, field)
    return g @ D(r, n, field) @ invert(g)


def random_subalgebra(
    n: int,
    k_generators: int,
    bound: int,
    rng: Rng,
    ambient: Subalgebra | None = None,
    density: float = 1.0,
    field: Field | None = None,
) -> Subalgebra:
    """Closure of ``k_generators`` random matrices, drawn from ``ambient`` when given."""
    if field is None:
        field = ambient.field if ambient is not None else QQ
    gens = []
    for _ in range(k_generators):
        if ambient is None:
            gens.append(random_matrix(n, bound, rng, density, field))
            continue
        acc = Mat.zeros(n, field)
        for b in ambient.basis:
            if density < 1.0 and not rng.chance(density):
                continue
            c = rng.integer(-bound, bound)
            if c:
                acc = acc + b.scale(c)
        gens.append(acc)
    return multiplicative_closure(span(gens, n=n, field=field))


def random_unital_subalgebra(
    n: int, r: int, k: int, bound: int, rng: Rng, density: float = 1.0, field: Field = QQ
) -> Subalgebra:
    """Closure of ``{e} ∪ {e X_i e}`` for a random rank-``r`` idempotent ``e``; ``e`` is its unity."""
    if not 1 <= r <= n:
        raise InvalidParams(f"need 1 <= r <= n, got r={r}, n={n}")
    e = random_idempotent(n, r, rng, bound, field)
    gens = [e] + [e @ random_matrix(n, bound, rng, density, field) @ e for _ in range(k)]
    return multiplicative_closure(span(gens, n=n, field=field))


# ----------------------------------------------------------------------------
# reports


@dataclass
class SuiteReport:
    suite_id: str
    n: int
    trials: int
    seed: int
    bound: int
    field: str
    checked: int = 0
    skipped: int = 0
    expected_max: int | None = None
    attained_max: int | None = None
    histogram: dict = dc_field(default_factory=dict)
    violations: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def tight(self) -> bool | None:
        if self.expected_max is None:
            return None
        return self.attained_max == self.expected_max

    def to_dict(self, include_elapsed: bool = False) -> dict:
        d = asdict(self)
        d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        if not include_elapsed:
            del d["elapsed"]
        return d

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps({"schema_version": 1, "type": "suite_report", **self.to_dict(include_elapsed)},
                          indent=2, sort_keys=True)

    def verdict(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extremal = ""
        if self.expected_max is not None:
            extremal = f" max={self.attained_max}/{self.expected_max}" + (" tight" if self.tight else "")
        return (
            f"{self.suite_id:<9} n={self.n} trials={self.trials} seed={self.seed} "
            f"checked={self.checked}{extremal} violations={len(self.violations)} "
            f"{self.elapsed:.2f}s {status}"
        )


class _Trial:
    """Outcome of one trial: the dimension observed and any failures."""

    def __init__(self):
        self.dims: list[int] = []
        self.failures: list[str] = []
        self.skipped = False

    def record(self, dim):
        self.dims.append(dim)

    def fail(self, msg):
        self.failures.append(msg)


def _structured(t: int) -> bool:
    return t % 5 == 0


# ----------------------------------------------------------------------------
# suites


def _corner_pair(n: int, field: Field):
    u = canonical("ZeroPattern", n, field, rows={n}, cols={n})
    a = Mat.identity(n, field) + E(n, n - 1, n, field)
    # A u A^{-1}, i.e. conjugation by A^{-1} in the g^{-1} X g convention
    return u, conjugate_algebra(u, Conjugator(invert(a), a))


def _trial_thm31(n, bound, rng, t, field):
    out = _Trial()
    if t == 0:
        u, v = _corner_pair(n, field)
    elif _structured(t):
        r = rng.integer(1, n - 1)
        u = canonical("ZeroPattern", n, field, rows=set(range(r + 1, n + 1)), cols=set(range(r + 1, n + 1)))
        i, j = rng.integer(1, n), rng.integer(1, n)
        while j == i:
            j = rng.integer(1, n)
        c = rng.integer(1, bound)
        a = Mat.identity(n, field) + E(i, j, n, field).scale(c)
        v = conjugate_algebra(u, Conjugator(a))
        g = random_conjugator(n, bound, rng, field)
        u, v = conjugate_algebra(u, g), conjugate_algebra(v, g)
    else:
        r1 = rng.integer(1, n)
        u = random_unital_subalgebra(n, r1, rng.integer(0, 2), bound, rng, density=0.5, field=field)
        mode = rng.integer(0, 2)
        if mode == 0:
            r2 = rng.integer(1, n)
            v = random_unital_subalgebra(n, r2, rng.integer(0, 2), bound, rng, density=0.5, field=field)
        elif mode == 1:
            i, j = rng.integer(1, n), rng.integer(1, n)
            while j == i:
                j = rng.integer(1, n)
            a = Mat.identity(n, field) + E(i, j, n, field)
            v = conjugate_algebra(u, Conjugator(a))
        else:
            # unital via I, sharing a random part of u
            keep = [b for b in u.basis if rng.chance(0.5)]
            v = multiplicative_closure(span(keep + [Mat.identity(n, field)], n=n, field=field))
    rep = gamma_bound_check(u, v)
    if rep.is_gamma:
        out.record(rep.dim_n)
        if not rep.bound_ok:
            out.fail(f"nonunital intersection of dim {rep.dim_n} > {rep.bound}")
    else:
        out.skipped = True
    return out


def _nonunital_sample(n, bound, rng, t, field):
    if _structured(t):
        tag = "ZeroPattern"
        kw = {"rows": {n}} if rng.chance(0.5) else {"cols": {n}}
        amb = conjugate_algebra(canonical(tag, n, field, **kw), random_conjugator(n, bound, rng, field))
        return random_subalgebra(n, rng.integer(1, 3), bound, rng, ambient=amb, density=0.6)
    return random_subalgebra(n, rng.integer(1, 3), bound, rng, density=0.4, field=field)


def _trial_lem22(n, bound, rng, t, field):
    out = _Trial()
    if t == 0:
        a = canonical("ZeroPattern", n, field, rows={n})
    else:
        for _ in range(25):
            a = _nonunital_sample(n, bound, rng, t, field)
            if unity_summary(a).status is UnityStatus.NONUNITAL:
                break
        else:
            out.skipped = True
            return out
    out.record(a.dim)
    limit = n * (n - 1)
    if a.dim > limit:
        out.fail(f"nonunital subalgebra of dim {a.dim} > {limit}")
    elif a.dim == limit and field.is_rational:
        try:
            recognize_max_nonunital(a)
        except MatalgError as exc:
            out.fail(f"maximal nonunital algebra not recognized: {exc}")
    return out


def _trial_lem21(n, bound, rng, t, field):
    out = _Trial()
    u, v = _corner_pair(n, field)
    w = canonical("W", n, field)
    if t > 0:
        g = random_conjugator(n, bound, rng, field)
        u, v, w = (conjugate_algebra(x, g) for x in (u, v, w))
    inter = subspace_intersect(u, v)
    out.record(inter.dim)
    if inter != w:
        out.fail("intersection differs from W")
    s = unity_summary(inter)
    if s.status is not UnityStatus.NONUNITAL or not s.right_identities.is_empty:
        out.fail(f"intersection has unexpected unity status {s.status.value}")
    if inter.dim != (n - 1) * (n - 2):
        out.fail(f"dim {inter.dim} != (n-1)(n-2)")
    return out


def _trial_lem23rem(n, bound, rng, t, field):
    out = _Trial()
    base = canonical("ZeroPattern", n, field, rows={n})
    if _structured(t):
        extra = random_matrix(n, bound, rng, field=field)
    else:
        extra = None
    while extra is None or base.contains(extra):
        vals = rng.integers(-bound, bound, n)
        extra = Mat(n, [0] * (n * (n - 1)) + vals, field)
    b = multiplicative_closure(span(list(base.basis) + [extra], n=n, field=field))
    out.record(b.dim)
    if not b.contains(Mat.identity(n, field)):
        out.fail("algebra properly containing M[R_n] misses I")
    return out


def _trial_lem23(n, bound, rng, t, field):
    out = _Trial()
    tag_kw, kind = ({"rows": {n}}, WitnessKind.ROW_ALGEBRA) if t % 2 == 0 else ({"cols": {n}}, WitnessKind.COLUMN_ALGEBRA)
    a = canonical("ZeroPattern", n, field, **tag_kw)
    if t > 1:
        a = conjugate_algebra(a, random_conjugator(n, bound, rng, field))
    out.record(a.dim)
    _round_trip(out, a, recognize_max_nonunital, kind)
    return out


def _trial_lem24(n, bound, rng, t, field):
    out = _Trial()
    r = t % (n + 1)
    e = random_idempotent(n, r, rng, bound, field)
    s, rank = idempotent_normal_form(e)
    out.record(rank)
    if rank != r or s.apply(e) != D(r, n, field):
        out.fail(f"S^-1 e S != D_{r}")
    return out


def _round_trip(out, a, classifier, kind):
    try:
        w = classifier(a)
    except MatalgError as exc:
        out.fail(f"{kind.value} not recognized: {exc}")
        return
    if w.kind is not kind or not w.verify(a):
        out.fail(f"expected {kind.value}, got {w.kind.value} (verified={w.verify(a)})")


def _trial_thm32(n, bound, rng, t, field):
    out = _Trial()
    tag, kind = ("W", WitnessKind.GAMMA_W) if t % 2 == 0 else ("WTranspose", WitnessKind.GAMMA_W_TRANSPOSE)
    a = canonical(tag, n, field)
    if t > 1:
        a = conjugate_algebra(a, random_conjugator(n, bound, rng, field))
    out.record(a.dim)
    _round_trip(out, a, classify_gamma_max, kind)
    return out


def _trial_prop42(n, bound, rng, t, field):
    out = _Trial()
    if t % 2 == 0:
        a, kind = canonical("ParabolicP", n, field), WitnessKind.PARABOLIC_P
    else:
        a, kind = canonical("ParabolicPTranspose", n, field), WitnessKind.PARABOLIC_P_TRANSPOSE
    if t > 1:
        a = conjugate_algebra(a, random_conjugator(n, bound, rng, field))
    out.record(a.dim)
    if n == 2:
        # P and its transpose are conjugate in M_2; any certified kind is correct
        try:
            w = recognize_parabolic(a)
            if not w.verify(a):
                out.fail("witness does not re-verify")
        except MatalgError as exc:
            out.fail(f"not recognized: {exc}")
    else:
        _round_trip(out, a, recognize_parabolic, kind)
    return out


def _corner_conjugator(n, bound, rng, field) -> Conjugator:
    g = random_invertible(n - 1, bound, rng, field)
    return Conjugator(block_diag(g, 1), block_diag(invert(g), 1))


def _trial_thm33(n, bound, rng, t, field):
    out = _Trial()
    p = canonical("ParabolicP", n, field)
    if t == 0:
        b = canonical("OmegaMaxColumn", n, field)
    elif _structured(t):
        tag = "OmegaMaxColumn" if rng.chance(0.5) else "OmegaMaxRow"
        b = conjugate_algebra(canonical(tag, n, field), _corner_conjugator(n, bound, rng, field))
    else:
        b = random_subalgebra(n, rng.integer(1, 3), bound, rng, ambient=p, density=0.3)
    rep = omega_bound_check(b)
    if not rep["in_omega"]:
        out.skipped = True
        return out
    out.record(b.dim)
    if not rep["bound_ok"]:
        out.fail(f"member of Omega with dim {b.dim} > {rep['bound']}")
    if not rep["side_ok"]:
        out.fail(f"b·e = M[R_n,C_n] but dim {b.dim} > {rep['bound'] - 1}")
    if b.dim == rep["bound"] and field.is_rational and n >= 3:
        try:
            w = classify_omega_max(b)
            if not w.verify(b):
                out.fail("Omega witness does not re-verify")
        except MatalgError as exc:
            out.fail(f"maximal member of Omega not classified: {exc}")
    return out


@dataclass(frozen=True)
class _Suite:
    trial: Callable
    min_n: int
    expected_max: Callable | None
    rational_only: bool = True


SUITES = {
    "thm31": _Suite(_trial_thm31, 1, lambda n: (n - 1) * (n - 2), False),
    "lem22": _Suite(_trial_lem22, 1, lambda n: n * (n - 1), False),
    "lem21": _Suite(_trial_lem21, 3, lambda n: (n - 1) * (n - 2), False),
    "lem23rem": _Suite(_trial_lem23rem, 1, None, False),
    "lem23": _Suite(_trial_lem23, 2, None),
    "lem24": _Suite(_trial_lem24, 1, None, False),
    "thm32": _Suite(_trial_thm32, 3, None),
    "thm33": _Suite(_trial_thm33, 3, lambda n: n * n - 2 * n + 3),
    "prop42": _Suite(_trial_prop42, 2, None),
}


def _check_params(suite_id, n, trials, bound, field):
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    suite = SUITES[suite_id]
    if n < suite.min_n:
        raise InvalidParams(f"suite {suite_id} needs n >= {suite.min_n}")
    if trials < 1 or bound < 1:
        raise InvalidParams("trials and bound must be >= 1")
    if suite.rational_only and not field.is_rational:
        raise InvalidParams(f"suite {suite_id} runs over Q only")
    return suite


def replay_trial(suite_id: str, n: int, trial: int, seed: int, bound: int = 3, field: Field = QQ) -> _Trial:
    """Re-run a single trial from its seed and index."""
    suite = _check_params(suite_id, n, trial + 1, bound, field)
    return suite.trial(n, bound, Rng(seed).split(trial), trial, field)


def run_suite(
    suite_id: str, n: int, trials: int = 200, bound: int = 3, seed: int = 0, field: Field = QQ
) -> SuiteReport:
    """Run ``trials`` seeded trials of a verification suite."""
    suite = _check_params(suite_id, n, trials, bound, field)
    report = SuiteReport(suite_id, n, trials, seed, bound, field.tag())
    if suite.expected_max is not None:
        report.expected_max = suite.expected_max(n)
    master = Rng(seed)
    start = time.perf_counter()
    hist: dict[int, int] = {}
    for t in range(trials):
        res = suite.trial(n, bound, master.split(t), t, field)
        if res.skipped:
            report.skipped += 1
        for d in res.dims:
            hist[d] = hist.get(d, 0) + 1
            report.checked += 1
        for msg in res.failures:
            report.violations.append({"trial": t, "seed": seed, "n": n, "field": field.tag(), "detail": msg})
    report.histogram = dict(sorted(hist.items()))
    report.attained_max = max(hist) if hist else None
    report.elapsed = time.perf_counter() - start
    return report
