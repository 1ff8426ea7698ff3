"""Command-line front end.

Exit codes: 0 success / certified, 1 usage or input error, 2 typed
classification rejection (or a verification suite reporting violations).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .algebra import (
    CanonicalSpec,
    Subalgebra,
    UnityStatus,
    canonical_algebra,
    multiplicative_closure,
    subspace_intersect,
    subspace_sum,
    unity_summary,
)
from .errors import MatalgError, NotClosed, Rejection
from .fields import Field
from .search import SUITES, run_suite
from .structure import (
    classify_gamma_max,
    classify_omega_max,
    gamma_bound_check,
    idempotent_normal_form,
    jacobson_radical,
    recognize_max_nonunital,
    recognize_parabolic,
)

EXIT_OK, EXIT_USAGE, EXIT_REJECTED = 0, 1, 2


class UsageError(MatalgError):
    pass


def _load_space(path):
    return io.load_algebra(path).space()


def _load_algebra(path) -> Subalgebra:
    s = _load_space(path)
    try:
        return Subalgebra.certify(s)
    except NotClosed:
        raise UsageError(f"{path}: span is not closed under multiplication (run 'closure' first)") from None


def _write(path, text):
    Path(path).write_text(text + "\n")
    print(f"wrote {path}")


def _family(fam) -> str:
    if fam.is_empty:
        return "none"
    if fam.dim == 0:
        return "unique"
    return f"{fam.dim}-parameter family"


def cmd_closure(args):
    a = multiplicative_closure(_load_space(args.file))
    print(f"closure: dim {a.dim}")
    if args.out:
        _write(args.out, io.emit_algebra(a))


def cmd_dim(args):
    s = _load_space(args.file)
    closed = True
    try:
        Subalgebra.certify(s)
    except NotClosed:
        closed = False
    print(f"dim {s.dim} in M_{s.n} over {s.field.tag()}; closed: {'yes' if closed else 'no'}")


def _binary(op, label):
    def run(args):
        a, b = _load_space(args.a), _load_space(args.b)
        out = op(a, b)
        print(f"{label}: dim {out.dim}")
        if args.out:
            _write(args.out, io.emit_algebra(out))
    return run


def cmd_unity(args):
    s = unity_summary(_load_algebra(args.file))
    print(f"{s.status.value}; left identities: {_family(s.left_identities)}; "
          f"right identities: {_family(s.right_identities)}")
    if s.two_sided is not None and s.status is not UnityStatus.CONTAINS_I:
        print("unity:")
        print(s.two_sided.pretty())


def cmd_radical(args):
    j = jacobson_radical(_load_algebra(args.file))
    print(f"radical: dim {j.dim} (ideal and nilpotency certified)")
    if args.out:
        _write(args.out, io.emit_algebra(j))


def cmd_idempotent_nf(args):
    mats = io.parse_algebra(args.file)
    if len(mats) != 1:
        raise UsageError("idempotent-nf expects a file with exactly one matrix")
    s, r = idempotent_normal_form(mats[0])
    print(f"rank {r}; S^-1 e S = D_{r} with S =")
    print(s.g.pretty())
    if args.out:
        _write(args.out, io.emit_algebra([s.g]))


def _classifier(fn):
    def run(args):
        a = _load_space(args.file)
        w = fn(a)
        ok = w.verify(a)
        print(f"{w.kind.value}: certified={'yes' if ok else 'no'} target={w.target().label()}")
        print("conjugator g (g^-1 A g = target):")
        print(w.conj.g.pretty())
        if args.out:
            _write(args.out, io.emit_certificate(w, a))
        return EXIT_OK if ok else EXIT_REJECTED
    return run


def cmd_check_cert(args):
    a = _load_space(args.file)
    w, doc = io.load_certificate(args.cert)
    ok = io.verify_certificate(a, w, doc)
    print(f"{w.kind.value}: {'verified' if ok else 'NOT verified'}")
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_gamma_check(args):
    rep = gamma_bound_check(_load_algebra(args.u), _load_algebra(args.v))
    if rep.is_gamma:
        verdict = "TIGHT" if rep.tight else ("ok" if rep.bound_ok else "VIOLATION")
        print(f"in Γ, dim {rep.dim_n}, bound {rep.bound}: {verdict}")
    else:
        print(f"not in Γ, dim {rep.dim_n}")
    for line in rep.trace:
        print(f"  {line}")
    return EXIT_OK if rep.bound_ok else EXIT_REJECTED


def _int_set(text):
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_canon(args):
    spec = CanonicalSpec(
        args.spec, args.n, rows=_int_set(args.rows), cols=_int_set(args.cols),
        r=args.r, i=args.i, j=args.j,
    )
    a = canonical_algebra(spec, Field.from_tag(args.field))
    print(f"{spec.label()}: dim {a.dim}")
    if args.out:
        _write(args.out, io.emit_algebra(a))


def cmd_verify(args):
    field = Field.from_tag(args.field)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for sid in suites:
        for n in args.n:
            rep = run_suite(sid, n, trials=args.trials, bound=args.bound, seed=args.seed, field=field)
            print(rep.verdict())
            reports.append(rep)
    if args.out:
        if len(reports) == 1:
            text = reports[0].to_json()
        else:
            text = json.dumps(
                {"schema_version": 1, "type": "suite_reports", "reports": [r.to_dict() for r in reports]},
                indent=2, sort_keys=True,
            )
        _write(args.out, text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matalg", description="Exact computations with subalgebras of M_n(Q).")
    sub = p.add_subparsers(dest="command", required=True)

    def one(name, func, help_, out=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        if out:
            sp.add_argument("--out")
        sp.set_defaults(func=func)
        return sp

    def two(name, func, help_, a="a", b="b", out=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument(a)
        sp.add_argument(b)
        if out:
            sp.add_argument("--out")
        sp.set_defaults(func=func)
        return sp

    one("closure", cmd_closure, "multiplicative closure of the span")
    one("dim", cmd_dim, "dimension of the span and whether it is closed", out=False)
    two("intersect", _binary(subspace_intersect, "intersection"), "intersection of two spans")
    two("sum", _binary(subspace_sum, "sum"), "sum of two spans")
    one("unity", cmd_unity, "left, right and two-sided identities", out=False)
    one("radical", cmd_radical, "Jacobson radical (over Q)")
    one("idempotent-nf", cmd_idempotent_nf, "S with S^-1 e S = D_r")
    one("recognize-parabolic", _classifier(recognize_parabolic), "certify conjugacy to P or P^T")
    one("recognize-nonunital", _classifier(recognize_max_nonunital), "certify conjugacy to M[R_n] or M[C_n]")
    one("classify-gamma", _classifier(classify_gamma_max), "certify conjugacy to W or W^T")
    one("classify-omega", _classifier(classify_omega_max), "certify a maximal member of Omega")
    two("gamma-check", cmd_gamma_check, "nonunital-intersection bound for a pair", a="u", b="v", out=False)
    two("check-cert", cmd_check_cert, "re-verify a certificate against its input", a="file", b="cert", out=False)

    sp = sub.add_parser("canon", help="emit a canonical algebra")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--rows", help="ZeroPattern rows, e.g. 3 or 2,3")
    sp.add_argument("--cols", help="ZeroPattern columns")
    sp.add_argument("--r", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--field", default="Q")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("verify", help="run seeded verification suites")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--field", default="Q")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        code = args.func(args)
    except Rejection as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (MatalgError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
