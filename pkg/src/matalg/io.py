"""JSON file formats: algebra files, certificates and suite reports.

All scalars are written as exact strings ("3", "-2", "3/7"; residues as
their representative in [0, p)), never as binary floats.  Every document
carries ``"schema_version": 1``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .algebra import CanonicalSpec, Conjugator, Subspace, span
from .errors import DimensionMismatch, ParseError
from .fields import Field, format_scalar
from .linalg import Mat, invert
from .structure import ClassificationWitness, WitnessKind

SCHEMA_VERSION = 1


@dataclass
class AlgebraFile:
    n: int
    field: Field
    matrices: list[Mat]

    def space(self) -> Subspace:
        return span(self.matrices, n=self.n, field=self.field)


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from None


def _grid(raw, n: int, field: Field, where: str) -> Mat:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected a list of rows")
    if any(not isinstance(r, list) for r in raw):
        raise ParseError(f"{where}: every row must be a list")
    lengths = {len(r) for r in raw}
    if len(lengths) > 1:
        raise ParseError(f"{where}: ragged rows (lengths {sorted(lengths)})")
    if len(raw) != n or lengths != {n}:
        raise DimensionMismatch(f"{where}: expected {n}x{n}, got {len(raw)}x{next(iter(lengths), 0)}")
    entries = []
    for i, row in enumerate(raw):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise ParseError(f"{where}[{i}][{j}]: entries must be strings or integers, got {x!r}")
            try:
                entries.append(field.coerce(str(x)))
            except ParseError as exc:
                raise ParseError(f"{where}[{i}][{j}]: {exc}") from None
            except ZeroDivisionError as exc:
                raise ParseError(f"{where}[{i}][{j}]: {exc}") from None
    return Mat(n, entries, field)


def parse_algebra_text(text: str, source: str = "<string>") -> AlgebraFile:
    doc = _load_json(text, source)
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"{source}: unsupported schema_version {version!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{source}: 'n' must be a positive integer")
    field = Field.from_tag(str(doc.get("field", "Q")))
    mats = doc.get("matrices")
    if not isinstance(mats, list):
        raise ParseError(f"{source}: 'matrices' must be a list")
    return AlgebraFile(n, field, [_grid(m, n, field, f"matrices[{k}]") for k, m in enumerate(mats)])


def load_algebra(path) -> AlgebraFile:
    path = Path(path)
    return parse_algebra_text(path.read_text(), str(path))


def parse_algebra(path) -> list[Mat]:
    """Matrices listed in an algebra file, parsed exactly."""
    return load_algebra(path).matrices


def _grid_strings(m: Mat) -> list[list[str]]:
    return [[format_scalar(x) for x in r] for r in m.rows()]


def _dumps(doc: dict) -> str:
    """JSON with one matrix row per line."""

    def enc(v, indent):
        pad = " " * indent
        if isinstance(v, dict):
            items = [f'{pad}  {json.dumps(k)}: {enc(x, indent + 2)}' for k, x in v.items()]
            return "{\n" + ",\n".join(items) + f"\n{pad}}}"
        if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            if all(isinstance(x, str) for r in v for x in r):
                rows = [f"{pad}  {json.dumps(r)}" for r in v]
            else:
                rows = [f"{pad}  {enc(r, indent + 2)}" for r in v]
            return "[\n" + ",\n".join(rows) + f"\n{pad}]"
        return json.dumps(v)

    return enc(doc, 0)


def algebra_document(mats, n: int | None = None, field: Field | None = None) -> dict:
    if isinstance(mats, Subspace):
        n, field, mats = mats.n, mats.field, list(mats.basis)
    mats = list(mats)
    if n is None:
        n = mats[0].n
    if field is None:
        field = mats[0].field
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "algebra",
        "n": n,
        "field": field.tag(),
        "matrices": [_grid_strings(m) for m in mats],
    }


def emit_algebra(mats, n: int | None = None, field: Field | None = None) -> str:
    return _dumps(algebra_document(mats, n, field))


def write_algebra(path, mats, n: int | None = None, field: Field | None = None):
    Path(path).write_text(emit_algebra(mats, n, field) + "\n")


def space_hash(s: Subspace) -> str:
    """SHA-256 of the canonical basis; identical for equal subspaces."""
    doc = algebra_document(s)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


# ----------------------------------------------------------------------------
# certificates


def spec_document(spec: CanonicalSpec) -> dict:
    d = {"tag": spec.tag, "n": spec.n}
    if spec.rows:
        d["rows"] = sorted(spec.rows)
    if spec.cols:
        d["cols"] = sorted(spec.cols)
    for key in ("r", "i", "j"):
        if getattr(spec, key) is not None:
            d[key] = getattr(spec, key)
    return d


def spec_from_document(d: dict) -> CanonicalSpec:
    return CanonicalSpec(
        d["tag"], d["n"], rows=d.get("rows", ()), cols=d.get("cols", ()),
        r=d.get("r"), i=d.get("i"), j=d.get("j"),
    )


def certificate_document(w: ClassificationWitness, input_space: Subspace) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "certificate",
        "kind": w.kind.value,
        "field": input_space.field.tag(),
        "conjugator": _grid_strings(w.conj.g),
        "target": spec_document(w.target()),
        "verified": bool(w.certified and w.verify(input_space)),
        "input_hash": space_hash(input_space),
    }


def emit_certificate(w: ClassificationWitness, input_space: Subspace) -> str:
    return _dumps(certificate_document(w, input_space))


def parse_certificate_text(text: str, source: str = "<string>") -> tuple[ClassificationWitness, dict]:
    doc = _load_json(text, source)
    try:
        kind = WitnessKind(doc["kind"])
        field = Field.from_tag(doc.get("field", "Q"))
        target = spec_from_document(doc["target"])
        g = _grid(doc["conjugator"], target.n, field, "conjugator")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{source}: malformed certificate ({exc})") from None
    w = ClassificationWitness(kind, Conjugator(g, invert(g)), bool(doc.get("verified", False)))
    return w, doc


def load_certificate(path):
    path = Path(path)
    return parse_certificate_text(path.read_text(), str(path))


def verify_certificate(input_space: Subspace, w: ClassificationWitness, doc: dict | None = None) -> bool:
    """Independent re-check: conjugating the input must give the target exactly."""
    if doc is not None:
        if doc.get("input_hash") not in (None, space_hash(input_space)):
            return False
        if spec_from_document(doc["target"]) != w.target():
            return False
    return w.verify(input_space)
