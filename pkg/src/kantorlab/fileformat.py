"""Sparse, exact, diff-able JSON files for systems, algebras and maps.

Scalars are strings ``"p/q"`` (or ``"p"``), tensors are lists of
``[i, j, ..., "value"]`` records sorted by index, and key order is fixed,
so saving a loaded file reproduces it byte for byte.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exact import as_exact, format_scalar, parse_scalar, zeros

FORMAT = "kantorlab/1"
KINDS = ("triple-system", "involutive-algebra", "graded-superalgebra", "linear-map")

_REQUIRED = {
    "triple-system": ("tensor",),
    "involutive-algebra": ("product", "involution", "unit"),
    "graded-superalgebra": ("basis", "bracket"),
    "linear-map": ("matrix",),
}
_OPTIONAL = {
    "triple-system": ("signs", "unit"),
    "involutive-algebra": ("automorphism",),
    "graded-superalgebra": ("phi",),
    "linear-map": (),
}
_HEADER = ("format", "kind", "dim", "meta")
_META = ("label", "provenance", "reference", "suite")


class FormatError(ValueError):
    """Malformed or unsupported file content."""


@dataclass
class SystemFile:
    kind: str
    dim: int
    data: dict
    label: str = ""
    provenance: list = field(default_factory=list)
    reference: str = ""
    suite: str = ""

    def same_content(self, other: "SystemFile") -> bool:
        """Equality of the mathematical payload, ignoring metadata."""
        return self.kind == other.kind and self.dim == other.dim and \
            _payload(self) == _payload(other)


# -- encoding ----------------------------------------------------------------

def _sparse(a) -> list:
    a = as_exact(a)
    out = []
    for idx in np.ndindex(*a.shape):
        if a[idx] != 0:
            out.append([int(i) for i in idx] + [format_scalar(a[idx])])
    return out


def _dense(records, shape, what: str) -> np.ndarray:
    a = zeros(shape)
    if not isinstance(records, list):
        raise FormatError(f"{what}: expected a list of records")
    seen = set()
    for rec in records:
        if not isinstance(rec, list) or len(rec) != len(shape) + 1:
            raise FormatError(f"{what}: bad record {rec!r}")
        *idx, val = rec
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise FormatError(f"{what}: non-integer index in {rec!r}")
        if any(i < 0 or i >= s for i, s in zip(idx, shape)):
            raise FormatError(f"{what}: index out of range in {rec!r}")
        if tuple(idx) in seen:
            raise FormatError(f"{what}: duplicate record {rec!r}")
        seen.add(tuple(idx))
        a[tuple(idx)] = _scalar(val, what)
    return a


def _scalar(val, what):
    if not isinstance(val, str):
        raise FormatError(f"{what}: scalars must be strings like \"p/q\", got {val!r}")
    try:
        return parse_scalar(val)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{what}: {exc}") from None


def _vector(v) -> list:
    return [format_scalar(x) for x in as_exact(v)]


def _payload(f: SystemFile) -> dict:
    d = f.data
    if f.kind == "triple-system":
        out = {"tensor": _sparse(d["tensor"])}
        if d.get("signs") is not None:
            out["signs"] = str(d["signs"])
        if d.get("unit") is not None:
            out["unit"] = _vector(d["unit"])
    elif f.kind == "involutive-algebra":
        out = {"product": _sparse(d["product"]), "involution": _sparse(d["involution"]),
               "unit": _vector(d["unit"])}
        if d.get("automorphism") is not None:
            out["automorphism"] = _sparse(d["automorphism"])
    elif f.kind == "graded-superalgebra":
        out = {"basis": [{"label": l, "degree": int(g), "parity": "odd" if p else "even"}
                         for l, g, p in zip(d["labels"], d["degrees"], d["parities"])],
               "bracket": _sparse(d["bracket"])}
        if d.get("phi") is not None:
            out["phi"] = _sparse(d["phi"])
    else:
        out = {"matrix": _sparse(d["matrix"])}
    return out


def dumps(f: SystemFile) -> str:
    if f.kind not in KINDS:
        raise FormatError(f"unknown kind {f.kind!r}")
    meta = {"label": f.label, "provenance": list(f.provenance),
            "reference": f.reference, "suite": f.suite}
    doc = {"format": FORMAT, "kind": f.kind, "dim": int(f.dim), "meta": meta}
    doc.update(_payload(f))
    lines = ["{"]
    items = list(doc.items())
    for k, (key, val) in enumerate(items):
        sep = "," if k < len(items) - 1 else ""
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"  {json.dumps(key)}: [")
            for r, rec in enumerate(val):
                rsep = "," if r < len(val) - 1 else ""
                lines.append(f"    {json.dumps(rec, sort_keys=False)}{rsep}")
            lines.append(f"  ]{sep}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(f: SystemFile, path) -> None:
    Path(path).write_text(dumps(f), encoding="utf-8")


# -- decoding ------------------------------------------------------------------

def loads(text: str) -> SystemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    if doc.get("format") != FORMAT:
        raise FormatError(f"unsupported format {doc.get('format')!r}, expected {FORMAT!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    allowed = set(_HEADER) | set(_REQUIRED[kind]) | set(_OPTIONAL[kind])
    extra = sorted(set(doc) - allowed)
    if extra:
        raise FormatError(f"unknown fields: {', '.join(extra)}")
    missing = [k for k in _HEADER + _REQUIRED[kind] if k not in doc]
    if missing:
        raise FormatError(f"missing fields: {', '.join(missing)}")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError(f"dim must be a non-negative integer, got {n!r}")
    meta = doc["meta"]
    if not isinstance(meta, dict) or set(meta) - set(_META):
        raise FormatError(f"bad meta block; allowed keys: {', '.join(_META)}")
    prov = meta.get("provenance", [])
    if not isinstance(prov, list) or not all(isinstance(p, str) for p in prov):
        raise FormatError("meta.provenance must be a list of strings")
    for key in ("label", "reference", "suite"):
        if not isinstance(meta.get(key, ""), str):
            raise FormatError(f"meta.{key} must be a string")

    data: dict = {}
    if kind == "triple-system":
        data["tensor"] = _dense(doc["tensor"], (n,) * 4, "tensor")
        if "signs" in doc:
            from .triple import SignPair
            try:
                data["signs"] = SignPair.parse(doc["signs"])
            except (ValueError, AttributeError) as exc:
                raise FormatError(str(exc)) from None
        if "unit" in doc:
            data["unit"] = _vec(doc["unit"], n, "unit")
    elif kind == "involutive-algebra":
        data["product"] = _dense(doc["product"], (n,) * 3, "product")
        data["involution"] = _dense(doc["involution"], (n, n), "involution")
        data["unit"] = _vec(doc["unit"], n, "unit")
        if "automorphism" in doc:
            data["automorphism"] = _dense(doc["automorphism"], (n, n), "automorphism")
    elif kind == "graded-superalgebra":
        basis = doc["basis"]
        if not isinstance(basis, list) or len(basis) != n:
            raise FormatError(f"basis must list {n} elements")
        labels, degrees, parities = [], [], []
        for b in basis:
            if not isinstance(b, dict) or set(b) != {"label", "degree", "parity"}:
                raise FormatError(f"bad basis record {b!r}")
            if b["parity"] not in ("even", "odd") or b["degree"] not in (-2, -1, 0, 1, 2):
                raise FormatError(f"bad degree or parity in {b!r}")
            labels.append(str(b["label"]))
            degrees.append(b["degree"])
            parities.append(1 if b["parity"] == "odd" else 0)
        data.update(labels=labels, degrees=tuple(degrees), parities=tuple(parities),
                    bracket=_dense(doc["bracket"], (n,) * 3, "bracket"))
        if "phi" in doc:
            data["phi"] = _dense(doc["phi"], (n, n), "phi")
    else:
        data["matrix"] = _dense(doc["matrix"], (n, n), "matrix")
    return SystemFile(kind, n, data, meta.get("label", ""), list(prov),
                      meta.get("reference", ""), meta.get("suite", ""))


def _vec(v, n, what):
    if not isinstance(v, list) or len(v) != n:
        raise FormatError(f"{what}: expected {n} scalars")
    return as_exact([_scalar(x, what) for x in v])


def load(path) -> SystemFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return loads(text)


# -- conversions to and from library objects ---------------------------------

def triple_file(T, signs=None, unit=None, provenance=(), reference="", suite="") -> SystemFile:
    data = {"tensor": T.tensor, "signs": signs, "unit": None if unit is None else as_exact(unit)}
    if not suite and signs is not None:
        suite = f"fkts:{signs.epsilon:+d},{signs.delta:+d}"
    return SystemFile("triple-system", T.dim, data, T.label, list(provenance), reference, suite)


def algebra_file(A, automorphism=None, provenance=(), reference="") -> SystemFile:
    data = {"product": A.product, "involution": A.involution, "unit": A.unit,
            "automorphism": None if automorphism is None else as_exact(automorphism)}
    return SystemFile("involutive-algebra", A.dim, data, A.label, list(provenance),
                      reference, "structurable")


def superalgebra_file(g, phi=None, provenance=(), reference="") -> SystemFile:
    data = {"labels": list(g.labels), "degrees": g.degrees, "parities": g.parities,
            "bracket": g.bracket, "phi": None if phi is None else phi.matrix}
    return SystemFile("graded-superalgebra", g.dim, data, g.label, list(provenance),
                      reference, "graded")


def map_file(M, label="", provenance=(), reference="") -> SystemFile:
    M = as_exact(M)
    return SystemFile("linear-map", M.shape[0], {"matrix": M}, label, list(provenance), reference)


def to_triple(f: SystemFile):
    from .triple import TripleSystem
    if f.kind != "triple-system":
        raise FormatError(f"expected a triple-system file, got {f.kind}")
    return TripleSystem(f.data["tensor"], f.label)


def to_algebra(f: SystemFile):
    from .structurable import InvalidAlgebra, InvolutiveAlgebra
    if f.kind != "involutive-algebra":
        raise FormatError(f"expected an involutive-algebra file, got {f.kind}")
    try:
        return InvolutiveAlgebra(f.data["product"], f.data["involution"], f.data["unit"], f.label)
    except InvalidAlgebra as exc:
        raise FormatError(str(exc)) from None


def to_superalgebra(f: SystemFile):
    from .lie import GradedSuperalgebra, PhiMap
    if f.kind != "graded-superalgebra":
        raise FormatError(f"expected a graded-superalgebra file, got {f.kind}")
    d = f.data
    g = GradedSuperalgebra(d["labels"], d["degrees"], d["parities"], d["bracket"], f.label)
    phi = PhiMap(d["phi"], g) if d.get("phi") is not None else None
    return g, phi


def to_map(f: SystemFile) -> np.ndarray:
    if f.kind != "linear-map":
        raise FormatError(f"expected a linear-map file, got {f.kind}")
    return f.data["matrix"]
