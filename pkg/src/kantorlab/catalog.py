"""Named built-in systems, each with a declared verification suite."""
from __future__ import annotations

from functools import lru_cache

from . import corpus
from .fileformat import SystemFile, algebra_file, superalgebra_file, triple_file
from .triple import MINUS_MINUS

ENTRIES = {
    "unit-field": "base field with the identity involution",
    "split-pair": "F x F with the exchange involution and the swap automorphism",
    "quat": "quaternions with conjugation and the automorphism x -> i x i^-1",
    "mat2-transpose": "2x2 matrices with transpose and conjugation by diag(1,-1)",
    "scalar-fkts": "one-dimensional (-1,-1) system xyz = product of scalars",
    "swap-fkts": "F^2 componentwise, twisted by the coordinate swap",
    "osp12": "osp(1,2) as 3x3 supermatrices with Phi = conjugation",
    "gl12": "gl(1,2) = osp(1,2) + natural module + centre",
    "chevalley-A2": "sl_3 in a Chevalley basis, graded by the highest root",
    "chevalley-A3": "sl_4 in a Chevalley basis, graded by the highest root",
    "chevalley-C2": "sp_4 in a Chevalley basis, graded by the highest root",
}


def catalog() -> list[str]:
    return list(ENTRIES)


@lru_cache(maxsize=None)
def _build(item: str) -> SystemFile:
    prov = [f"catalog:{item}"]
    ref = ENTRIES[item]
    if item == "unit-field":
        return algebra_file(corpus.unit_field(), provenance=prov, reference=ref)
    if item == "split-pair":
        return algebra_file(corpus.split_pair(), corpus.swap2(), prov, ref)
    if item == "quat":
        return algebra_file(corpus.quaternions(), corpus.quat_conjugation_by_i(), prov, ref)
    if item == "mat2-transpose":
        return algebra_file(corpus.mat2_transpose(), corpus.mat2_conjugation_by_diag(), prov, ref)
    if item == "scalar-fkts":
        return triple_file(corpus.scalar_fkts(), MINUS_MINUS, [1], prov, ref)
    if item == "swap-fkts":
        return triple_file(corpus.swap_fkts(), MINUS_MINUS, [1, 1], prov, ref)
    if item == "osp12":
        from .lie import osp12_model
        m = osp12_model()
        return superalgebra_file(m.algebra, m.phi, prov, ref)
    if item == "gl12":
        from .lie import gl12_model
        g, phi = gl12_model()
        return superalgebra_file(g, phi, prov, ref)
    if item.startswith("chevalley-"):
        from .chevalley import chevalley_algebra, chevalley_phi, highest_root_grading
        L = chevalley_algebra(item.split("-", 1)[1])
        G = highest_root_grading(L)
        G.algebra.label = item
        return superalgebra_file(G.algebra, chevalley_phi(L, G), prov, ref)
    raise KeyError(item)


def get(item: str) -> SystemFile:
    if item not in ENTRIES:
        raise KeyError(f"unknown catalog id {item!r}; known: {', '.join(ENTRIES)}")
    f = _build(item)
    # hand out a fresh copy so callers may edit metadata
    return SystemFile(f.kind, f.dim, dict(f.data), f.label, list(f.provenance), f.reference, f.suite)
