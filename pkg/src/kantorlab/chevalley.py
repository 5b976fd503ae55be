"""Chevalley bases of small classical Lie algebras and their highest-root grading.

Root vectors are realised as matrices (sl_n for type A, sp_4 for C2) with
``x_{-alpha} = x_alpha^T``.  Then ``X -> -X^T`` is the Chevalley involution
``Phi(x_alpha) = -x_{-alpha}``, ``Phi|_h = -id``, and the structure
constants come out as integers.  The highest root is called ``varrho`` to
keep it apart from the map ``x -> xee``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact import (
    ConstructionError, DegenerateRoots, as_exact,
    contract_int, exact_equal, identity, operator_inverse, rref, to_scaled,
    zeros,
)
from .lie import (
    GradedSuperalgebra, PhiMap, check_grading, check_super_jacobi, phi_report,
)
from .report import CheckResult, Report, sweep_result
from .triple import KANTOR, ONE_ONE, TripleSystem, check_fkts, k_span

TYPES = ("A1", "A2", "A3", "C2")


def _unit(n, i, j):
    m = zeros((n, n))
    m[i, j] = 1
    return m


@dataclass(eq=False)
class ChevalleyAlgebra:
    kind: str
    rank: int
    labels: list
    roots: list              # epsilon coordinates, None for Cartan elements
    matrices: list
    bracket: np.ndarray
    highest_root: tuple
    simple_roots: list

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index_of_root(self, alpha) -> int:
        return self.roots.index(tuple(alpha))

    @property
    def root_list(self) -> list:
        return [r for r in self.roots if r is not None]

    @property
    def positive_roots(self) -> list:
        return [r for r in self.root_list if _is_positive(r, self.simple_roots)]

    @property
    def cartan(self) -> list[int]:
        return [i for i, r in enumerate(self.roots) if r is None]

    @cached_property
    def _coords(self) -> "_Coords":
        return _Coords(self.matrices)

    def coordinates(self, M) -> np.ndarray:
        return self._coords(M)


def inner(alpha, beta) -> Fraction:
    """The invariant form in epsilon coordinates (a multiple of Killing)."""
    return Fraction(sum(a * b for a, b in zip(alpha, beta)))


def _is_positive(alpha, simple) -> bool:
    coeffs = _simple_coefficients(alpha, simple)
    return all(c >= 0 for c in coeffs)


def _simple_coefficients(alpha, simple) -> list[Fraction]:
    rows = [list(s) for s in simple]
    A = as_exact(np.array(rows, dtype=object).T)
    from .exact import solve
    c = solve(A, as_exact(alpha))
    if c is None:
        raise ConstructionError(f"{alpha} is not in the root lattice")
    return list(c)


class _Coords:
    """Coordinates with respect to a list of independent matrices."""

    def __init__(self, mats):
        B = as_exact(np.stack([m.ravel() for m in mats], axis=1))
        # choose independent rows of B to get a square invertible system
        chosen, basis = [], []
        for r in range(B.shape[0]):
            trial = basis + [list(B[r])]
            if len(rref(trial)[0]) > len(basis):
                basis.append(list(B[r]))
                chosen.append(r)
            if len(basis) == B.shape[1]:
                break
        if len(basis) < B.shape[1]:
            raise ConstructionError("matrices are dependent")
        self.B = B
        self.rows = chosen
        self.inv = operator_inverse(as_exact(basis))

    def __call__(self, M) -> np.ndarray:
        flat = as_exact(M).ravel()
        c = as_exact(self.inv @ flat[self.rows])
        if not exact_equal(as_exact(self.B @ c), flat):
            raise ConstructionError("matrix lies outside the algebra")
        return c


def _sl(n: int):
    labels, roots, mats = [], [], []
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            pos.append((j - i, i, j, tuple(r)))
    pos.sort()
    for _, i, j, r in pos:
        labels.append(f"x[e{i + 1}-e{j + 1}]")
        roots.append(r)
        mats.append(_unit(n, i, j))
    for i in range(n - 1):
        labels.append(f"h{i + 1}")
        roots.append(None)
        mats.append(as_exact(_unit(n, i, i) - _unit(n, i + 1, i + 1)))
    for _, i, j, r in reversed(pos):
        labels.append(f"x[e{j + 1}-e{i + 1}]")
        roots.append(tuple(-x for x in r))
        mats.append(_unit(n, j, i))
    simple = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
    top = [0] * n
    top[0], top[-1] = 1, -1
    return labels, roots, mats, simple, tuple(top)


def _sp4():
    E = lambda i, j: _unit(4, i - 1, j - 1)
    pos = [
        ("x[e1-e2]", (1, -1), as_exact(E(1, 2) - E(4, 3))),
        ("x[2e2]", (0, 2), E(2, 4)),
        ("x[e1+e2]", (1, 1), as_exact(E(1, 4) + E(2, 3))),
        ("x[2e1]", (2, 0), E(1, 3)),
    ]
    labels = [p[0] for p in pos] + ["h1", "h2"]
    roots = [p[1] for p in pos] + [None, None]
    mats = [p[2] for p in pos]
    comm = lambda A, B: as_exact(A @ B - B @ A)
    mats += [comm(pos[0][2], pos[0][2].T), comm(pos[1][2], pos[1][2].T)]
    for name, r, m in reversed(pos):
        labels.append(name.replace("x[", "x[-(") + ")")
        roots.append(tuple(-x for x in r))
        mats.append(as_exact(m.T))
    return labels, roots, mats, [(1, -1), (0, 2)], (2, 0)


def chevalley_algebra(kind: str) -> ChevalleyAlgebra:
    if kind not in TYPES:
        raise ValueError(f"unsupported type {kind!r}; choose from {', '.join(TYPES)}")
    if kind == "C2":
        labels, roots, mats, simple, top = _sp4()
        rank_ = 2
    else:
        n = int(kind[1]) + 1
        labels, roots, mats, simple, top = _sl(n)
        rank_ = n - 1
    d = len(mats)
    L = ChevalleyAlgebra(kind, rank_, labels, roots, mats, zeros((d, d, d)), top, simple)
    for i in range(d):
        for j in range(d):
            L.bracket[i, j] = L.coordinates(as_exact(mats[i] @ mats[j] - mats[j] @ mats[i]))
    rep = chevalley_report(L)
    if not rep.passed:
        raise ConstructionError(f"{kind} Chevalley basis is inconsistent:\n{rep.render()}")
    return L


def _as_graded(L: ChevalleyAlgebra, degrees=None) -> GradedSuperalgebra:
    degs = degrees if degrees is not None else [0] * L.dim
    return GradedSuperalgebra(list(L.labels), tuple(degs), (0,) * L.dim, L.bracket, L.kind)


def chevalley_report(L: ChevalleyAlgebra) -> Report:
    report = Report(f"{L.kind} Chevalley basis")
    report.extend(check_super_jacobi(_as_graded(L)))
    integral = all(Fraction(x).denominator == 1 for x in L.bracket.flat)
    report.add(CheckResult("integer structure constants", integral, L.dim ** 2))
    roots = L.root_list
    bad = None
    for alpha in roots:
        i, j = L.index_of_root(alpha), L.index_of_root(tuple(-x for x in alpha))
        h = L.bracket[i, j]
        if any(h[k] != 0 for k in range(L.dim) if k not in L.cartan):
            bad = alpha
            break
        # alpha(h_alpha) from [h_alpha, x_alpha] = alpha(h_alpha) x_alpha
        val = sum(h[k] * L.bracket[k, i, i] for k in L.cartan)
        if val != 2:
            bad = alpha
            break
    report.add(CheckResult("[x_a, x_-a] = h_a with a(h_a) = 2", bad is None, len(roots),
                           witness=None if bad is None else (bad,)))
    top = L.highest_root
    hit = next((a for a in L.positive_roots
                if tuple(x + y for x, y in zip(top, a)) in roots), None)
    report.add(CheckResult("varrho + a is never a root (a > 0)", hit is None,
                           len(L.positive_roots), witness=None if hit is None else (hit,)))
    return report


@dataclass(eq=False)
class HighestRootGrading:
    chevalley: ChevalleyAlgebra
    degrees: tuple              # per Chevalley basis element
    order: list                 # Chevalley indices sorted by degree
    algebra: GradedSuperalgebra  # basis reordered by degree
    form: np.ndarray            # <u|v> on the g_1 basis
    report: Report

    @property
    def dims(self) -> tuple:
        return self.algebra.dims_by_degree()

    @property
    def degenerate(self) -> bool:
        return self.dims[3] == 0

    def g1(self) -> list[int]:
        """Chevalley indices of the g_1 basis, in the graded order."""
        return [self.order[i] for i in self.algebra.indices(1)]


def highest_root_grading(L: ChevalleyAlgebra) -> HighestRootGrading:
    top = L.highest_root
    top_sq = inner(top, top)
    degrees = []
    for r in L.roots:
        if r is None:
            degrees.append(0)
        elif tuple(r) == tuple(top):
            degrees.append(2)
        elif tuple(-x for x in r) == tuple(top):
            degrees.append(-2)
        elif inner(top, r) == 0:
            degrees.append(0)
        else:
            degrees.append(1 if _is_positive(r, L.simple_roots) else -1)
    report = Report(f"{L.kind} highest-root grading")
    # cross-check: the degree is the ad h_varrho eigenvalue 2(varrho|a)/(varrho|varrho)
    i_top = L.index_of_root(top)
    i_low = L.index_of_root(tuple(-x for x in top))
    h_top = L.bracket[i_top, i_low]
    eig_ok = True
    for k, r in enumerate(L.roots):
        ad = sum(h_top[c] * L.bracket[c, k] for c in range(L.dim))
        expected = degrees[k] * np.eye(L.dim, dtype=object)[k]
        if not exact_equal(as_exact(ad), as_exact(expected)):
            eig_ok = False
        if r is not None and Fraction(2) * inner(top, r) / top_sq != degrees[k]:
            eig_ok = False
    report.add(CheckResult("degree = ad h_varrho eigenvalue = 2(varrho|a)/(varrho|varrho)",
                           eig_ok, L.dim))
    order = sorted(range(L.dim), key=lambda k: (degrees[k], k))
    perm = np.array(order)
    b = L.bracket[np.ix_(perm, perm, perm)]
    g = GradedSuperalgebra([L.labels[k] for k in order], tuple(degrees[k] for k in order),
                           (0,) * L.dim, b, f"{L.kind} 5-graded")
    report.extend(check_grading(g))
    report.add(CheckResult("dims sum to dim g", sum(g.dims_by_degree()) == L.dim, 1))
    ones = [order[i] for i in g.indices(1)]
    form = zeros((len(ones), len(ones)))
    ok = True
    for a, u in enumerate(ones):
        for c, v in enumerate(ones):
            br = L.bracket[u, v]
            form[a, c] = br[i_top]
            rest = as_exact(br.copy())
            rest[i_top] = 0
            ok = ok and all(x == 0 for x in rest)
    report.add(CheckResult("[u,v] = <u|v> x_varrho on g_1", ok, len(ones) ** 2))
    report.add(CheckResult("<.|.> alternating", exact_equal(form, as_exact(-form.T))
                           and all(form[i, i] == 0 for i in range(len(ones))), len(ones) ** 2))
    return HighestRootGrading(L, tuple(degrees), order, g, form, report)


def chevalley_phi(L: ChevalleyAlgebra, grading: HighestRootGrading | None = None) -> PhiMap:
    """Phi(x_a) = -x_{-a}, Phi|_h = -id, on the degree-ordered basis."""
    grading = grading or highest_root_grading(L)
    g = grading.algebra
    pos = {k: i for i, k in enumerate(grading.order)}
    P = zeros((L.dim, L.dim))
    for k, r in enumerate(L.roots):
        if r is None:
            P[pos[k], pos[k]] = -1
        else:
            P[pos[L.index_of_root(tuple(-x for x in r))], pos[k]] = -1
    phi = PhiMap(P, g)
    # independent check that this is X -> -X^T on the matrices
    for k, M in enumerate(L.matrices):
        img = L.coordinates(as_exact(-M.T))
        col = zeros(L.dim)
        for c, val in enumerate(img):
            col[pos[c]] = val
        if not exact_equal(col, P[:, pos[k]]):
            raise ConstructionError(f"Phi disagrees with -transpose on {L.labels[k]}")
    rep = phi_report(phi, KANTOR)
    if not rep.passed:
        raise ConstructionError(f"Phi is not a valid automorphism:\n{rep.render()}")
    return phi


@dataclass(eq=False)
class KantorOnG1:
    system: TripleSystem
    sigma: np.ndarray
    form: np.ndarray
    report: Report

    def __iter__(self):
        return iter((self.system, self.sigma, self.form))


def kantor_on_g1(L: ChevalleyAlgebra, grading: HighestRootGrading | None = None,
                 phi: PhiMap | None = None) -> KantorOnG1:
    """uvw = [[u, Phi(v)], w] on g_1, computed with matrices."""
    grading = grading or highest_root_grading(L)
    if grading.degenerate:
        raise DegenerateRoots(f"{L.kind}: g_1 = 0, no triple system")
    phi = phi or chevalley_phi(L, grading)
    ones = grading.g1()
    m = len(ones)
    mats = [L.matrices[k] for k in ones]
    comm = lambda A, B: as_exact(A @ B - B @ A)
    coords = L.coordinates

    def on_g1(M):
        c = coords(M)
        if any(c[k] != 0 for k in range(L.dim) if k not in ones):
            raise ConstructionError("result leaves g_1")
        return as_exact([c[k] for k in ones])

    t = zeros((m, m, m, m))
    for a in range(m):
        for b in range(m):
            inner_ = comm(mats[a], as_exact(-mats[b].T))
            for c in range(m):
                t[a, b, c] = on_g1(comm(inner_, mats[c]))
    U = TripleSystem(t, f"{L.kind}-g1")
    x_top = L.matrices[L.index_of_root(L.highest_root)]
    sigma = as_exact(np.stack([on_g1(comm(x_top, as_exact(-M.T))) for M in mats], axis=1))
    form = grading.form
    report = check_fkts(U, KANTOR)
    report.subject = f"{L.kind} Kantor triple system on g_1"
    K = U.K_table(1)
    expected = contract_int("uv,pq->uvpq", form, sigma)
    report.add(sweep_result("K(u,v) = <u|v> sigma", K, expected, 2))
    report.add(sweep_result("sigma^2 = -id", to_scaled(as_exact(sigma @ sigma).T),
                            to_scaled(as_exact(-identity(m)).T), 1))
    report.add(CheckResult("sigma in K(U,U)", k_span(U, 1).contains(sigma), 1))
    if not report.passed:
        raise ConstructionError(f"{L.kind} g_1 system fails:\n{report.render()}")
    return KantorOnG1(U, sigma, form, report)


def balanced_twist(U: TripleSystem, sigma, form=None) -> TripleSystem:
    """{uvw} = u sigma(v) w, a (1,1) system with K*(u,v) = -<u|v> id."""
    from .bridge import twist
    out = twist(U, sigma, KANTOR).with_label(f"{U.label}-balanced" if U.label else "balanced")
    rep = check_fkts(out, ONE_ONE)
    if form is not None:
        n = U.dim
        expected = contract_int("uv,pq->uvpq", as_exact(-as_exact(form)), identity(n))
        rep.add(sweep_result("K*(u,v) = -<u|v> id", out.K_table(1), expected, 2))
    if not rep.passed:
        raise ConstructionError(f"balanced twist fails:\n{rep.render()}")
    return out


def freudenthal_product(U: TripleSystem, form) -> tuple[np.ndarray, Report]:
    """(uvw) = {uvw} - 1/2<u|v>w + 1/2<u|w>v + 1/2<v|w>u, with its symmetry
    in the first two arguments swept on basis triples."""
    form = as_exact(form)
    n = U.dim
    I = identity(n)
    half = Fraction(1, 2)
    from .exact import combine
    prod = combine(
        (1, U.scaled),
        (-half, contract_int("uv,wl->uvwl", form, I)),
        (half, contract_int("uw,vl->uvwl", form, I)),
        (half, contract_int("vw,ul->uvwl", form, I)),
    )
    swapped = type(prod)(prod.ints.transpose(1, 0, 2, 3), prod.den)
    report = Report(f"{U.label or 'triple system'} Freudenthal product")
    report.add(sweep_result("(uvw) = (vuw)", prod, swapped, 3))
    return prod.to_fractions(), report
