"""Five-graded Lie (super)algebras attached to Freudenthal-Kantor triple systems.

``g(U) = L (+) T`` where ``T`` is the space of columns ``(a; b)`` over U and
``L`` is spanned by 2x2 block operators on T.  The grading is

    g_-2 = [[0,0],[K,0]]   g_-1 = (0; U)   g_0 = diag(L(a,b), eps L(b,a))
    g_1  = (U; 0)          g_2  = [[0,K],[0,0]]

Every algebra here is stored by structure constants ``b[i, j, k]`` with
``[v_i, v_j] = sum_k b[i, j, k] v_k``.

The swap map on columns is ``Phi(x; y) = (-eps*delta y; x)``.  With this
normalisation ``xyz = [[x, Phi(y)], z]`` holds on the nose for every sign
pair, and ``Phi^2 = -eps*delta`` on T as required.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact import (
    ConstructionError, DimensionMismatch, HypothesisViolation, Scaled,
    as_exact, basis_vector, combine, contract, contract_int, eigenprojections,
    column_basis, exact_equal, fmt_array, identity, is_zero, nullspace, rank,
    solve, span_basis, to_scaled, zeros, OperatorSpan,
)
from .report import CheckResult, Report, sweep_result
from .triple import (
    K_op, MINUS_MINUS, SignPair, TripleSystem, check_fkts,
)

DEGREES = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class ColumnModel:
    """How a g(U) basis sits inside End(T) (+) T."""

    source: TripleSystem
    signs: SignPair
    lie_span: OperatorSpan          # basis of L as 2n x 2n matrices
    slots: tuple                    # per basis element: ("L", k) or ("T", p)

    @property
    def n(self) -> int:
        return self.source.dim


@dataclass(eq=False)
class GradedSuperalgebra:
    labels: list
    degrees: tuple
    parities: tuple
    bracket: np.ndarray
    label: str = ""
    model: ColumnModel | None = None

    def __post_init__(self):
        b = as_exact(self.bracket)
        d = len(self.labels)
        if b.shape != (d, d, d) or len(self.degrees) != d or len(self.parities) != d:
            raise DimensionMismatch(f"bracket of shape {b.shape} for {d} basis elements")
        if any(deg not in DEGREES for deg in self.degrees):
            raise ValueError("degrees must lie in -2..2")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 (even) or 1 (odd)")
        self.bracket = b
        self.degrees = tuple(int(x) for x in self.degrees)
        self.parities = tuple(int(x) for x in self.parities)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def scaled(self) -> Scaled:
        return to_scaled(self.bracket)

    def indices(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def dims_by_degree(self) -> tuple:
        return tuple(len(self.indices(d)) for d in DEGREES)

    @property
    def is_super(self) -> bool:
        return any(self.parities)

    def br(self, x, y) -> np.ndarray:
        return contract("i,j,ijk->k", as_exact(x), as_exact(y), self.scaled)

    def ad(self, x) -> np.ndarray:
        """Matrix of y -> [x, y]."""
        return contract("i,ijk->kj", as_exact(x), self.scaled)

    def basis(self, i: int) -> np.ndarray:
        return basis_vector(self.dim, i)

    def sign_matrix(self) -> np.ndarray:
        p = np.array(self.parities)
        return np.where(np.outer(p, p) == 1, -1, 1)

    def __repr__(self):
        return f"GradedSuperalgebra(dims={self.dims_by_degree()}, label={self.label!r})"


@dataclass(eq=False)
class PhiMap:
    """Linear map of a graded superalgebra, columns are images of basis elements."""

    matrix: np.ndarray
    algebra: GradedSuperalgebra

    def __call__(self, x) -> np.ndarray:
        return as_exact(self.matrix @ as_exact(x))


# -- the column triple system --------------------------------------------------

def _column_bracket_blocks(T: TripleSystem, signs) -> np.ndarray:
    """``B[p, q]`` is the 2n x 2n operator [X_p, X_q] for unit columns X_p, X_q."""
    eps, delta = SignPair.of(*signs)
    n = T.dim
    L = T.L_table.to_fractions()
    K = T.K_table(delta).to_fractions()
    B = zeros((2 * n, 2 * n, 2 * n, 2 * n))
    for p in range(2 * n):
        for q in range(2 * n):
            M = zeros((2 * n, 2 * n))
            a1, b1 = (p, None) if p < n else (None, p - n)
            a2, b2 = (q, None) if q < n else (None, q - n)
            if a1 is not None and b2 is not None:
                M[:n, :n] += L[a1, b2]
                M[n:, n:] += eps * L[b2, a1]
            if a2 is not None and b1 is not None:
                M[:n, :n] -= delta * L[a2, b1]
                M[n:, n:] -= eps * delta * L[b1, a2]
            if a1 is not None and a2 is not None:
                M[:n, n:] += delta * K[a1, a2]
            if b1 is not None and b2 is not None:
                M[n:, :n] -= eps * K[b1, b2]
            B[p, q] = M
    return B


def build_T(T: TripleSystem, signs) -> tuple[TripleSystem, str]:
    """The (anti-)Lie triple system on columns (a; b) over U.

    Returns the 2n-dimensional triple tensor and ``"even"`` for delta = 1
    (Lie triple system) or ``"odd"`` for delta = -1 (anti-Lie).
    """
    signs = SignPair.of(*signs)
    rep = check_fkts(T, signs)
    if not rep.passed:
        raise HypothesisViolation(f"not an {signs} Freudenthal-Kantor triple system:\n{rep.render()}")
    B = _column_bracket_blocks(T, signs)
    tensor = as_exact(B.transpose(0, 1, 3, 2))
    label = f"{T.label}-columns" if T.label else "columns"
    return TripleSystem(tensor, label), ("odd" if signs.delta == -1 else "even")


# -- g(U) ----------------------------------------------------------------------

def _lie_generators(T: TripleSystem, signs):
    eps, delta = signs
    n = T.dim
    L = T.L_table.to_fractions()
    K = T.K_table(delta).to_fractions()
    pairs = [(a, b) for a in range(n) for b in range(n)]
    lower, middle, upper = [], [], []
    for a, b in pairs:
        M = zeros((2 * n, 2 * n))
        M[n:, :n] = K[a, b]
        lower.append(M)
        M = zeros((2 * n, 2 * n))
        M[:n, :n] = L[a, b]
        M[n:, n:] = eps * L[b, a]
        middle.append(M)
        M = zeros((2 * n, 2 * n))
        M[:n, n:] = K[a, b]
        upper.append(M)
    shape = (2 * n, 2 * n)
    return span_basis(lower, shape), span_basis(middle, shape), span_basis(upper, shape)


def _coords_batch(span: OperatorSpan, ops: Scaled, what: str) -> Scaled:
    """Coordinates of a stack of matrices (leading axes arbitrary) in ``span``."""
    lead = ops.shape[:-2]
    flat = Scaled(ops.ints.reshape(lead + (-1,)), ops.den)
    piv = list(span.pivots)
    coords = Scaled(flat.ints[..., piv], flat.den)
    recon = contract_int("...k,kf->...f", coords, span.matrix()) if piv else Scaled(
        np.zeros(flat.shape, dtype=np.int64), 1)
    bad = sweep_result(what, flat, recon, len(lead))
    if not bad.passed:
        raise ConstructionError(f"{what}: bracket leaves L at {bad.witness}")
    return coords


def build_gU(T: TripleSystem, signs, verify: bool = True) -> GradedSuperalgebra:
    """Structure constants of g(U) = L (+) T.

    Basis order is by degree: K-span (lower-left), columns (0; e_i),
    g_0 span, columns (e_i; 0), K-span (upper-right).  Each span basis is
    the reduced echelon basis of the generators in lexicographic order.
    """
    signs = SignPair.of(*signs)
    eps, delta = signs
    rep = check_fkts(T, signs)
    if not rep.passed:
        raise HypothesisViolation(f"not an {signs} Freudenthal-Kantor triple system:\n{rep.render()}")
    n = T.dim
    lower, middle, upper = _lie_generators(T, signs)
    lie_mats = list(lower.basis) + list(middle.basis) + list(upper.basis)
    lie_degs = [-2] * lower.dim + [0] * middle.dim + [2] * upper.dim
    # the blocks are disjoint, so the three reduced bases stay reduced together
    lie_span = OperatorSpan((2 * n, 2 * n), tuple(lie_mats),
                            lower.pivots + middle.pivots + upper.pivots)
    order = list(range(lie_span.dim))
    lie_by_deg = {d: [k for k in order if lie_degs[k] == d] for d in (-2, 0, 2)}

    slots, labels, degrees = [], [], []
    for k, idx in enumerate(lie_by_deg[-2]):
        slots.append(("L", idx)); labels.append(f"K-{k}"); degrees.append(-2)
    for i in range(n):
        slots.append(("T", n + i)); labels.append(f"(0;e{i})"); degrees.append(-1)
    for k, idx in enumerate(lie_by_deg[0]):
        slots.append(("L", idx)); labels.append(f"L{k}"); degrees.append(0)
    for i in range(n):
        slots.append(("T", i)); labels.append(f"(e{i};0)"); degrees.append(1)
    for k, idx in enumerate(lie_by_deg[2]):
        slots.append(("L", idx)); labels.append(f"K+{k}"); degrees.append(2)
    odd = 1 if delta == -1 else 0
    parities = [odd if s[0] == "T" else 0 for s in slots]

    lie_pos = {s[1]: i for i, s in enumerate(slots) if s[0] == "L"}
    col_pos = {s[1]: i for i, s in enumerate(slots) if s[0] == "T"}
    lie_idx = [lie_pos[k] for k in range(lie_span.dim)]
    col_idx = [col_pos[p] for p in range(2 * n)]

    Lb = to_scaled(np.stack(lie_mats)) if lie_mats else None
    d = len(slots)
    b = zeros((d, d, d))
    if Lb is not None:
        comm = combine(
            (1, contract_int("ipr,jrq->ijpq", Lb, Lb)),
            (-1, contract_int("jpr,irq->ijpq", Lb, Lb)),
        )
        c = _coords_batch(lie_span, comm, "[L, L]").to_fractions()
        b[np.ix_(lie_idx, lie_idx, lie_idx)] = c
        act = Lb.to_fractions()                      # [M, X_p] = column p of M
        mx = act.transpose(0, 2, 1)                  # [i, p, :]
        b[np.ix_(lie_idx, col_idx, col_idx)] = mx
        b[np.ix_(col_idx, lie_idx, col_idx)] = -mx.transpose(1, 0, 2)
    TT = to_scaled(_column_bracket_blocks(T, signs))
    if lie_mats:
        b[np.ix_(col_idx, col_idx, lie_idx)] = _coords_batch(lie_span, TT, "[T, T]").to_fractions()
    elif not is_zero(TT.to_fractions()):
        raise ConstructionError("[T, T] is nonzero but L is zero")

    g = GradedSuperalgebra(labels, tuple(degrees), tuple(parities), b,
                           f"g({T.label})" if T.label else "g(U)",
                           ColumnModel(T, signs, lie_span, tuple(slots)))
    if verify:
        for check in (check_super_jacobi, check_grading):
            r = check(g)
            if not r.passed:
                raise ConstructionError(f"g(U) is inconsistent:\n{r.render()}")
    return g


def ambient(g: GradedSuperalgebra, x) -> tuple[np.ndarray, np.ndarray]:
    """(operator on T, column) representing an element of g(U)."""
    m = g.model
    if m is None:
        raise HypothesisViolation("algebra has no column model")
    x = as_exact(x)
    n2 = 2 * m.n
    M, v = zeros((n2, n2)), zeros(n2)
    for coef, (kind, idx) in zip(x, m.slots):
        if coef == 0:
            continue
        if kind == "L":
            M = M + coef * m.lie_span.basis[idx]
        else:
            v[idx] += coef
    return as_exact(M), as_exact(v)


def from_ambient(g: GradedSuperalgebra, M, v) -> np.ndarray | None:
    m = g.model
    coords = m.lie_span.coordinates(as_exact(M))
    if coords is None:
        return None
    out = zeros(g.dim)
    for i, (kind, idx) in enumerate(m.slots):
        out[i] = coords[idx] if kind == "L" else as_exact(v)[idx]
    return out


def column_element(g: GradedSuperalgebra, a=None, b=None) -> np.ndarray:
    """The element (a; b) of g(U)."""
    n = g.model.n
    v = zeros(2 * n)
    if a is not None:
        v[:n] = as_exact(a)
    if b is not None:
        v[n:] = as_exact(b)
    return from_ambient(g, zeros((2 * n, 2 * n)), v)


# -- verification ------------------------------------------------------------

def _signed(s: Scaled, sign: np.ndarray) -> Scaled:
    return Scaled(s.ints * sign.astype(s.ints.dtype), s.den)


def check_super_jacobi(g: GradedSuperalgebra) -> Report:
    """(-1)^{|x||z|}[x,[y,z]] + cyclic = 0 on all basis triples."""
    b = g.scaled
    s = g.sign_matrix()
    t1 = _signed(contract_int("yzm,xml->xyzl", b, b), s[:, None, :, None])
    t2 = _signed(contract_int("zxm,yml->xyzl", b, b), s.T[:, :, None, None])
    t3 = _signed(contract_int("xym,zml->xyzl", b, b), s.T[None, :, :, None])
    total = combine((1, t1), (1, t2), (1, t3))
    zero = Scaled(np.zeros(total.shape, dtype=np.int64), 1)
    name = "super-Jacobi" if g.is_super else "Jacobi"
    return Report(g.label or "algebra", [sweep_result(name, total, zero, 3)])


def check_grading(g: GradedSuperalgebra) -> Report:
    b = g.bracket
    s = g.sign_matrix()
    report = Report(f"{g.label or 'algebra'} grading")
    swapped = -(b.transpose(1, 0, 2) * s[:, :, None])
    report.add(sweep_result("graded antisymmetry", to_scaled(b), to_scaled(swapped), 2))
    deg = np.array(g.degrees)
    par = np.array(g.parities)
    nz = np.argwhere(np.vectorize(lambda q: q != 0, otypes=[bool])(b)) if g.dim else np.zeros((0, 3), int)
    cases = g.dim ** 2

    def first_bad(pred):
        for i, j, k in nz:
            if not pred(i, j, k):
                return (int(i), int(j), int(k))
        return None

    hit = first_bad(lambda i, j, k: deg[k] == deg[i] + deg[j])
    report.add(CheckResult("degree additivity", hit is None, cases, witness=hit,
                           lhs=None if hit is None else f"deg {deg[hit[0]] + deg[hit[1]]}",
                           rhs=None if hit is None else f"deg {deg[hit[2]]}"))
    hit = first_bad(lambda i, j, k: par[k] == (par[i] + par[j]) % 2)
    report.add(CheckResult("parity additivity", hit is None, cases, witness=hit))
    if g.is_super:
        bad = next((i for i in range(g.dim) if par[i] != deg[i] % 2), None)
        report.add(CheckResult("consistent 5-grading", bad is None, g.dim,
                               witness=None if bad is None else (bad,)))
    return report


def _matrix_on_basis(g: GradedSuperalgebra, images) -> np.ndarray:
    return as_exact(np.stack(images, axis=1)) if images else zeros((0, 0))


def phi_of_gU(source, signs=None) -> PhiMap:
    """Phi on g(U): (x; y) -> (-eps*delta y; x) on T and the induced
    conjugation [[A,B],[C,D]] -> [[D, c C],[c B, A]] (c = -eps*delta) on L."""
    if isinstance(source, TripleSystem):
        g = build_gU(source, signs)
    else:
        g = source
    m = g.model
    if m is None:
        raise HypothesisViolation("phi_of_gU needs an algebra produced by build_gU")
    eps, delta = m.signs
    c = -eps * delta
    n = m.n
    P = zeros((2 * n, 2 * n))
    P[n:, :n] = identity(n)
    P[:n, n:] = c * identity(n)
    P_inv = as_exact(c * P)
    images = []
    for i in range(g.dim):
        M, v = ambient(g, g.basis(i))
        img = from_ambient(g, as_exact(P @ M @ P_inv), as_exact(P @ v))
        if img is None:
            raise ConstructionError(f"Phi moves {g.labels[i]} outside g(U)")
        images.append(img)
    phi = PhiMap(_matrix_on_basis(g, images), g)
    rep = phi_report(phi, m.signs)
    if not rep.passed:
        raise ConstructionError(f"Phi is not a valid swap automorphism:\n{rep.render()}")
    return phi


def phi_report(phi: PhiMap, signs) -> Report:
    """Automorphism, degree reversal and the prescribed square."""
    eps, delta = SignPair.of(*signs)
    g = phi.algebra
    P = phi.matrix
    report = Report(f"{g.label or 'algebra'} Phi")
    b = g.scaled
    Ps = to_scaled(P)
    lhs = contract_int("ijk,mk->ijm", b, Ps)
    rhs = contract_int("ai,bj,abm->ijm", Ps, Ps, b)
    report.add(sweep_result("Phi automorphism", lhs, rhs, 2))
    deg = g.degrees
    bad = next(((i, j) for i in range(g.dim) for j in range(g.dim)
                if P[j, i] != 0 and deg[j] != -deg[i]), None)
    report.add(CheckResult("Phi(g_i) = g_-i", bad is None, g.dim, witness=bad))
    bad = next(((i, j) for i in range(g.dim) for j in range(g.dim)
                if P[j, i] != 0 and g.parities[j] != g.parities[i]), None)
    report.add(CheckResult("Phi even", bad is None, g.dim, witness=bad))
    if eps * delta == -1:
        target, name = identity(g.dim), "Phi^2 = id"
    else:
        target = as_exact(np.diag([(-1) ** (d % 2) for d in deg]))
        name = "Phi^2 = (-1)^degree"
    report.add(sweep_result(name, to_scaled((P @ P).T), to_scaled(as_exact(target).T), 1))
    return report


def recover_fkts(g: GradedSuperalgebra, phi: PhiMap, signs) -> TripleSystem:
    """xyz = [[x, Phi(y)], z] on U = g_1, with both FK identities verified."""
    signs = SignPair.of(*signs)
    eps, delta = signs
    grading = check_grading(g)
    if not grading.passed:
        raise HypothesisViolation(f"not consistently 5-graded:\n{grading.render()}")
    ones = g.indices(1)
    if ones and any(g.parities[i] != (1 if delta == -1 else 0) for i in ones):
        raise HypothesisViolation(f"g_1 parity does not match delta = {delta:+d}")
    rep = phi_report(phi, signs)
    if not rep.passed:
        raise HypothesisViolation(f"Phi fails its invariants:\n{rep.render()}")
    b = g.scaled
    Ps = to_scaled(phi.matrix)
    inner = contract_int("xam,ay->xym", b, Ps)               # [x, Phi(y)]
    full = contract_int("xym,mzl->xyzl", inner, b).to_fractions()
    t = full[np.ix_(ones, ones, ones, ones)]
    U = TripleSystem(t, f"{g.label}-g1" if g.label else "g1")
    post = check_fkts(U, signs)
    # K(x,y)z = delta [[x,y], Phi(z)]
    xy = contract_int("xym,mwl->xywl", b, b)                 # [[x,y], w]
    k_ad = contract_int("xywl,wz->xyzl", xy, Ps).scale(delta).to_fractions()
    k_ad = k_ad[np.ix_(ones, ones, ones, ones)]
    K = U.K_table(delta)
    post.add(sweep_result("K(x,y)z = delta[[x,y],Phi(z)]",
                          K, to_scaled(k_ad.transpose(0, 1, 3, 2)), 2))
    if not post.passed:
        raise ConstructionError(f"recovered system fails:\n{post.render()}")
    return U


def ground_system(g: GradedSuperalgebra, phi: PhiMap) -> tuple[TripleSystem, SignPair]:
    """Recover the triple system, inferring delta from the parity of g_1
    and eps*delta from Phi^2."""
    ones = g.indices(1)
    delta = -1 if ones and g.parities[ones[0]] == 1 else 1
    # Phi^2 is id on g_1 when eps*delta = -1 and -id otherwise
    sq = as_exact(phi.matrix @ phi.matrix)
    eps_delta = -1 if not ones or sq[ones[0], ones[0]] == 1 else 1
    signs = SignPair(eps_delta * delta, delta)
    return recover_fkts(g, phi, signs), signs


# -- osp(1,2) ----------------------------------------------------------------

def _sc(A, B, pa, pb):
    return as_exact(A @ B - (-1) ** (pa * pb) * (B @ A))


@dataclass(eq=False)
class Osp12Model:
    algebra: GradedSuperalgebra
    phi: PhiMap
    matrices: dict
    module: dict
    conjugation: np.ndarray
    report: Report = field(default_factory=lambda: Report("osp(1,2)"))

    def __iter__(self):
        return iter((self.algebra, self.phi, self.module))

    def module_action(self) -> tuple[np.ndarray, ...]:
        """Matrices of the basis of b acting on (H^, X^, Y^)."""
        mods = [self.module[k] for k in ("H^", "X^", "Y^")]
        par = {"H^": 0, "X^": 1, "Y^": 1}
        names = ("H^", "X^", "Y^")
        flat = as_exact(np.stack([m.ravel() for m in mods], axis=1))
        out = []
        for key, p in zip(OSP_ORDER, OSP_PARITY):
            cols = []
            for nm, m in zip(names, mods):
                img = _sc(self.matrices[key], m, p, par[nm]).ravel()
                c = solve(flat, img)
                if c is None:
                    raise ConstructionError(f"[{key}, {nm}] leaves the natural module")
                cols.append(c)
            out.append(as_exact(np.stack(cols, axis=1)))
        return tuple(out)


OSP_ORDER = ("F", "Y", "H", "X", "E")
OSP_DEGREES = (-2, -1, 0, 1, 2)
OSP_PARITY = (0, 1, 0, 1, 0)


def osp12_model() -> Osp12Model:
    """The 5-dimensional superalgebra b = osp(1,2) inside gl(1,2)."""
    mats = {
        "F": as_exact([[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
        "Y": as_exact([[0, 1, 0], [0, 0, 0], [1, 0, 0]]),
        "H": as_exact([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        "X": as_exact([[0, 0, -1], [1, 0, 0], [0, 0, 0]]),
        "E": as_exact([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
    }
    module = {
        "H^": as_exact([[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
        "X^": as_exact([[0, 0, 1], [1, 0, 0], [0, 0, 0]]),
        "Y^": as_exact([[0, -1, 0], [0, 0, 0], [1, 0, 0]]),
    }
    P = as_exact([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    P_inv = as_exact(P.T)                       # P is orthogonal
    flat = as_exact(np.stack([mats[k].ravel() for k in OSP_ORDER], axis=1))
    b = zeros((5, 5, 5))
    for i, ki in enumerate(OSP_ORDER):
        for j, kj in enumerate(OSP_ORDER):
            c = solve(flat, _sc(mats[ki], mats[kj], OSP_PARITY[i], OSP_PARITY[j]).ravel())
            if c is None:
                raise ConstructionError(f"[{ki},{kj}] leaves osp(1,2)")
            b[i, j] = c
    g = GradedSuperalgebra(list(OSP_ORDER), OSP_DEGREES, OSP_PARITY, b, "osp(1,2)")
    images = []
    for k in OSP_ORDER:
        c = solve(flat, as_exact(P @ mats[k] @ P_inv).ravel())
        if c is None:
            raise ConstructionError(f"conjugation moves {k} outside osp(1,2)")
        images.append(c)
    phi = PhiMap(_matrix_on_basis(g, images), g)
    model = Osp12Model(g, phi, mats, module, P)
    rep = model.report
    rep.extend(check_super_jacobi(g))
    rep.extend(check_grading(g))
    rep.extend(phi_report(phi, MINUS_MINUS))
    conj = lambda A: as_exact(P @ A @ P_inv)
    rep.add(CheckResult("Phi(X) = Y", exact_equal(conj(mats["X"]), mats["Y"]), 1))
    rep.add(CheckResult("Phi(X^) = Y^", exact_equal(conj(module["X^"]), module["Y^"]), 1))
    try:
        model.module_action()
        rep.add(CheckResult("natural module closed", True, 15))
    except ConstructionError as exc:
        rep.add(CheckResult("natural module closed", False, 15, note=str(exc)))
    if not rep.passed:
        raise ConstructionError(f"osp(1,2) model is inconsistent:\n{rep.render()}")
    return model


def gl12_model() -> tuple[GradedSuperalgebra, PhiMap]:
    """gl(1,2) = b (+) s (+) F id, graded by ad H, with Phi = conjugation.

    One adjoint copy, one natural copy and a one-dimensional centre, so its
    degree-1 part is a left-unital (-1,-1) system with U_-1 != 0.
    """
    osp = osp12_model()
    mats = dict(osp.matrices)
    mats.update(osp.module)
    mats["I"] = identity(3)
    order = ("F", "Y", "Y^", "H", "H^", "I", "X", "X^", "E")
    parity = {k: int(mats[k][0, 1] != 0 or mats[k][0, 2] != 0 or mats[k][1, 0] != 0
                      or mats[k][2, 0] != 0) for k in order}
    flat = as_exact(np.stack([mats[k].ravel() for k in order], axis=1))
    if rank(flat) != 9:
        raise ConstructionError("gl(1,2) basis is dependent")
    H = mats["H"]
    degrees = []
    for k in order:
        c = solve(flat, _sc(H, mats[k], 0, parity[k]).ravel())
        nz = [i for i, v in enumerate(c) if v != 0]
        if nz and (nz != [order.index(k)]):
            raise ConstructionError(f"{k} is not an ad H eigenvector")
        degrees.append(int(c[order.index(k)]) if nz else 0)
    b = zeros((9, 9, 9))
    for i, ki in enumerate(order):
        for j, kj in enumerate(order):
            b[i, j] = solve(flat, _sc(mats[ki], mats[kj], parity[ki], parity[kj]).ravel())
    g = GradedSuperalgebra(list(order), tuple(degrees), tuple(parity[k] for k in order), b, "gl(1,2)")
    P = osp.conjugation
    images = [solve(flat, as_exact(P @ mats[k] @ P.T).ravel()) for k in order]
    return g, PhiMap(_matrix_on_basis(g, images), g)


def osp12_frame(g: GradedSuperalgebra, phi: PhiMap, x) -> np.ndarray:
    """Rows F, Y, H, X, E generated from an odd degree-1 element x:
    Y = Phi(x), H = [x, Y], E = -1/2 [x, x], F = 1/2 [Y, Y]."""
    x = _as_g1(g, x)
    y = phi(x)
    h = g.br(x, y)
    e = as_exact(g.br(x, x) * Fraction(-1, 2))
    f = as_exact(g.br(y, y) * Fraction(1, 2))
    return as_exact(np.stack([f, y, h, x, e]))


def frame_constants(g: GradedSuperalgebra, frame) -> np.ndarray | None:
    """Structure constants of the span of the frame rows, or None if the
    rows are dependent or their span is not closed."""
    frame = as_exact(frame)
    k = frame.shape[0]
    if rank(frame) < k:
        return None
    cols = frame.T
    out = zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            c = solve(cols, g.br(frame[i], frame[j]))
            if c is None:
                return None
            out[i, j] = c
    return out


def matches_osp12(g: GradedSuperalgebra, phi: PhiMap, x) -> CheckResult:
    """Does the frame built from x carry exactly the osp(1,2) constants?"""
    model = osp12_model()
    got = frame_constants(g, osp12_frame(g, phi, x))
    if got is None:
        return CheckResult("osp(1,2) frame", False, 1, note="frame is degenerate or not closed")
    same = exact_equal(got, model.algebra.bracket)
    hit = None
    if not same:
        hit = tuple(int(v) for v in np.argwhere(
            np.vectorize(lambda q: q != 0, otypes=[bool])(got - model.algebra.bracket))[0])
    return CheckResult("osp(1,2) frame", same, 125, witness=hit)


# -- B(0,1) decomposition ------------------------------------------------------

@dataclass
class B01Decomposition:
    h: np.ndarray                       # rows F, Y, H, X, E in g coordinates
    adjoint: list                       # (x in U, module basis rows)
    natural: list
    trivial: list
    report: Report

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.adjoint), len(self.natural), len(self.trivial)


def _generated_module(g: GradedSuperalgebra, acting, gen, model_action, model_gen):
    """Grow the submodule generated by ``gen`` alongside a model module.

    ``acting`` and ``model_action`` are lists of matrices of the same
    algebra elements.  Returns (target basis, model basis, consistent).
    """
    pairs = [(as_exact(model_gen), as_exact(gen))]
    model_basis, target_basis = [as_exact(model_gen)], [as_exact(gen)]
    queue = deque(pairs)
    while queue:
        mv, tv = queue.popleft()
        for A, MA in zip(acting, model_action):
            nm, nt = as_exact(MA @ mv), as_exact(A @ tv)
            stack = as_exact(np.stack(model_basis, axis=1))
            c = solve(stack, nm)
            if c is None:
                model_basis.append(nm)
                target_basis.append(nt)
                queue.append((nm, nt))
                continue
            if not exact_equal(as_exact(np.stack(target_basis, axis=1) @ c), nt):
                return target_basis, model_basis, False
    return target_basis, model_basis, True


def b01_decompose(g: GradedSuperalgebra, phi: PhiMap, e) -> B01Decomposition:
    """Split g into adjoint and natural osp(1,2)-modules plus invariants.

    ``e`` is a degree-1 element (coordinates on g, or on g_1, or a basis
    index) that must satisfy L(e,e) = id, K(e,e) = 2 id and exe = x.
    """
    ones = g.indices(1)
    e = _as_g1(g, e)
    report = Report(f"{g.label or 'algebra'} B(0,1) decomposition")
    if not b01_left_unit_check(g, phi, e):
        raise HypothesisViolation("e does not satisfy L(e,e) = id and K(e,e) = 2 id")
    U, signs = ground_system(g, phi)
    if signs != MINUS_MINUS:
        raise HypothesisViolation(f"needs a (-1,-1) system, got {signs}")
    e_u = as_exact([e[i] for i in ones])
    from .bridge import rho_mu
    rho, mu = rho_mu(U, e_u)
    if not exact_equal(mu, identity(U.dim)):
        raise HypothesisViolation("unit is not mu-normalized: exe != x")

    model = osp12_model()
    frame = osp12_frame(g, phi, e)
    got = frame_constants(g, frame)
    report.add(CheckResult("h has the osp(1,2) constants",
                           got is not None and exact_equal(got, model.algebra.bracket), 125))
    acting = [g.ad(row) for row in frame]
    adj_model = [model.algebra.ad(basis_vector(5, i)) for i in range(5)]
    nat_model = list(model.module_action())

    P1, Pm = eigenprojections(rho, (1, -1))
    U1, Um = column_basis(P1), column_basis(Pm)

    def embed(u):
        out = zeros(g.dim)
        for i, c in zip(ones, u):
            out[i] = c
        return out

    adjoint, natural = [], []
    for u in U1:
        tb, mb, ok = _generated_module(g, acting, phi(embed(u)), adj_model, basis_vector(5, 1))
        ok = ok and len(mb) == 5 and rank(as_exact(np.stack(tb))) == 5
        report.add(CheckResult(f"adjoint module from {fmt_array(u)}", ok, 5))
        adjoint.append((u, as_exact(np.stack(tb))))
    for u in Um:
        k_ex = K_op(U, e_u, u, -1)
        report.add(CheckResult(f"K(e,x) = 0 for x = {fmt_array(u)}", is_zero(k_ex), 1))
        tb, mb, ok = _generated_module(g, acting, phi(embed(u)), nat_model, basis_vector(3, 2))
        ok = ok and len(mb) == 3 and rank(as_exact(np.stack(tb))) == 3
        report.add(CheckResult(f"natural module from {fmt_array(u)}", ok, 3))
        natural.append((u, as_exact(np.stack(tb))))

    # invariants of h: common kernel of ad(h)
    stacked = as_exact(np.concatenate(acting, axis=0)) if g.dim else zeros((0, 0))
    trivial = nullspace(stacked)
    report.add(CheckResult("trivial part even", all(
        all(v[i] == 0 for i in range(g.dim) if g.parities[i]) for v in trivial), len(trivial)))
    if g.model is not None:
        report.add(_trivial_cross_check(g, U, e_u, trivial))

    total = 5 * len(adjoint) + 3 * len(natural) + len(trivial)
    report.add(CheckResult("dim g = 5 dim U1 + 3 dim U-1 + dim trivial", total == g.dim, 1,
                           witness=None if total == g.dim else (total, g.dim)))
    pieces = [m for _, m in adjoint] + [m for _, m in natural]
    if trivial:
        pieces.append(as_exact(np.stack(trivial)))
    span = rank(as_exact(np.concatenate(pieces, axis=0))) if pieces else 0
    report.add(CheckResult("modules span g directly", span == g.dim == total, 1))
    return B01Decomposition(frame, adjoint, natural, trivial, report)


def _trivial_cross_check(g, U, e_u, trivial) -> CheckResult:
    """{diag(phi, -phi) : phi in L(U,U), phi(e) = 0} equals the invariants."""
    from .triple import l_span
    n = U.dim
    span = l_span(U)
    if span.dim == 0:
        return CheckResult("trivial part = {diag(phi,-phi) : phi(e) = 0}", not trivial, 1)
    at_e = as_exact(np.stack([as_exact(B @ e_u) for B in span.basis], axis=1))
    kernel = nullspace(at_e)
    elems = []
    for c in kernel:
        ph = span.element(c)
        M = zeros((2 * n, 2 * n))
        M[:n, :n] = ph
        M[n:, n:] = -ph
        v = from_ambient(g, M, zeros(2 * n))
        if v is None:
            return CheckResult("trivial part = {diag(phi,-phi) : phi(e) = 0}", False, 1,
                               note="element outside g")
        elems.append(v)
    ok = len(elems) == len(trivial)
    if ok and elems:
        ok = rank(as_exact(np.stack(elems + list(trivial)))) == len(trivial)
    return CheckResult("trivial part = {diag(phi,-phi) : phi(e) = 0}", ok, max(len(elems), 1))


def _as_g1(g: GradedSuperalgebra, e) -> np.ndarray:
    ones = g.indices(1)
    if isinstance(e, (int, np.integer)):
        if e not in ones:
            raise HypothesisViolation(f"basis element {e} is not in degree 1")
        return g.basis(int(e))
    e = as_exact(e)
    if e.shape == (len(ones),) and len(ones) != g.dim:
        out = zeros(g.dim)
        for i, c in zip(ones, e):
            out[i] = c
        return out
    if e.shape != (g.dim,):
        raise DimensionMismatch(f"element of shape {e.shape} for a {g.dim}-dimensional algebra")
    if any(e[i] != 0 for i in range(g.dim) if i not in ones):
        raise HypothesisViolation("e is not in the degree-1 component")
    return e


def b01_left_unit_check(g: GradedSuperalgebra, phi: PhiMap, e) -> bool:
    """L(e,e) = id and K(e,e) = 2 id on g_1, both computed through brackets:
    L(e,e)x = [[e,Phi(e)],x] and K(e,e)x = delta [[e,e],Phi(x)]."""
    e = _as_g1(g, e)
    ones = g.indices(1)
    if not ones:
        return False
    delta = -1 if g.parities[ones[0]] else 1
    h = g.br(e, phi(e))
    ad_h = g.ad(h)[np.ix_(ones, ones)]
    ad_ee = g.ad(g.br(e, e))
    k = as_exact(delta * (ad_ee @ phi.matrix))[np.ix_(ones, ones)]
    I = identity(len(ones))
    return exact_equal(as_exact(ad_h), I) and exact_equal(k, as_exact(2 * I))


# -- twisting isomorphism ----------------------------------------------------

def twist_isomorphism_report(T: TripleSystem, S, signs) -> Report:
    """(a; b) -> (a; S b) induces an isomorphism g(T) -> g(T twisted by S)."""
    from .bridge import twist, twisted_signs
    signs = SignPair.of(*signs)
    S = as_exact(S)
    T2 = twist(T, S, signs)
    signs2 = twisted_signs(S, signs)
    g1, g2 = build_gU(T, signs), build_gU(T2, signs2)
    n = T.dim
    Q = zeros((2 * n, 2 * n))
    Q[:n, :n] = identity(n)
    Q[n:, n:] = S
    from .exact import operator_inverse
    Q_inv = operator_inverse(Q)
    report = Report(f"{T.label or 'triple system'} twist isomorphism")
    images = []
    for i in range(g1.dim):
        M, v = ambient(g1, g1.basis(i))
        img = from_ambient(g2, as_exact(Q @ M @ Q_inv), as_exact(Q @ v))
        if img is None:
            report.add(CheckResult("induced map lands in g(twist)", False, 1, witness=(i,)))
            return report
        images.append(img)
    report.add(CheckResult("induced map lands in g(twist)", True, g1.dim))
    Psi = _matrix_on_basis(g1, images)
    report.add(CheckResult("dimensions agree", g1.dims_by_degree() == g2.dims_by_degree(), 1))
    report.add(CheckResult("bijective", Psi.shape[0] == Psi.shape[1] and rank(Psi) == g1.dim, 1))
    bad = next(((i, j) for i in range(g1.dim) for j in range(g2.dim)
                if Psi[j, i] != 0 and g2.degrees[j] != g1.degrees[i]), None)
    report.add(CheckResult("degree preserving", bad is None, g1.dim, witness=bad))
    Ps = to_scaled(Psi)
    lhs = contract_int("ijk,mk->ijm", g1.scaled, Ps)
    rhs = contract_int("ai,bj,abm->ijm", Ps, Ps, g2.scaled)
    report.add(sweep_result("Psi[x,y] = [Psi x, Psi y]", lhs, rhs, 2))
    return report
