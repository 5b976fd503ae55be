"""Left-unital triple systems and their structurable algebras.

Given a left unit ``e`` (so ``eex = x``) of a triple system, the maps
``rho: x -> xee`` and ``mu: x -> exe`` control everything here:

* for a Kantor system ``(rho - 1)(rho - 3) = 0`` and
  ``sigma = mu^{-1} (3 - 2 rho)`` is an involutive automorphism; twisting by
  it yields a system coming from a structurable algebra, which
  :func:`structurable_of_left_unital` reconstructs explicitly;
* for a (-1,-1) Freudenthal-Kantor system ``rho^2 = mu^2 = 1`` and twisting
  by ``mu`` normalizes the unit to ``exe = x`` (:func:`mu_normalize`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    ConstructionError, HypothesisViolation, NotInvertible, as_exact, column_basis,
    combine, contract, contract_int, eigenprojections, exact_equal,
    fmt_array, identity, operator_inverse, rank, to_scaled, zeros,
)
from .report import CheckResult, Report, sweep_result
from .structurable import (
    InvalidAlgebra, InvolutiveAlgebra, algebra_automorphism_report,
    check_structurable, kts_from_structurable, twisted_kts,
)
from .triple import (
    KANTOR, MINUS_MINUS, SignPair, TripleSystem, automorphism_result,
    check_fkts, check_unitary, is_left_unit, k_span, special_result,
    triple_product,
)


@dataclass(frozen=True)
class BridgeMaps:
    """rho, mu, rho_hat = 3 - 2 rho and sigma attached to a left unit.

    ``sigma`` is ``mu^{-1} rho_hat`` for Kantor systems and ``mu`` itself
    for (-1,-1) systems.
    """

    rho: np.ndarray
    mu: np.ndarray
    rho_hat: np.ndarray
    sigma: np.ndarray
    unit: np.ndarray
    signs: SignPair

    @property
    def roots(self) -> tuple[int, int]:
        return (1, 3) if self.signs == KANTOR else (1, -1)


@dataclass(frozen=True)
class EigenProfile:
    """Eigen-decomposition of rho into U_a (+) U_b, a = 1."""

    projections: tuple
    roots: tuple
    bases: tuple

    def component(self, which: int) -> list[np.ndarray]:
        return self.bases[self.roots.index(which)]

    @property
    def dims(self) -> tuple[int, int]:
        return tuple(len(b) for b in self.bases)


def rho_mu(T: TripleSystem, e) -> tuple[np.ndarray, np.ndarray]:
    e = as_exact(e)
    rho = contract("kabl,a,b->lk", T.scaled, e, e)
    mu = contract("a,akbl,b->lk", e, T.scaled, e)
    return rho, mu


def _require_left_unit(T: TripleSystem, e):
    if not is_left_unit(T, e):
        raise HypothesisViolation(f"{fmt_array(as_exact(e))} is not a left unit: L(e,e) != id")


def bridge_maps(T: TripleSystem, e, signs=KANTOR) -> BridgeMaps:
    signs = SignPair.of(*signs)
    if signs not in (KANTOR, MINUS_MINUS):
        raise HypothesisViolation(f"only (-1,+1) and (-1,-1) systems admit left units, got {signs}")
    _require_left_unit(T, e)
    e = as_exact(e)
    n = T.dim
    I = identity(n)
    rho, mu = rho_mu(T, e)
    rho_hat = as_exact(3 * I - 2 * rho)
    try:
        mu_inv = operator_inverse(mu)
    except NotInvertible:
        raise HypothesisViolation(
            "mu: x -> exe is singular, which cannot happen for a left-unital "
            f"{signs} Freudenthal-Kantor triple system") from None
    if signs == KANTOR:
        sigma = as_exact(mu_inv @ rho_hat)
        required = {
            "(rho-1)(rho-3) = 0": ((rho - I) @ (rho - 3 * I), zeros((n, n))),
            "rho mu = mu rho": (rho @ mu, mu @ rho),
            "rho^2 = mu^2": (rho @ rho, mu @ mu),
            "sigma^2 = id": (sigma @ sigma, I),
        }
    else:
        sigma = mu
        required = {
            "rho^2 = id": (rho @ rho, I),
            "mu^2 = id": (mu @ mu, I),
            "rho mu = mu rho": (rho @ mu, mu @ rho),
        }
    for name, (lhs, rhs) in required.items():
        if not exact_equal(as_exact(lhs), as_exact(rhs)):
            raise HypothesisViolation(f"{name} fails: the input is not a left-unital {signs} system")
    return BridgeMaps(rho, mu, rho_hat, sigma, e, signs)


def eigen_profile(maps: BridgeMaps) -> EigenProfile:
    P_a, P_b = eigenprojections(maps.rho, maps.roots)
    return EigenProfile((P_a, P_b), maps.roots, (column_basis(P_a), column_basis(P_b)))


def _mat(name, lhs, rhs) -> CheckResult:
    return sweep_result(name, to_scaled(as_exact(lhs).T), to_scaled(as_exact(rhs).T), 1)


def _lemma_common(T: TripleSystem, e, report: Report, rho, mu):
    """L(xye,e) = L(e,yxe) and its two specialisations, plus rho/mu commuting."""
    t = T.scaled
    E = to_scaled(e)
    L = T.L_table
    xye = contract_int("xyal,a->xyl", t, E)
    L_we = contract_int("wbpq,b->wpq", L, E)
    L_ew = contract_int("a,awpq->wpq", E, L)
    report.add(sweep_result(
        "L(xye,e) = L(e,yxe)",
        contract_int("xyw,wpq->xypq", xye, L_we),
        contract_int("yxw,wpq->xypq", xye, L_ew), 2))
    R, M = to_scaled(rho), to_scaled(mu)
    report.add(sweep_result(
        "L(rho x,e) = L(e,mu x)",
        contract_int("wx,wpq->xpq", R, L_we), contract_int("wx,wpq->xpq", M, L_ew), 1))
    report.add(sweep_result(
        "L(mu x,e) = L(e,rho x)",
        contract_int("wx,wpq->xpq", M, L_we), contract_int("wx,wpq->xpq", R, L_ew), 1))
    report.add(_mat("rho^2 = mu^2", rho @ rho, mu @ mu))
    report.add(_mat("rho mu = mu rho", rho @ mu, mu @ rho))


def _lemma_K(T: TripleSystem, e, delta, report: Report, rho, shift: int, suffix=""):
    """K(u,e)e = (rho + shift) u and K(u,v) = 1/2 K(K(u,v)e, e)."""
    E = to_scaled(e)
    K = T.K_table(delta)
    Kue_e = contract_int("ublk,b,k->ul", K, E, E)
    target = to_scaled(as_exact(rho + shift * identity(T.dim)).T)
    sign = "+" if shift > 0 else "-"
    report.add(sweep_result(f"K(u,e)e = (rho {sign} id)u{suffix}", Kue_e, target, 1))
    Kuv_e = contract_int("uvlk,k->uvl", K, E)
    K_we = contract_int("wbpq,b->wpq", K, E)
    rhs = contract_int("uvw,wpq->uvpq", Kuv_e, K_we).scale(Fraction(1, 2))
    report.add(sweep_result(f"K(u,v) = 1/2 K(K(u,v)e,e){suffix}", K, rhs, 2))


def lemma_suite_kantor(T: TripleSystem, e) -> Report:
    """Identities satisfied by any left unit of a Kantor triple system.

    Every identity is swept independently, so a left-unital generalized
    Jordan system that is not Kantor shows which ones survive.
    """
    _require_left_unit(T, e)
    e = as_exact(e)
    rho, mu = rho_mu(T, e)
    report = Report(f"{T.label or 'triple system'} left-unit lemmas (Kantor)")
    _lemma_common(T, e, report, rho, mu)
    _lemma_K(T, e, 1, report, rho, -1)
    I = identity(T.dim)
    report.add(_mat("(rho - id)(rho - 3id) = 0", (rho - I) @ (rho - 3 * I), zeros((T.dim, T.dim))))
    return report


def lemma_suite_mm(T: TripleSystem, e) -> Report:
    """Left-unit identities for (-1,-1) Freudenthal-Kantor triple systems."""
    _require_left_unit(T, e)
    e = as_exact(e)
    rho, mu = rho_mu(T, e)
    n = T.dim
    I = identity(n)
    report = Report(f"{T.label or 'triple system'} left-unit lemmas (-1,-1)")
    _lemma_common(T, e, report, rho, mu)
    _lemma_K(T, e, -1, report, rho, 1)
    report.add(_mat("rho^2 = id", rho @ rho, I))
    report.add(_mat("mu^2 = id", mu @ mu, I))
    try:
        _, P_minus = eigenprojections(rho, (1, -1))
    except HypothesisViolation:
        report.add(CheckResult("K(u,e) = 0 on U_-1", False, note="rho is not an involution"))
        return report
    K = T.K_table(-1)
    Ke = contract_int("ubpq,b->upq", K, to_scaled(e))
    on_minus = contract_int("uw,upq->wpq", to_scaled(P_minus), Ke)
    report.add(sweep_result("K(u,e) = 0 on U_-1", on_minus, to_scaled(zeros(on_minus.shape)), 1))
    return report


# -- the star product --------------------------------------------------------

def star_tensor(T: TripleSystem, maps: BridgeMaps) -> np.ndarray:
    """``s[x, y]`` = e_x * e_y = e mu^{-1}(e_x) e_y."""
    mu_inv = operator_inverse(maps.mu)
    return contract("a,bx,abyl->xyl", maps.unit, mu_inv, T.scaled)


def star(s: np.ndarray, x, y) -> np.ndarray:
    return contract("x,y,xyl->l", as_exact(x), as_exact(y), s)


def _lambda(maps: BridgeMaps, x_root: int, y_root: int) -> np.ndarray:
    n = maps.rho.shape[0]
    if x_root == 1:
        return identity(n)
    if y_root == 1:
        return as_exact(-maps.rho_hat)
    return as_exact(maps.rho_hat / 3)


def star_suite(T: TripleSystem, e) -> Report:
    """Unit, rewriting rules, Lambda table and rho-on-products table for *."""
    maps = bridge_maps(T, e, KANTOR)
    prof = eigen_profile(maps)
    s = star_tensor(T, maps)
    S = to_scaled(s)
    t = T.scaled
    E = to_scaled(maps.unit)
    n = T.dim
    ident = to_scaled(identity(n))
    report = Report(f"{T.label or 'triple system'} star product")

    report.add(sweep_result("(i) e*x = x", contract_int("a,ayl->yl", E, S), ident, 1))
    report.add(sweep_result("(i) x*e = x", contract_int("xbl,b->xl", S, E), ident, 1))

    R, M = to_scaled(maps.rho), to_scaled(maps.mu)
    report.add(sweep_result(
        "(ii) exy = mu(x)*y",
        contract_int("a,axyl->xyl", E, t), contract_int("wx,wyl->xyl", M, S), 2))
    report.add(sweep_result(
        "(ii) xey = rho(x)*y",
        contract_int("a,xayl->xyl", E, t), contract_int("wx,wyl->xyl", R, S), 2))

    mu_star = contract_int("wy,wml->yml", M, S)                       # mu(y) * (.)
    term1 = contract_int("yzm,xml->xyzl", mu_star, S)
    term2 = contract_int("xzm,yml->xyzl", S, mu_star)
    N = to_scaled(maps.mu @ operator_inverse(maps.rho))
    inner = contract_int("wx,wym->xym", N, S)
    outer = contract_int("pm,xym->xyp", M, inner)
    term3 = contract_int("xyp,pzl->xyzl", outer, S)
    report.add(sweep_result(
        "(iii) xyz = x*(mu(y)*z) - mu(y)*(x*z) + mu(mu rho^-1(x)*y)*z",
        t, combine((1, term1), (-1, term2), (1, term3)), 3))

    report.add(_pairwise(
        "(iv) xye = Lambda_{x,y}(eyx)", T, maps, prof,
        lambda x, y, a, b: (triple_product(T, x, y, maps.unit),
                            _lambda(maps, a, b) @ triple_product(T, maps.unit, y, x))))

    def rho_table(x, y, a, b):
        xy, yx = star(s, x, y), star(s, y, x)
        lhs = maps.rho @ xy
        if a == b:
            return lhs, 2 * xy - yx
        if a == 1:
            return lhs, 3 * yx
        return lhs, 4 * xy - yx

    report.add(_pairwise("(v) rho(x*y) case table", T, maps, prof, rho_table))
    return report


def _pairwise(name, T, maps, prof, fn) -> CheckResult:
    """Run ``fn`` over all pairs of eigenvectors, in component order."""
    cases = 0
    for a, xs in zip(prof.roots, prof.bases):
        for b, ys in zip(prof.roots, prof.bases):
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    cases += 1
                    lhs, rhs = fn(x, y, a, b)
                    if not exact_equal(as_exact(lhs), as_exact(rhs)):
                        return CheckResult(name, False, cases,
                                           witness=(f"U{a}[{i}]", f"U{b}[{j}]"),
                                           lhs=fmt_array(lhs), rhs=fmt_array(rhs))
    return CheckResult(name, True, cases)


def sigma_report(T: TripleSystem, e) -> Report:
    maps = bridge_maps(T, e, KANTOR)
    report = Report(f"{T.label or 'triple system'} sigma = mu^-1(3 - 2 rho)")
    report.add(_mat("sigma^2 = id", maps.sigma @ maps.sigma, identity(T.dim)))
    report.add(automorphism_result(T, maps.sigma, "sigma automorphism"))
    return report


def sigma_check(T: TripleSystem, e) -> bool:
    return sigma_report(T, e).passed


# -- twisting ------------------------------------------------------------------

def twist_tensor(T: TripleSystem, S) -> np.ndarray:
    """{xyz} = x S(y) z."""
    return contract("mb,amcl->abcl", as_exact(S), T.scaled)


def _square_sign(S, scalar) -> int | None:
    n = S.shape[0]
    sq = as_exact(S @ S)
    for sgn in (1, -1):
        if exact_equal(sq, as_exact(sgn * scalar * identity(n))):
            return sgn
    return None


def twisted_signs(S, signs, square_scalar=None) -> SignPair:
    eps, delta = SignPair.of(*signs)
    sgn = _square_sign(as_exact(S), Fraction(square_scalar) if square_scalar is not None else 1)
    if sgn is None:
        raise HypothesisViolation("S^2 is not +-(scalar) id")
    return SignPair(sgn * eps, delta)


def twist(T: TripleSystem, S, signs, square_scalar=None, verify: bool = False) -> TripleSystem:
    """The twisted product {xyz} = x S(y) z.

    Without ``square_scalar`` S must be an automorphism with S^2 = +-id; the
    result is then an (+-eps, delta) system.  With ``square_scalar`` m the
    hypotheses become S^2 = +-m id and S(x)S(y)S(z) = m S(xyz), which must
    hold exactly over the rationals.
    """
    S = as_exact(S)
    if S.shape != (T.dim, T.dim):
        raise HypothesisViolation(f"map of shape {S.shape} on a {T.dim}-dimensional system")
    if rank(S) < T.dim:
        raise NotInvertible("twisting map is singular")
    if square_scalar is None:
        auto = automorphism_result(T, S)
        if not auto.passed:
            raise HypothesisViolation(f"S is not an automorphism: witness {auto.witness}")
    else:
        m = Fraction(square_scalar)
        if m == 0:
            raise HypothesisViolation("square scalar must be nonzero")
        lhs = contract_int("ai,bj,ck,abcm->ijkm", S, S, S, T.scaled)
        rhs = contract_int("ijkl,ml->ijkm", T.scaled, S).scale(m)
        scaled = sweep_result("S(x)S(y)S(z) = m S(xyz)", lhs, rhs, 3)
        if not scaled.passed:
            raise HypothesisViolation(f"S(x)S(y)S(z) != m S(xyz) at {scaled.witness}")
    new_signs = twisted_signs(S, signs, square_scalar)
    out = TripleSystem(twist_tensor(T, S), f"{T.label}-twisted" if T.label else "twisted")
    if verify:
        before = check_fkts(T, signs)
        after = check_fkts(out, new_signs)
        if before.passed and not after.passed:
            raise ConstructionError(f"twist broke the axioms:\n{after.render()}")
    return out


def double_M21(T: TripleSystem, signs) -> TripleSystem:
    """U (+) U with componentwise product, twisted by (x, y) -> (y, -x).

    The result is an (-eps, delta) system when T is an (eps, delta) one.
    """
    signs = SignPair.of(*signs)
    rep = check_fkts(T, signs)
    if not rep.passed:
        raise HypothesisViolation(f"input fails its own axioms:\n{rep.render()}")
    n = T.dim
    t = zeros((2 * n,) * 4)
    t[:n, :n, :n, :n] = T.tensor
    t[n:, n:, n:, n:] = T.tensor
    doubled = TripleSystem(t, f"{T.label}-M21" if T.label else "M21")
    I = identity(n)
    sigma = zeros((2 * n, 2 * n))
    sigma[:n, n:] = I
    sigma[n:, :n] = -I
    out = twist(doubled, as_exact(sigma), signs)
    out = out.with_label(doubled.label)
    flipped = SignPair(-signs.epsilon, signs.delta)
    post = check_fkts(out, flipped)
    if not post.passed:
        raise ConstructionError(f"double fails {flipped}:\n{post.render()}")
    return out


def sigma_in_K_check(T: TripleSystem, S, signs, square_scalar=None) -> Report:
    """Certify that S in span K(U,U) with S^2 = eps*delta id (or m id) is an
    automorphism (resp. the scaled relation) and that twisting by S gives a
    (delta, delta) system."""
    eps, delta = SignPair.of(*signs)
    S = as_exact(S)
    n = T.dim
    report = Report(f"{T.label or 'triple system'} sigma in K(U,U)")
    if not k_span(T, delta).contains(S):
        raise HypothesisViolation("sigma does not lie in the span of the K-operators")
    report.add(CheckResult("sigma in K(U,U)", True, 1))
    target = eps * delta if square_scalar is None else Fraction(square_scalar)
    if target == 0:
        raise HypothesisViolation("square scalar must be nonzero")
    if not exact_equal(as_exact(S @ S), as_exact(target * identity(n))):
        raise HypothesisViolation(f"sigma^2 != {target} id")
    report.add(CheckResult(f"sigma^2 = {target} id", True, 1))

    t = T.scaled
    Ss = to_scaled(S)
    lhs = contract_int("xyzl,ml->xyzm", t, Ss)
    rhs = combine(
        (-eps, contract_int("ax,azym->xyzm", Ss, t)),
        (eps, contract_int("cz,yxcm->xyzm", Ss, t)),
        (eps * delta, contract_int("ax,yzam->xyzm", Ss, t)),
    )
    report.add(sweep_result(
        "sigma(xyz) = -eps sigma(x)zy + eps yx sigma(z) + eps delta yz sigma(x)", lhs, rhs, 3))

    sss = contract_int("ai,bj,ck,abcm->ijkm", Ss, Ss, Ss, t)
    if square_scalar is None:
        report.add(sweep_result("sigma automorphism", lhs, sss, 3))
    else:
        report.add(sweep_result(
            "sigma(xyz) = eps delta m^-1 sigma(x)sigma(y)sigma(z)",
            lhs, sss.scale(Fraction(eps * delta) / target), 3))
    twisted = TripleSystem(twist_tensor(T, S))
    fk = check_fkts(twisted, (delta, delta))
    for c in fk.checks:
        c.name = f"twist {c.name} ({delta:+d},{delta:+d})"
    report.extend(fk)
    return report


def skew_twist_11(A: InvolutiveAlgebra, f) -> TripleSystem:
    """{xyz}~ = V_{x, f.y}(z) for a skew f with f.f = m 1, m != 0.

    Produces a (1,1) Freudenthal-Kantor triple system.
    """
    f = as_exact(f)
    n = A.dim
    if not exact_equal(A.bar(f), as_exact(-f)):
        raise HypothesisViolation("f is not skew: fbar != -f")
    ff = A.multiply(f, f)
    unit_pos = next(i for i in range(n) if A.unit[i] != 0)
    m = ff[unit_pos] / A.unit[unit_pos]
    if m == 0 or not exact_equal(ff, as_exact(m * A.unit)):
        raise HypothesisViolation("f.f is not a nonzero multiple of the unit")
    rep = check_structurable(A)
    if not rep.passed:
        raise HypothesisViolation(f"{A.label} is not structurable")
    T = kts_from_structurable(A)
    Lf = A.left_mult(f)
    from .triple import K_op
    if not exact_equal(K_op(T, f, A.unit, 1), as_exact(2 * Lf)):
        raise ConstructionError("K(f,1) != 2 L_f")
    if not exact_equal(as_exact(Lf @ Lf), as_exact(m * identity(n))):
        raise ConstructionError("f.(f.x) != m x")
    cert = sigma_in_K_check(T, Lf, KANTOR, square_scalar=m)
    if not cert.passed:
        raise ConstructionError(f"skew twist fails:\n{cert.render()}")
    return TripleSystem(twist_tensor(T, Lf), f"{A.label}-skew-twist-11")


# -- reconstruction ----------------------------------------------------------

def structurable_of_left_unital(T: TripleSystem, e) -> tuple[InvolutiveAlgebra, np.ndarray]:
    """Structurable algebra with involutive automorphism recovering T.

    xbar = 2x - xee,  x.y = xbar e y - xbar sigma(ybar) e + y e x,
    and T is recovered as xyz = V_{x, sigma(y)}(z).
    """
    _require_left_unit(T, e)
    fk = check_fkts(T, KANTOR)
    if not fk.passed:
        raise HypothesisViolation(f"not a Kantor triple system:\n{fk.render()}")
    maps = bridge_maps(T, e, KANTOR)
    e = maps.unit
    n = T.dim
    inv = as_exact(2 * identity(n) - maps.rho)
    t = T.scaled
    c = combine(
        (1, contract_int("ai,b,abjl->ijl", inv, e, t)),
        (-1, contract_int("ai,mj,c,amcl->ijl", inv, maps.sigma @ inv, e, t)),
        (1, contract_int("b,jbil->ijl", e, t)),
    ).to_fractions()
    label = f"{T.label}-algebra" if T.label else "algebra"
    try:
        A = InvolutiveAlgebra(c, inv, e, label)
    except InvalidAlgebra as exc:
        raise ConstructionError(f"reconstructed algebra is invalid: {exc}") from None
    rep = check_structurable(A)
    rep.extend(algebra_automorphism_report(A, maps.sigma))
    if not rep.passed:
        raise ConstructionError(f"reconstruction fails:\n{rep.render()}")
    back = twisted_kts(A, maps.sigma)
    roundtrip = sweep_result("xyz = V_{x,sigma(y)}(z)", back.scaled, T.scaled, 3)
    if not roundtrip.passed:
        raise ConstructionError(f"triple product not recovered: {roundtrip.line()}")
    return A, maps.sigma


def mu_normalize(T: TripleSystem, e) -> TripleSystem:
    """Twist a left-unital (-1,-1) system by mu so that exe = x."""
    fk = check_fkts(T, MINUS_MINUS)
    if not fk.passed:
        raise HypothesisViolation(f"not a (-1,-1) Freudenthal-Kantor triple system:\n{fk.render()}")
    maps = bridge_maps(T, e, MINUS_MINUS)
    out = twist(T, maps.mu, MINUS_MINUS)
    out = out.with_label(f"{T.label}-normalized" if T.label else "normalized")
    n = T.dim
    e = maps.unit
    I = identity(n)
    problems = []
    if not is_left_unit(out, e):
        problems.append("e is not a left unit")
    _, mu_new = rho_mu(out, e)
    if not exact_equal(mu_new, I):
        problems.append("exe != x")
    from .triple import K_op
    if not exact_equal(K_op(out, e, e, -1), as_exact(2 * I)):
        problems.append("K(e,e) != 2 id")
    if not check_unitary(out, MINUS_MINUS):
        problems.append("not unitary")
    if not special_result(out, MINUS_MINUS).passed:
        problems.append("not special")
    if problems:
        raise ConstructionError("mu-normalization failed: " + "; ".join(problems))
    return out
