"""Unital algebras with involution and their Kantor triple systems."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exact import (
    ConstructionError, DimensionMismatch, HypothesisViolation, Scaled,
    as_exact, column_basis, combine, contract, contract_int, eigenprojections,
    exact_equal, identity, to_scaled,
)
from .report import CheckResult, Report, sweep_result
from .triple import KANTOR, TripleSystem, check_fkts, check_gjts, is_left_unit


class InvalidAlgebra(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InvolutiveAlgebra:
    """``e_i . e_j = sum_k product[i, j, k] e_k`` with an involution and unit.

    The involution must be a period-2 anti-automorphism fixing the unit;
    this is checked on construction.
    """

    product: np.ndarray
    involution: np.ndarray
    unit: np.ndarray
    label: str = ""

    def __post_init__(self):
        c = as_exact(self.product)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"product tensor must have shape (n,n,n), got {c.shape}")
        n = c.shape[0]
        inv = as_exact(self.involution)
        unit = as_exact(self.unit)
        if inv.shape != (n, n) or unit.shape != (n,):
            raise DimensionMismatch("involution or unit has the wrong shape")
        object.__setattr__(self, "product", c)
        object.__setattr__(self, "involution", inv)
        object.__setattr__(self, "unit", unit)
        I = identity(n)
        if not exact_equal(contract("i,ijk->kj", unit, c), I):
            raise InvalidAlgebra(f"{self.label}: unit is not a left unit")
        if not exact_equal(contract("j,ijk->ki", unit, c), I):
            raise InvalidAlgebra(f"{self.label}: unit is not a right unit")
        if not exact_equal(inv @ inv, I):
            raise InvalidAlgebra(f"{self.label}: involution does not square to id")
        if not exact_equal(inv @ unit, unit):
            raise InvalidAlgebra(f"{self.label}: involution moves the unit")
        lhs = contract_int("ijk,mk->ijm", c, inv)
        rhs = contract_int("aj,bi,abm->ijm", inv, inv, c)
        anti = sweep_result("anti-homomorphism", lhs, rhs, 2)
        if not anti.passed:
            raise InvalidAlgebra(f"{self.label}: involution is not an anti-homomorphism at {anti.witness}")

    @property
    def dim(self) -> int:
        return self.product.shape[0]

    def multiply(self, x, y) -> np.ndarray:
        return contract("i,j,ijk->k", as_exact(x), as_exact(y), self.product)

    def bar(self, x) -> np.ndarray:
        return as_exact(self.involution @ as_exact(x))

    def left_mult(self, x) -> np.ndarray:
        """Matrix of z -> x . z."""
        return contract("i,ijk->kj", as_exact(x), self.product)

    @cached_property
    def V_table(self) -> Scaled:
        """``V_table[a, b]`` is the matrix of V_{e_a, e_b}."""
        c, B = self.product, self.involution
        return combine(
            (1, contract_int("jb,ajm,mzl->ablz", B, c, c)),
            (1, contract_int("jb,zjm,mal->ablz", B, c, c)),
            (-1, contract_int("ja,zjm,mbl->ablz", B, c, c)),
        )

    def same_as(self, other: "InvolutiveAlgebra") -> bool:
        return (exact_equal(self.product, other.product)
                and exact_equal(self.involution, other.involution)
                and exact_equal(self.unit, other.unit))

    def __repr__(self):
        return f"InvolutiveAlgebra(dim={self.dim}, label={self.label!r})"


def associator(A: InvolutiveAlgebra, x, y, z) -> np.ndarray:
    return A.multiply(A.multiply(x, y), z) - A.multiply(x, A.multiply(y, z))


def V_op(A: InvolutiveAlgebra, x, y) -> np.ndarray:
    """V_{x,y}(z) = (x.ybar).z + (z.ybar).x - (z.xbar).y as a matrix."""
    x, y = as_exact(x), as_exact(y)
    if x.shape != (A.dim,) or y.shape != (A.dim,):
        raise DimensionMismatch("vector dimension does not match the algebra")
    return contract("a,b,ablz->lz", x, y, A.V_table.to_fractions())


def _associator_tensor(A: InvolutiveAlgebra) -> Scaled:
    c = A.product
    return combine(
        (1, contract_int("ijm,mkl->ijkl", c, c)),
        (-1, contract_int("jkm,iml->ijkl", c, c)),
    )


def check_structurable(A: InvolutiveAlgebra) -> Report:
    """(x - xbar, y, z) = (y, xbar - x, z) on basis triples, and the
    V-operator commutator identity on basis quadruples."""
    n = A.dim
    D = as_exact(identity(n) - A.involution)
    assoc = _associator_tensor(A)
    lhs = contract_int("ix,iyzl->xyzl", D, assoc)
    rhs = contract_int("jx,yjzl->xyzl", D, assoc).scale(-1)
    report = Report(A.label or "algebra", [sweep_result("str1", lhs, rhs, 3)])
    V = _kts_tensor(A)
    gjts = check_gjts(TripleSystem(V))
    res = gjts.checks[0]
    res.name = "str2"
    report.add(res)
    return report


def _kts_tensor(A: InvolutiveAlgebra) -> np.ndarray:
    V = A.V_table
    return Scaled(V.ints.transpose(0, 1, 3, 2), V.den).to_fractions()


def unit_conditions(T: TripleSystem, e) -> Report:
    """{eex} = x and 2{xee} + {exe} = 3x for every basis x."""
    e = as_exact(e)
    n = T.dim
    t = T.scaled
    L_ee = contract_int("a,b,abkl->kl", e, e, t)
    xee = contract_int("kal,a->kl", contract_int("kabl,b->kal", t, e), e)
    exe = contract_int("a,akbl,b->kl", e, t, e)
    ident = to_scaled(identity(n))
    report = Report(T.label or "triple system")
    report.add(sweep_result("eex = x", L_ee, ident, 1))
    report.add(sweep_result("2xee + exe = 3x", combine((2, xee), (1, exe)), ident.scale(3), 1))
    return report


def kts_from_structurable(A: InvolutiveAlgebra, verify: bool = True) -> TripleSystem:
    """The Kantor triple system {xyz} = V_{x,y}(z)."""
    if verify:
        rep = check_structurable(A)
        if not rep.passed:
            raise HypothesisViolation(f"{A.label} is not structurable:\n{rep.render()}")
    T = TripleSystem(_kts_tensor(A), f"{A.label}-kts" if A.label else "kts")
    if verify:
        post = check_fkts(T, KANTOR)
        post.extend(unit_conditions(T, A.unit))
        if not post.passed:
            raise ConstructionError(f"derived system fails its post-checks:\n{post.render()}")
    return T


def algebra_automorphism_report(A: InvolutiveAlgebra, S, involutive: bool = True) -> Report:
    S = as_exact(S)
    n = A.dim
    if S.shape != (n, n):
        raise DimensionMismatch(f"map of shape {S.shape} on a {n}-dimensional algebra")
    c = A.product
    report = Report(f"{A.label} automorphism")
    lhs = contract_int("ijk,mk->ijm", c, S)
    rhs = contract_int("ai,bj,abm->ijm", S, S, c)
    report.add(sweep_result("S(xy) = S(x)S(y)", lhs, rhs, 2))
    report.add(_matrix_check("S bar = bar S", S @ A.involution, A.involution @ S))
    report.add(_matrix_check("S(1) = 1", (S @ A.unit).reshape(1, n), A.unit.reshape(1, n)))
    if involutive:
        report.add(_matrix_check("S^2 = id", S @ S, identity(n)))
    return report


def _matrix_check(name, lhs, rhs) -> CheckResult:
    return sweep_result(name, to_scaled(as_exact(lhs)), to_scaled(as_exact(rhs)), 1)


def twisted_kts(A: InvolutiveAlgebra, S, verify: bool = True) -> TripleSystem:
    """xyz = V_{x, S(y)}(z) for an involutive automorphism S of A."""
    S = as_exact(S)
    rep = algebra_automorphism_report(A, S)
    if not rep.passed:
        raise HypothesisViolation(f"not an involutive automorphism of {A.label}:\n{rep.render()}")
    base = kts_from_structurable(A, verify=verify)
    t = contract("mb,amzl->abzl", S, base.tensor)
    T = TripleSystem(t, f"{A.label}-twisted-kts" if A.label else "twisted-kts")
    if verify:
        post = check_fkts(T, KANTOR)
        if not post.passed or not is_left_unit(T, A.unit):
            raise ConstructionError(f"twisted system fails its post-checks:\n{post.render()}")
    return T


def hermitian_skew_split(A: InvolutiveAlgebra) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Bases of the symmetric (xbar = x) and skew (xbar = -x) subspaces."""
    P_sym, P_skew = eigenprojections(A.involution, (1, -1))
    return column_basis(P_sym), column_basis(P_skew)
