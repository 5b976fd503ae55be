"""Triple systems given by structure constants and their axiom sweeps.

A triple system on ``F^n`` is a rank-4 tensor ``t`` with
``e_i e_j e_k = sum_l t[i, j, k, l] e_l``.  Identities quantified over all
vectors are checked on basis tuples only, which is equivalent by
multilinearity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .exact import (
    DimensionMismatch, HypothesisViolation, NotInvertible, Scaled, as_exact,
    combine, contract, contract_int, exact_equal, identity, is_zero, rank,
    span_basis, to_scaled, OperatorSpan,
)
from .report import CheckResult, Report, sweep_result


class SignPair(NamedTuple):
    epsilon: int
    delta: int

    @classmethod
    def of(cls, epsilon, delta) -> "SignPair":
        e, d = Fraction(epsilon), Fraction(delta)
        if e not in (1, -1) or d not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got ({epsilon}, {delta})")
        return cls(int(e), int(d))

    @classmethod
    def parse(cls, text: str) -> "SignPair":
        try:
            e, d = text.replace("(", "").replace(")", "").split(",")
            return cls.of(int(e), int(d))
        except ValueError as exc:
            raise ValueError(f"bad sign pair {text!r}: expected 'e,d' with entries +1/-1") from exc

    def __str__(self):
        return f"({self.epsilon:+d},{self.delta:+d})"


KANTOR = SignPair(-1, 1)
MINUS_MINUS = SignPair(-1, -1)
ONE_ONE = SignPair(1, 1)


@dataclass(frozen=True, eq=False)
class TripleSystem:
    tensor: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = as_exact(self.tensor)
        if t.ndim != 4 or len(set(t.shape)) != 1:
            raise DimensionMismatch(f"triple tensor must have shape (n,n,n,n), got {t.shape}")
        object.__setattr__(self, "tensor", t)

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    @cached_property
    def scaled(self) -> Scaled:
        return to_scaled(self.tensor)

    @cached_property
    def L_table(self) -> Scaled:
        """``L_table[a, b]`` is the matrix of L(e_a, e_b)."""
        return Scaled(self.scaled.ints.transpose(0, 1, 3, 2), self.scaled.den)

    def K_table(self, delta) -> Scaled:
        """``K_table(delta)[a, b]`` is the matrix of K(e_a, e_b)."""
        t = self.scaled
        first = Scaled(t.ints.transpose(0, 2, 3, 1), t.den)   # t[a,k,b,l] -> [a,b,l,k]
        second = Scaled(t.ints.transpose(2, 0, 3, 1), t.den)  # t[b,k,a,l] -> [a,b,l,k]
        return combine((1, first), (-Fraction(delta), second))

    def same_tensor(self, other: "TripleSystem") -> bool:
        return exact_equal(self.tensor, other.tensor)

    def with_label(self, label: str) -> "TripleSystem":
        return TripleSystem(self.tensor, label)

    def __repr__(self):
        return f"TripleSystem(dim={self.dim}, label={self.label!r})"


def _vec(T: TripleSystem, x) -> np.ndarray:
    x = as_exact(x)
    if x.shape != (T.dim,):
        raise DimensionMismatch(f"vector of shape {x.shape} for a {T.dim}-dimensional system")
    return x


def triple_product(T: TripleSystem, x, y, z) -> np.ndarray:
    return contract("i,j,k,ijkl->l", _vec(T, x), _vec(T, y), _vec(T, z), T.scaled)


def L_op(T: TripleSystem, x, y) -> np.ndarray:
    return contract("i,j,ijkl->lk", _vec(T, x), _vec(T, y), T.scaled)


def K_op(T: TripleSystem, x, y, delta=1) -> np.ndarray:
    if Fraction(delta) not in (1, -1):
        raise ValueError(f"delta must be +1 or -1, got {delta}")
    x, y = _vec(T, x), _vec(T, y)
    first = contract("i,j,ikjl->lk", x, y, T.scaled)
    second = contract("j,i,jkil->lk", y, x, T.scaled)
    return as_exact(first - Fraction(delta) * second)


def l_span(T: TripleSystem) -> OperatorSpan:
    L = T.L_table.to_fractions()
    n = T.dim
    return span_basis([L[a, b] for a in range(n) for b in range(n)], shape=(n, n))


def k_span(T: TripleSystem, delta) -> OperatorSpan:
    K = T.K_table(delta).to_fractions()
    n = T.dim
    return span_basis([K[a, b] for a in range(n) for b in range(n)], shape=(n, n))


def _commutator(A: Scaled, B: Scaled) -> Scaled:
    return combine(
        (1, contract_int("uvpr,xyrq->uvxypq", A, B)),
        (-1, contract_int("xypr,uvrq->uvxypq", B, A)),
    )


def check_gjts(T: TripleSystem) -> Report:
    """[L(u,v),L(x,y)] = L(L(u,v)x, y) - L(x, L(v,u)y) on all basis quadruples."""
    L = T.L_table
    lhs = _commutator(L, L)
    rhs = combine(
        (1, contract_int("uvwx,wypq->uvxypq", L, L)),
        (-1, contract_int("vuwy,xwpq->uvxypq", L, L)),
    )
    return Report(T.label or "triple system", [sweep_result("GJTS", lhs, rhs, 4)])


def check_kts(T: TripleSystem) -> Report:
    """K(K(u,v)x, y) = K(u,v)L(x,y) + L(y,x)K(u,v), together with GJTS."""
    L, K = T.L_table, T.K_table(1)
    lhs = contract_int("uvwx,wypq->uvxypq", K, K)
    rhs = combine(
        (1, contract_int("uvpr,xyrq->uvxypq", K, L)),
        (1, contract_int("yxpr,uvrq->uvxypq", L, K)),
    )
    report = check_gjts(T)
    report.add(sweep_result("KTS", lhs, rhs, 4))
    return report


def check_fkts(T: TripleSystem, signs) -> Report:
    """Both (eps, delta) Freudenthal-Kantor identities on all basis quadruples.

    FK1: [L(u,v),L(x,y)] = L(uvx, y) + eps L(x, vuy)
    FK2: K(K(u,v)x, y) = L(y,x)K(u,v) - eps K(u,v)L(x,y)
    """
    eps, delta = SignPair.of(*signs)
    L, K = T.L_table, T.K_table(delta)
    fk1_rhs = combine(
        (1, contract_int("uvwx,wypq->uvxypq", L, L)),
        (eps, contract_int("vuwy,xwpq->uvxypq", L, L)),
    )
    fk2_lhs = contract_int("uvwx,wypq->uvxypq", K, K)
    fk2_rhs = combine(
        (1, contract_int("yxpr,uvrq->uvxypq", L, K)),
        (-eps, contract_int("uvpr,xyrq->uvxypq", K, L)),
    )
    subject = f"{T.label or 'triple system'} {SignPair(eps, delta)}"
    return Report(subject, [
        sweep_result("FK1", _commutator(L, L), fk1_rhs, 4),
        sweep_result("FK2", fk2_lhs, fk2_rhs, 4),
    ])


def is_left_unit(T: TripleSystem, e) -> bool:
    return exact_equal(L_op(T, e, e), identity(T.dim))


def automorphism_result(T: TripleSystem, S, name="automorphism") -> CheckResult:
    """S(e_i e_j e_k) = S(e_i) S(e_j) S(e_k) on all basis triples."""
    S = as_exact(S)
    if S.shape != (T.dim, T.dim):
        raise DimensionMismatch(f"map of shape {S.shape} on a {T.dim}-dimensional system")
    if rank(S) < T.dim:
        raise NotInvertible("the map is singular")
    lhs = contract_int("ijkl,ml->ijkm", T.scaled, S)
    rhs = contract_int("ai,bj,ck,abcm->ijkm", S, S, S, T.scaled)
    return sweep_result(name, lhs, rhs, 3)


def is_automorphism(T: TripleSystem, S) -> bool:
    return automorphism_result(T, S).passed


def special_result(T: TripleSystem, signs) -> CheckResult:
    """K(x,y) = eps*delta L(y,x) - eps L(x,y) on all basis pairs."""
    eps, delta = SignPair.of(*signs)
    L = T.L_table
    Lswap = Scaled(L.ints.transpose(1, 0, 2, 3), L.den)
    rhs = combine((eps * delta, Lswap), (-eps, L))
    return sweep_result("special", T.K_table(delta), rhs, 2)


def check_special(T: TripleSystem, signs) -> bool:
    return special_result(T, signs).passed


def check_unitary(T: TripleSystem, signs) -> bool:
    """Whether id lies in the span of the K-operators.

    For an (eps, delta) FKTS unitarity forces eps = delta and specialness;
    that implication is enforced as a cross-check.
    """
    eps, delta = SignPair.of(*signs)
    unitary = k_span(T, delta).contains(identity(T.dim))
    if unitary and (eps != delta or not check_special(T, signs)):
        raise HypothesisViolation(
            f"id lies in K(U,U) but the system is not special with eps = delta; "
            f"it is not an {SignPair(eps, delta)} Freudenthal-Kantor triple system")
    return unitary


def k_symmetry_result(T: TripleSystem, delta) -> CheckResult:
    """K(x,y) = -delta K(y,x) on basis pairs."""
    K = T.K_table(delta)
    Kswap = Scaled(K.ints.transpose(1, 0, 2, 3), K.den)
    return sweep_result("K symmetry", K, Kswap.scale(-Fraction(delta)), 2)


def zero_system(n: int, label: str = "zero") -> TripleSystem:
    from .exact import zeros
    return TripleSystem(zeros((n, n, n, n)), label)


def is_kantor(T: TripleSystem) -> bool:
    return check_fkts(T, KANTOR).passed


__all__ = [
    "SignPair", "KANTOR", "MINUS_MINUS", "ONE_ONE", "TripleSystem",
    "triple_product", "L_op", "K_op", "l_span", "k_span", "check_gjts",
    "check_kts", "check_fkts", "is_left_unit", "is_automorphism",
    "automorphism_result", "check_special", "special_result",
    "check_unitary", "k_symmetry_result", "zero_system", "is_zero",
]
