"""Built-in algebras, automorphisms and triple systems."""
from __future__ import annotations

from .exact import as_exact, identity, zeros
from .structurable import InvolutiveAlgebra
from .triple import TripleSystem


def unit_field() -> InvolutiveAlgebra:
    c = zeros((1, 1, 1))
    c[0, 0, 0] = 1
    return InvolutiveAlgebra(c, identity(1), [1], "unit-field")


def split_pair(involution: str = "exchange") -> InvolutiveAlgebra:
    """F x F with componentwise product; basis the two idempotents."""
    c = zeros((2, 2, 2))
    c[0, 0, 0] = c[1, 1, 1] = 1
    if involution == "exchange":
        inv = swap2()
    elif involution == "identity":
        inv = identity(2)
    else:
        raise ValueError(f"unknown involution {involution!r}")
    label = "split-pair" if involution == "exchange" else "split-pair-trivial"
    return InvolutiveAlgebra(c, inv, [1, 1], label)


def swap2():
    return as_exact([[0, 1], [1, 0]])


_QUAT = {  # (a, b) -> (sign, c) over the basis 1, i, j, k
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
    (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
}


def quaternions() -> InvolutiveAlgebra:
    c = zeros((4, 4, 4))
    for a in range(4):
        c[0, a, a] = c[a, 0, a] = 1
    for (a, b), (s, k) in _QUAT.items():
        c[a, b, k] = s
    conj = as_exact([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    return InvolutiveAlgebra(c, conj, [1, 0, 0, 0], "quat")


def quat_conjugation_by_i():
    """x -> i x i^{-1}: fixes 1, i and negates j, k."""
    return as_exact([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


def mat2_transpose() -> InvolutiveAlgebra:
    """2x2 matrices on the basis E11, E12, E21, E22 with transposition."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    c = zeros((4, 4, 4))
    for i, (a, b) in enumerate(units):
        for j, (cc, d) in enumerate(units):
            if b == cc:
                c[i, j, units.index((a, d))] = 1
    transpose = as_exact([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    return InvolutiveAlgebra(c, transpose, [1, 0, 0, 1], "mat2-transpose")


def mat2_conjugation_by_diag():
    """X -> D X D^{-1} with D = diag(1, -1)."""
    return as_exact([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])


def algebra_pairs():
    """The (algebra, involutive automorphism) corpus pairs."""
    return [
        (unit_field(), identity(1)),
        (split_pair(), swap2()),
        (quaternions(), quat_conjugation_by_i()),
        (mat2_transpose(), mat2_conjugation_by_diag()),
    ]


def corpus_algebras():
    return [unit_field(), split_pair(), quaternions(), mat2_transpose()]


def scalar_fkts() -> TripleSystem:
    """U = F with xyz the product of scalars, read as a (-1,-1) system."""
    t = zeros((1, 1, 1, 1))
    t[0, 0, 0, 0] = 1
    return TripleSystem(t, "scalar-fkts")


def componentwise(n: int, label: str = "") -> TripleSystem:
    t = zeros((n, n, n, n))
    for i in range(n):
        t[i, i, i, i] = 1
    return TripleSystem(t, label or f"componentwise-F{n}")


def swap_fkts() -> TripleSystem:
    """Componentwise F^2 twisted by the coordinate swap: {xyz} = x swap(y) z."""
    t = zeros((2, 2, 2, 2))
    t[0, 1, 0, 0] = 1
    t[1, 0, 1, 1] = 1
    return TripleSystem(t, "swap-fkts")


def bilinear_form_system(gram, label: str = "bilinear-form") -> TripleSystem:
    """xyz = (x|y) z for a symmetric bilinear form with the given Gram matrix."""
    G = as_exact(gram)
    n = G.shape[0]
    t = zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                t[i, j, k, k] = G[i, j]
    return TripleSystem(t, label)
