"""Slow element-wise evaluators used as independent references.

Everything here loops over basis vectors with plain Fractions, so it
shares no code path with the vectorised sweeps in the library.
"""
from fractions import Fraction
from itertools import product


def vec(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def add(*vs):
    return [sum(cs, Fraction(0)) for cs in zip(*vs)]


def scale(c, v):
    return [c * x for x in v]


def tp(t, x, y, z):
    """xyz for t[i,j,k,l] = coefficient of e_l in e_i e_j e_k."""
    n = len(x)
    out = [Fraction(0)] * n
    for i, j, k in product(range(n), repeat=3):
        c = x[i] * y[j] * z[k]
        if c:
            for l in range(n):
                if t[i, j, k, l]:
                    out[l] += c * t[i, j, k, l]
    return out


def K(t, delta, a, b, c):
    return add(tp(t, a, c, b), scale(-delta, tp(t, b, c, a)))


def fk_holds(t, eps, delta):
    """FK1 and FK2 applied to every basis z, as two booleans."""
    n = t.shape[0]
    basis = [vec(n, i) for i in range(n)]
    fk1 = fk2 = True
    for u, v, x, y, z in product(basis, repeat=5):
        # [L(u,v),L(x,y)]z = L(uvx,y)z + eps L(x,vuy)z
        lhs = add(tp(t, u, v, tp(t, x, y, z)), scale(-1, tp(t, x, y, tp(t, u, v, z))))
        rhs = add(tp(t, tp(t, u, v, x), y, z), scale(eps, tp(t, x, tp(t, v, u, y), z)))
        fk1 &= lhs == rhs
        # K(K(u,v)x, y)z = L(y,x)K(u,v)z - eps K(u,v)L(x,y)z
        lhs = K(t, delta, K(t, delta, u, v, x), y, z)
        rhs = add(tp(t, y, x, K(t, delta, u, v, z)),
                  scale(-eps, K(t, delta, u, v, tp(t, x, y, z))))
        fk2 &= lhs == rhs
    return fk1, fk2


def gjts_holds(t):
    n = t.shape[0]
    basis = [vec(n, i) for i in range(n)]
    for u, v, x, y, z in product(basis, repeat=5):
        lhs = tp(t, u, v, tp(t, x, y, z))
        rhs = add(tp(t, tp(t, u, v, x), y, z), scale(-1, tp(t, x, tp(t, v, u, y), z)),
                  tp(t, x, y, tp(t, u, v, z)))
        if lhs != rhs:
            return False
    return True


def mult(c, x, y):
    n = len(x)
    out = [Fraction(0)] * n
    for i, j in product(range(n), repeat=2):
        if x[i] and y[j]:
            for k in range(n):
                out[k] += x[i] * y[j] * c[i, j, k]
    return out


def apply(M, x):
    n = len(x)
    return [sum((M[r, k] * x[k] for k in range(n)), Fraction(0)) for r in range(M.shape[0])]


def V(c, inv, x, y, z):
    """(x ybar) z + (z ybar) x - (z xbar) y"""
    xb, yb = apply(inv, x), apply(inv, y)
    return add(mult(c, mult(c, x, yb), z), mult(c, mult(c, z, yb), x),
               scale(-1, mult(c, mult(c, z, xb), y)))


def structurable_holds(c, inv):
    n = c.shape[0]
    basis = [vec(n, i) for i in range(n)]

    def assoc(x, y, z):
        return add(mult(c, mult(c, x, y), z), scale(-1, mult(c, x, mult(c, y, z))))

    for x, y, z in product(basis, repeat=3):
        d = add(x, scale(-1, apply(inv, x)))
        if assoc(d, y, z) != assoc(y, scale(-1, d), z):
            return False
    for u, v, x, y, z in product(basis, repeat=5):
        lhs = add(V(c, inv, u, v, V(c, inv, x, y, z)), scale(-1, V(c, inv, x, y, V(c, inv, u, v, z))))
        rhs = add(V(c, inv, V(c, inv, u, v, x), y, z), scale(-1, V(c, inv, x, V(c, inv, v, u, y), z)))
        if lhs != rhs:
            return False
    return True


def bracket(b, x, y):
    return mult(b, x, y)


def super_jacobi_holds(b, parities):
    """[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on homogeneous basis triples."""
    n = b.shape[0]
    basis = [vec(n, i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        s = (-1) ** (parities[i] * parities[j])
        lhs = bracket(b, x, bracket(b, y, z))
        rhs = add(bracket(b, bracket(b, x, y), z), scale(s, bracket(b, y, bracket(b, x, z))))
        if lhs != rhs:
            return False
    return True
