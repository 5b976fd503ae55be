"""Exact rational linear algebra on numpy object arrays.

Every array handled here holds :class:`fractions.Fraction` entries.  Heavy
contractions go through :func:`contract_int`, which clears denominators and
runs ``np.einsum`` on integers (``int64`` when a magnitude bound proves it
safe, Python ints otherwise), so sweeps stay exact without paying the cost of
Fraction arithmetic in the inner loop.

Operators use the column convention: ``M[:, j]`` is the image of ``e_j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Q = Fraction

_INT64_LIMIT = 2**62


class DimensionMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class HypothesisViolation(ValueError):
    """A mathematical precondition of a construction does not hold."""


class DegenerateRoots(ValueError):
    pass


class ConstructionError(ValueError):
    """A construction produced output that fails its own post-checks."""


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_scalar(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_to_frac = np.frompyfunc(Fraction, 1, 1)


def as_exact(data) -> np.ndarray:
    """Return an object array of Fractions (copying)."""
    arr = np.array(data, dtype=object)
    if arr.size == 0:
        return arr
    for x in arr.flat:
        if isinstance(x, float):
            raise TypeError("floating point entries are not allowed")
    return np.asarray(_to_frac(arr), dtype=object)


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Q(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Q(1)
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = Q(1)
    return v


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a).flat)


def exact_equal(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


# -- integer-scaled kernel -------------------------------------------------

@dataclass(frozen=True)
class Scaled:
    """An exact array stored as ``ints / den``."""

    ints: np.ndarray
    den: int

    @property
    def shape(self):
        return self.ints.shape

    def bound(self) -> int:
        if self.ints.size == 0:
            return 0
        return int(max(abs(int(x)) for x in (self.ints.max(), self.ints.min())))

    def to_fractions(self) -> np.ndarray:
        d = self.den
        return np.frompyfunc(lambda v: Fraction(int(v), d), 1, 1)(self.ints).astype(object)

    def __neg__(self):
        return Scaled(-self.ints, self.den)

    def scale(self, c) -> "Scaled":
        c = Fraction(c)
        return _normalize(_mul_ints(self.ints, c.numerator), self.den * c.denominator)


def _mul_ints(ints: np.ndarray, k: int) -> np.ndarray:
    if ints.dtype != object and ints.size:
        b = int(np.abs(ints).max())
        if b * abs(k) >= _INT64_LIMIT:
            ints = ints.astype(object)
    return ints * k


def _normalize(ints: np.ndarray, den: int) -> Scaled:
    if ints.dtype == object and ints.size:
        b = max(abs(int(x)) for x in ints.flat)
        if b < _INT64_LIMIT:
            ints = ints.astype(np.int64)
    return Scaled(ints, den)


def to_scaled(a) -> Scaled:
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return Scaled(np.zeros(a.shape, dtype=np.int64), 1)
    den = math.lcm(*{Fraction(x).denominator for x in a.flat})
    flat = [Fraction(x) for x in a.flat]
    ints = np.array([x.numerator * (den // x.denominator) for x in flat], dtype=object).reshape(a.shape)
    return _normalize(ints, den)


def contract_int(subscripts: str, *operands) -> Scaled:
    """Exact ``einsum`` over Fraction arrays (or :class:`Scaled`)."""
    ops = [op if isinstance(op, Scaled) else to_scaled(op) for op in operands]
    inputs, _, output = subscripts.partition("->")
    terms = inputs.split(",")
    sizes = {}
    for term, op in zip(terms, ops):
        for ch, n in zip(term, op.shape):
            sizes[ch] = n
    summed = set("".join(terms)) - set(output)
    bound = math.prod(sizes[c] for c in summed) if summed else 1
    for op in ops:
        bound *= max(op.bound(), 1)
    if bound < _INT64_LIMIT:
        arrays = [op.ints.astype(np.int64) for op in ops]
    else:
        arrays = [op.ints.astype(object) for op in ops]
    ints = np.einsum(subscripts, *arrays)
    return _normalize(np.asarray(ints), math.prod(op.den for op in ops))


def combine(*terms: tuple) -> Scaled:
    """Exact linear combination ``sum(coef * array)`` of Scaled terms."""
    terms = [(Fraction(c), t) for c, t in terms]
    den = math.lcm(*(t.den * c.denominator for c, t in terms))
    total = None
    for c, t in terms:
        k = c.numerator * (den // (t.den * c.denominator))
        part = _mul_ints(t.ints, k)
        if total is None:
            total = part
        else:
            if total.dtype != object and part.dtype != object:
                if int(np.abs(total).max(initial=0)) + int(np.abs(part).max(initial=0)) >= _INT64_LIMIT:
                    total, part = total.astype(object), part.astype(object)
            elif total.dtype != part.dtype:
                total, part = total.astype(object), part.astype(object)
            total = total + part
    return _normalize(total, den)


def contract(subscripts: str, *operands) -> np.ndarray:
    return contract_int(subscripts, *operands).to_fractions()


def first_nonzero(a) -> tuple | None:
    """Lexicographically first index with a nonzero entry, or None."""
    ints = a.ints if isinstance(a, Scaled) else np.asarray(a)
    if ints.dtype == object:
        mask = np.frompyfunc(lambda v: v != 0, 1, 1)(ints).astype(bool)
    else:
        mask = ints != 0
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


# -- row reduction -----------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination with first-nonzero pivoting.

    Returns the nonzero reduced rows and their pivot columns.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(M) -> int:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(rref(M.tolist())[0])


def nullspace(M) -> list[np.ndarray]:
    """Basis of ``{v : M v = 0}``."""
    M = np.asarray(M, dtype=object)
    ncols = M.shape[1]
    rows, pivots = rref(M.tolist())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Q(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_basis(M) -> list[np.ndarray]:
    """Independent columns of M (first occurrences), as vectors."""
    M = np.asarray(M, dtype=object)
    _, pivots = rref(M.tolist()) if M.size else ([], [])
    return [M[:, p].copy() for p in pivots]


def solve(M, b) -> np.ndarray | None:
    """One solution of ``M x = b`` or None when inconsistent."""
    M = np.asarray(M, dtype=object)
    b = np.asarray(b, dtype=object)
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    rows, pivots = rref(aug.tolist())
    ncols = M.shape[1]
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return x


def operator_inverse(M) -> np.ndarray:
    M = np.asarray(M, dtype=object)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"not a square matrix: shape {M.shape}")
    n = M.shape[0]
    aug = np.concatenate([M, identity(n)], axis=1)
    rows, pivots = rref(aug.tolist())
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise NotInvertible("matrix is singular")
    return as_exact([r[n:] for r in rows[:n]])


def poly_on_operator(M, coeffs: Iterable) -> np.ndarray:
    """``sum(coeffs[i] * M**i)`` computed by Horner's rule."""
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    coeffs = [Fraction(c) for c in coeffs]
    out = zeros((n, n))
    I = identity(n)
    for c in reversed(coeffs):
        out = out @ M + c * I
    return as_exact(out)


def eigenprojections(M, roots) -> tuple[np.ndarray, np.ndarray]:
    """Projections onto the two eigenspaces of M when (M-r1)(M-r2) = 0."""
    r1, r2 = (Fraction(r) for r in roots)
    if r1 == r2:
        raise DegenerateRoots(f"roots coincide: {r1}")
    M = as_exact(M)
    n = M.shape[0]
    I = identity(n)
    if not is_zero((M - r1 * I) @ (M - r2 * I)):
        raise HypothesisViolation(
            f"(M - {format_scalar(r1)})(M - {format_scalar(r2)}) != 0")
    P1 = as_exact((M - r2 * I) / (r1 - r2))
    return P1, as_exact(I - P1)


# -- spans -------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorSpan:
    """Span of equally-shaped arrays with a reduced-echelon basis.

    ``basis[i]`` has a 1 at flat position ``pivots[i]`` and every other
    basis element vanishes there, so coordinates are read off directly.
    """

    shape: tuple
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def coordinates(self, op) -> np.ndarray | None:
        op = np.asarray(op, dtype=object)
        if op.shape != self.shape:
            raise DimensionMismatch(f"shape {op.shape} vs span shape {self.shape}")
        flat = op.ravel()
        coords = as_exact([flat[p] for p in self.pivots]) if self.basis else zeros(0)
        if self.basis:
            recon = contract("i,ij->j", coords, self.matrix())
        else:
            recon = zeros(flat.shape)
        if not exact_equal(recon, flat):
            return None
        return coords

    def contains(self, op) -> bool:
        return self.coordinates(op) is not None

    def matrix(self) -> np.ndarray:
        """Basis elements flattened into rows."""
        n = math.prod(self.shape)
        if not self.basis:
            return zeros((0, n))
        return np.stack([b.ravel() for b in self.basis])

    def element(self, coords) -> np.ndarray:
        return contract("i,ij->j", as_exact(coords), self.matrix()).reshape(self.shape)


def span_basis(generators: Sequence, shape: tuple | None = None) -> OperatorSpan:
    gens = [np.asarray(g, dtype=object) for g in generators]
    shapes = {g.shape for g in gens}
    if len(shapes) > 1:
        raise DimensionMismatch(f"generators have mixed shapes: {sorted(shapes)}")
    if not gens and shape is None:
        raise ValueError("shape is required for an empty generator list")
    shape = tuple(shape if shape is not None else gens[0].shape)
    rows, pivots = rref([g.ravel().tolist() for g in gens])
    basis = tuple(as_exact(r).reshape(shape) for r in rows)
    return OperatorSpan(shape, basis, tuple(pivots))


def fmt_array(a) -> str:
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return format_scalar(a.item())
    if a.ndim == 1:
        return "[" + " ".join(format_scalar(x) for x in a) + "]"
    return "[" + "; ".join(fmt_array(r) for r in a) + "]"
