"""Character tables by the Burnside-Dixon method.

Central characters are the common eigenvectors of the class multiplication
matrices.  They are found modulo a prime P = 1 (mod exponent) and then lifted
to exact cyclotomic values through the power maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm

import numpy as np
from sympy import isprime, primitive_root

from ..algebra.groups import MatrixGroup, mat_inv, mat_mul
from .classfun import ClassFunction
from .cyclotomic import Cyclotomic, power_table

DEFAULT_TABLE_CAP = 5000


class TableError(ArithmeticError):
    """The computed table violates an exact invariant."""


def element_order(G: MatrixGroup, x) -> int:
    one = G.identity
    k, y = 1, x
    while y != one:
        y = G.mul(y, x)
        k += 1
    return k


def _choose_prime(e: int, order: int, nclasses: int) -> int:
    bound = max(2 * isqrt(order) + 2, nclasses + 1)
    P = e + 1
    while P <= bound or not isprime(P):
        P += e
    return P


def _rref_rows(mat: np.ndarray, P: int):
    """Row-reduce mod P; returns (reduced matrix, pivot columns)."""
    A = mat.copy() % P
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, P) % P
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % P
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(mat: np.ndarray, P: int) -> np.ndarray:
    """Columns spanning the right kernel of mat mod P."""
    R, pivots = _rref_rows(mat, P)
    n = mat.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for t, fcol in enumerate(free):
        basis[fcol, t] = 1
        for i, pc in enumerate(pivots):
            basis[pc, t] = (-R[i, fcol]) % P
    return basis


def _charpoly(X: np.ndarray, P: int) -> list:
    """Characteristic polynomial mod P (Faddeev-LeVerrier), constant term first."""
    d = X.shape[0]
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    M = np.zeros_like(X)
    ident = np.eye(d, dtype=np.int64)
    for k in range(1, d + 1):
        M = (X @ M + coeffs[d - k + 1] * ident) % P
        tr = int(np.trace(X @ M % P)) % P
        coeffs[d - k] = (-tr * pow(k, -1, P)) % P
    return coeffs


def _roots(coeffs: list, P: int) -> list:
    xs = np.arange(P, dtype=np.int64)
    acc = np.zeros(P, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % P
    return [int(v) for v in np.nonzero(acc == 0)[0]]


def _span_basis(vectors: np.ndarray, P: int) -> np.ndarray:
    """Column basis normalized so that the pivot rows form an identity block."""
    R, _ = _rref_rows(vectors.T, P)
    return R.T.copy()


@dataclass(frozen=True)
class CharTable:
    group: MatrixGroup
    irreducibles: tuple
    exponent: int

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]

    def __iter__(self):
        return iter(self.irreducibles)

    @property
    def degrees(self) -> list:
        return [chi.degree.to_int() for chi in self.irreducibles]

    def to_json(self) -> dict:
        return {
            "group_order": self.group.order,
            "exponent": self.exponent,
            "classes": [
                {"representative": list(c[0]), "size": len(c)} for c in self.group.classes
            ],
            "irreducibles": [
                {"dim": chi.degree.to_int(),
                 "values": [list(v.lift(self.exponent).coeffs) for v in chi.values]}
                for chi in self.irreducibles
            ],
        }


def class_constants(G: MatrixGroup) -> np.ndarray:
    """A[j, i, k] = #{x in C_j : x^-1 g_k in C_i} for class representatives g_k."""
    r = len(G.classes)
    A = np.zeros((r, r, r), dtype=np.int64)
    class_of = G.class_of
    ring = G.ring
    elems = [(class_of[x], mat_inv(ring, x)) for x in G.elements]
    for k, cls in enumerate(G.classes):
        g = cls[0]
        for j, xi in elems:
            A[j, class_of[mat_mul(ring, xi, g)], k] += 1
    return A


def _central_characters(A: np.ndarray, P: int, ident: int) -> list:
    r = A.shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    order = sorted(range(r), key=lambda j: -int(A[j].sum()))
    for j in order:
        if all(B.shape[1] == 1 for B in spaces):
            break
        if j == ident:
            continue
        Mj = A[j] % P
        nxt = []
        for B in spaces:
            d = B.shape[1]
            if d == 1:
                nxt.append(B)
                continue
            pivots = [int(np.nonzero(B[:, t])[0][0]) for t in range(d)]
            image = Mj @ B % P
            X = image[pivots, :]
            pieces = []
            for lam in _roots(_charpoly(X, P), P):
                N = _nullspace((X - lam * np.eye(d, dtype=np.int64)) % P, P)
                if N.shape[1]:
                    pieces.append(_span_basis(B @ N % P, P))
            if sum(p.shape[1] for p in pieces) != d:
                raise TableError("class matrix is not diagonalizable over the chosen prime")
            nxt.extend(pieces)
        spaces = nxt
    if any(B.shape[1] != 1 for B in spaces):
        raise TableError("common eigenspaces did not split into lines")
    out = []
    for B in spaces:
        v = B[:, 0] % P
        v = v * pow(int(v[ident]), -1, P) % P
        out.append([int(x) for x in v])
    return out


def dixon_table(G: MatrixGroup, cap: int = DEFAULT_TABLE_CAP) -> CharTable:
    """The full set of irreducible characters of G with exact values."""
    classes = G.classes
    r = len(classes)
    if r > cap:
        raise ValueError(f"{r} classes exceed the table cap {cap}")
    order = G.order
    sizes = [len(c) for c in classes]
    reps = [c[0] for c in classes]
    ident = G.class_of[G.identity]
    inv_class = [G.class_of[G.inv(g)] for g in reps]
    orders = [element_order(G, g) for g in reps]
    e = lcm(*orders)
    powmap = []
    for g, o in zip(reps, orders):
        row, y = [], G.identity
        for _ in range(o):
            row.append(G.class_of[y])
            y = G.mul(y, g)
        powmap.append(row)

    P = _choose_prime(e, order, r)
    A = class_constants(G)
    omegas = _central_characters(A, P, ident)

    z = pow(int(primitive_root(P)), (P - 1) // e, P)
    chars = []
    for om in omegas:
        S = sum(om[k] * om[inv_class[k]] * pow(sizes[k], -1, P) for k in range(r)) % P
        target = order * pow(S, -1, P) % P
        dim = next((t for t in range(1, isqrt(order) + 1) if t * t % P == target), None)
        if dim is None:
            raise TableError("no admissible degree for a central character")
        theta = [om[k] * dim * pow(sizes[k], -1, P) % P for k in range(r)]
        values = []
        for k in range(r):
            o = orders[k]
            zo = pow(z, e // o, P)
            oinv = pow(o, -1, P)
            mult = {}
            for s in range(o):
                acc = 0
                for t in range(o):
                    acc += theta[powmap[k][t]] * pow(zo, (-s * t) % o, P)
                m_s = acc * oinv % P
                if m_s > dim:
                    raise TableError("eigenvalue multiplicity out of range")
                if m_s:
                    mult[s * (e // o)] = m_s
            values.append(Cyclotomic.from_powers(e, mult))
        chars.append(values)

    chars.sort(key=lambda vals: (vals[ident].to_int(), [v.coeffs for v in vals]))
    table = CharTable(G, tuple(ClassFunction(G, vals) for vals in chars), e)
    check_table(table)
    return table


def _value_array(table: CharTable):
    e = table.exponent
    phi = len(power_table(e)[0])
    Y = np.array([[list(v.lift(e).coeffs) for v in chi.values] for chi in table],
                 dtype=np.int64)
    if any(v.lift(e).den != 1 for chi in table for v in chi.values):
        raise TableError("character values are not algebraic integers")
    conj = np.array([power_table(e)[(-i) % e] for i in range(phi)], dtype=np.int64)
    mult = np.array([[power_table(e)[(i + j) % e] for j in range(phi)] for i in range(phi)],
                    dtype=np.int64)
    return Y, Y @ conj, mult


def check_table(table: CharTable) -> None:
    """Exact row and column orthogonality, degree sum and class count."""
    G = table.group
    r = len(G.classes)
    if len(table) != r:
        raise TableError(f"{len(table)} irreducibles for {r} classes")
    if sum(d * d for d in table.degrees) != G.order:
        raise TableError("sum of squared degrees differs from the group order")
    Y, Yc, T = _value_array(table)
    h = np.array(G.class_sizes, dtype=np.int64)
    # rows: sum_k h_k chi_a(k) conj chi_b(k)
    Z = np.einsum("aki,ijw->akjw", Y, T)
    rows = np.einsum("akjw,bkj->abw", Z, Yc * h[None, :, None])
    expect = np.zeros_like(rows)
    expect[:, :, 0] = G.order * np.eye(r, dtype=np.int64)
    if not np.array_equal(rows, expect):
        raise TableError("row orthogonality fails")
    # columns: sum_a chi_a(k) conj chi_a(l) = |C_G(g_k)| delta_kl
    Z = np.einsum("aki,ijw->akjw", Y, T)
    cols = np.einsum("akjw,alj->klw", Z, Yc)
    expect = np.zeros_like(cols)
    expect[:, :, 0] = np.diag([G.order // s for s in G.class_sizes])
    if not np.array_equal(cols, expect):
        raise TableError("column orthogonality fails")


_TABLES: dict = {}


def character_table(G: MatrixGroup) -> CharTable:
    """Memoized dixon_table keyed by the ring and the element set.

    The returned table may be attached to an earlier but equal group object;
    use ``table.group`` when building class functions to pair against it.
    """
    key = (G.ring.spec, G.elements)
    if key not in _TABLES:
        _TABLES[key] = dixon_table(G)
    return _TABLES[key]
