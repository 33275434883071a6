"""Class functions on matrix groups with exact cyclotomic values."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..algebra.groups import MatrixGroup, conjugate_subgroup, mat_inv, mat_mul
from .cyclotomic import Cyclotomic


class NotASubgroup(ValueError):
    """Raised when a restriction or induction is asked along a non-inclusion."""


class ClassFunction:
    """One cyclotomic value per conjugacy class of ``group``."""

    __slots__ = ("group", "values")

    def __init__(self, group: MatrixGroup, values):
        values = tuple(Cyclotomic.coerce(v) for v in values)
        if len(values) != len(group.classes):
            raise ValueError(f"expected {len(group.classes)} class values, got {len(values)}")
        self.group = group
        self.values = values

    @classmethod
    def from_function(cls, group: MatrixGroup, fn: Callable) -> "ClassFunction":
        """Evaluate ``fn`` at one representative per class."""
        return cls(group, [fn(c[0]) for c in group.classes])

    @classmethod
    def trivial(cls, group: MatrixGroup) -> "ClassFunction":
        return cls(group, [1] * len(group.classes))

    @classmethod
    def regular(cls, group: MatrixGroup) -> "ClassFunction":
        ident = group.class_of[group.identity]
        return cls(group, [group.order if k == ident else 0 for k in range(len(group.classes))])

    def __call__(self, x) -> Cyclotomic:
        return self.values[self.group.class_of[x]]

    @property
    def degree(self) -> Cyclotomic:
        return self(self.group.identity)

    @property
    def is_rational(self) -> bool:
        return all(v.is_rational for v in self.values)

    def _check(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def total(self) -> Cyclotomic:
        """Sum of the values over all group elements."""
        acc = Cyclotomic.rational(0)
        for size, v in zip(self.group.class_sizes, self.values):
            acc = acc + v * size
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    __hash__ = None

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.descriptor}, {list(self.values)})"


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """<f, g> = |G|^-1 sum_x f(x) conj(g(x))."""
    f._check(g)
    G = f.group
    acc = Cyclotomic.rational(0)
    for size, a, b in zip(G.class_sizes, f.values, g.values):
        if a.is_zero or b.is_zero:
            continue
        acc = acc + a * b.conjugate() * size
    return acc / G.order


def restrict(chi: ClassFunction, H: MatrixGroup) -> ClassFunction:
    G = chi.group
    vals = []
    for cls in H.classes:
        rep = cls[0]
        if rep not in G:
            raise NotASubgroup(f"{H.descriptor} is not contained in {G.descriptor}")
        vals.append(chi(rep))
    return ClassFunction(H, vals)


def induce(f: ClassFunction, G: MatrixGroup) -> ClassFunction:
    """Induce a class function from f.group up to the overgroup G."""
    H = f.group
    if any(c[0] not in G for c in H.classes):
        raise NotASubgroup(f"{H.descriptor} is not contained in {G.descriptor}")
    sums = [Cyclotomic.rational(0) for _ in G.classes]
    for cls, v in zip(H.classes, f.values):
        k = G.class_of[cls[0]]
        sums[k] = sums[k] + v * len(cls)
    # Ind f(g) = |G| / (|H| |C_g|) * sum of f over H meeting the class of g
    vals = [s * Fraction(G.order, H.order * size) for s, size in zip(sums, G.class_sizes)]
    return ClassFunction(G, vals)


def fixed_dim(chi: ClassFunction, H: MatrixGroup) -> int:
    """Dimension of the H-invariants of the representation with character chi."""
    G = chi.group
    acc = Cyclotomic.rational(0)
    for cls in H.classes:
        if cls[0] not in G:
            raise NotASubgroup(f"{H.descriptor} is not contained in {G.descriptor}")
        acc = acc + chi(cls[0]) * len(cls)
    val = acc / H.order
    if not val.is_rational or val.to_fraction().denominator != 1 or val.to_fraction() < 0:
        raise ArithmeticError(f"invariant dimension {val!r} is not a nonnegative integer")
    return val.to_int()


def conjugate_class_function(f: ClassFunction, g) -> ClassFunction:
    """Transport f along g: the result lives on g^-1 H g and sends s to f(g s g^-1)."""
    H = f.group
    ring = H.ring
    gi = mat_inv(ring, g)
    Hg = conjugate_subgroup(H, gi, f"{H.descriptor}^g")
    return ClassFunction.from_function(Hg, lambda s: f(mat_mul(ring, mat_mul(ring, g, s), gi)))
