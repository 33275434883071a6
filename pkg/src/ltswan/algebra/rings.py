"""Finite residue rings O/pi^n.

Two concrete realizations are supported:

* ``mixed``: Z/p^n (residue degree f must be 1), uniformizer p;
* ``equal``: F_q[t]/(t^n) with F_q = F_p[x]/(g) for a fixed irreducible g of
  degree f, uniformizer t.

Elements are encoded as integers ``0 .. q^n - 1`` and every ring operation is
a table lookup, so the rings are only meant for desk-scale sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import isprime

MODES = ("mixed", "equal")
MAX_RING_SIZE = 4096


def _poly_mulmod_fp(a, b, mod, p):
    """Multiply coefficient lists over F_p and reduce by the monic ``mod``."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    deg = len(mod) - 1
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if c:
            for i in range(deg + 1):
                prod[k - deg + i] = (prod[k - deg + i] - c * mod[i]) % p
    out = prod[:deg] + [0] * max(0, deg - len(prod))
    return out


def _is_irreducible_fp(poly, p):
    """Brute-force irreducibility of a monic polynomial over F_p (small degree)."""
    deg = len(poly) - 1
    if deg <= 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            # long division of poly by div
            rem = list(poly)
            for k in range(len(rem) - 1, d - 1, -1):
                c = rem[k]
                if c:
                    for i in range(d + 1):
                        rem[k - d + i] = (rem[k - d + i] - c * div[i]) % p
            if not any(rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, f: int) -> tuple:
    """Lexicographically smallest monic irreducible polynomial of degree f over F_p.

    Returned as coefficients from the constant term up, leading 1 included.
    """
    if f == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=f):
        poly = list(reversed(tail))  # deterministic scan order
        if poly[0] == 0:
            continue
        cand = poly + [1]
        if _is_irreducible_fp(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {f} over F_{p}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class ResidueRing:
    """The ring O/pi^n with residue field F_q, q = p^f."""

    p: int
    f: int
    n: int
    mode: str
    add: list = field(repr=False)
    mul: list = field(repr=False)
    neg: list = field(repr=False)
    inv: list = field(repr=False)
    val: list = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def size(self) -> int:
        return self.q ** self.n

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def pi(self) -> int:
        """Encoding of the uniformizer (0 when n = 1)."""
        if self.n == 1:
            return 0
        return self.p if self.mode == "mixed" else self.q

    @property
    def spec(self) -> str:
        return f"{self.p}:{self.f}:{self.n}:{self.mode}"

    def __repr__(self) -> str:
        return f"ResidueRing({self.spec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidueRing) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def elements(self) -> range:
        return range(self.size)

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg[y]]

    def val_pi(self, x: int) -> int:
        """pi-adic order of x, with val_pi(0) = n."""
        return self.val[x]

    def is_unit(self, x: int) -> bool:
        return self.val[x] == 0

    def unit_group(self) -> list:
        return [x for x in self.elements() if self.val[x] == 0]

    def power(self, x: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.mul[out][x]
        return out

    def pi_power(self, k: int) -> int:
        """Encoding of pi^k (zero once k >= n)."""
        if k >= self.n:
            return 0
        return self.p ** k if self.mode == "mixed" else self.q ** k

    def div_pi(self, x: int) -> int:
        """Some y with pi * y = x; x must be divisible by pi.

        The answer is only well defined modulo pi^(n-1); the canonical lift
        with top pi-adic digit zero is returned.
        """
        if self.val[x] < 1:
            raise ValueError("element is not divisible by the uniformizer")
        base = self.p if self.mode == "mixed" else self.q
        return x // base

    def reduce_residue(self, x: int) -> int:
        """Image in the residue field k = O/pi (encoded 0 .. q-1)."""
        base = self.p if self.mode == "mixed" else self.q
        return x % base

    def from_int(self, k: int) -> int:
        """Image of the rational integer k."""
        if self.mode == "mixed":
            return k % self.size
        out = 0
        step = self.one if k >= 0 else self.neg[self.one]
        for _ in range(abs(k)):
            out = self.add[out][step]
        return out


def _mixed_tables(p: int, n: int):
    N = p ** n
    add = [[(x + y) % N for y in range(N)] for x in range(N)]
    mul = [[(x * y) % N for y in range(N)] for x in range(N)]
    neg = [(-x) % N for x in range(N)]
    val = []
    for x in range(N):
        if x == 0:
            val.append(n)
            continue
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        val.append(v)
    return add, mul, neg, val


def _field_tables(p: int, f: int):
    """Addition and multiplication tables of F_q, q = p^f, in base-p digit encoding."""
    q = p ** f
    mod = list(conway_like_modulus(p, f))
    digits = [[(x // p ** i) % p for i in range(f)] for x in range(q)]

    def enc(cs):
        return sum(c * p ** i for i, c in enumerate(cs))

    fadd = [[enc([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)]
            for x in range(q)]
    fmul = [[enc(_poly_mulmod_fp(digits[x], digits[y], mod, p)) for y in range(q)]
            for x in range(q)]
    return fadd, fmul


def _equal_tables(p: int, f: int, n: int):
    q = p ** f
    N = q ** n
    fadd, fmul = _field_tables(p, f)
    fneg = [next(y for y in range(q) if fadd[x][y] == 0) for x in range(q)]
    coeffs = [[(x // q ** i) % q for i in range(n)] for x in range(N)]

    def enc(cs):
        return sum(c * q ** i for i, c in enumerate(cs))

    add = [[enc([fadd[a][b] for a, b in zip(coeffs[x], coeffs[y])]) for y in range(N)]
           for x in range(N)]
    neg = [enc([fneg[a] for a in coeffs[x]]) for x in range(N)]
    mul = []
    for x in range(N):
        row = []
        cx = coeffs[x]
        for y in range(N):
            cy = coeffs[y]
            out = [0] * n
            for i in range(n):
                if cx[i]:
                    for j in range(n - i):
                        if cy[j]:
                            out[i + j] = fadd[out[i + j]][fmul[cx[i]][cy[j]]]
            row.append(enc(out))
        mul.append(row)
    val = []
    for x in range(N):
        cs = coeffs[x]
        val.append(next((i for i, c in enumerate(cs) if c), n))
    return add, mul, neg, val


@lru_cache(maxsize=None)
def make_ring(p: int, f: int, n: int, mode: str = "mixed") -> ResidueRing:
    """Build the residue ring O/pi^n for the given parameters."""
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if f < 1 or n < 1:
        raise ValueError("f and n must be positive")
    if mode == "mixed" and f != 1:
        raise ValueError("mixed characteristic rings are only supported with f = 1")
    size = (p ** f) ** n
    if size > MAX_RING_SIZE:
        raise ValueError(f"ring with {size} elements exceeds the table limit {MAX_RING_SIZE}")
    if mode == "mixed":
        add, mul, neg, val = _mixed_tables(p, n)
    else:
        add, mul, neg, val = _equal_tables(p, f, n)
    inv = [None] * size
    for x in range(size):
        if val[x] == 0:
            row = mul[x]
            inv[x] = row.index(1)
    return ResidueRing(p, f, n, mode, add, mul, neg, inv, val)


def parse_ring_spec(spec: str) -> ResidueRing:
    """Parse a ``"p:f:n:mode"`` string into a ring."""
    parts = spec.split(":")
    if len(parts) != 4:
        raise ValueError(f"ring spec must look like 'p:f:n:mode', got {spec!r}")
    try:
        p, f, n = (int(x) for x in parts[:3])
    except ValueError as exc:
        raise ValueError(f"non-integer field in ring spec {spec!r}") from exc
    return make_ring(p, f, n, parts[3])
