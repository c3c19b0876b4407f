"""Arithmetic tables for small finite fields GF(q), q a prime power <= 32.

Extension fields are built from one fixed irreducible modulus per order,
so the element encoding is reproducible across runs and machines:

    GF(4):  x^2 + x + 1
    GF(8):  x^3 + x + 1
    GF(9):  x^2 + 1
    GF(16): x^4 + x + 1
    GF(25): x^2 + x + 2
    GF(27): x^3 + 2x + 1
    GF(32): x^5 + x^2 + 1

An element is the integer whose base-p digits are the coefficients of
its polynomial representative, constant term first.  For prime q this is
just the integer mod p; in every case the integers 0..p-1 form the prime
subfield.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

MAX_ORDER = 32

# irreducible modulus per extension order, coefficients ascending
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 1, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
}


def _prime_power(q: int):
    """Return (p, k) with q = p^k and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return (q, 1)
    m, k = q, 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(cs: Sequence[int], p: int) -> int:
    x = 0
    for c in reversed(cs):
        x = x * p + c
    return x


def _poly_mul_mod(u: Sequence[int], v: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % p
    # reduce by the monic modulus
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(k):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return prod[:k]


class FiniteField:
    """GF(q) with dense addition/multiplication tables.

    Immutable after construction; every operation is a pure table lookup
    and safe to call from any number of threads.
    """

    __slots__ = ("q", "p", "k", "irreducible_poly", "add_table", "mul_table",
                 "neg_table", "inv_table")

    def __init__(self, q: int):
        pp = _prime_power(q)
        if pp is None or not 2 <= q <= MAX_ORDER:
            raise ValueError(f"q={q} is not a prime power in [2, {MAX_ORDER}]")
        self.q = q
        self.p, self.k = pp
        if self.k == 1:
            self.irreducible_poly = None
            self.add_table = tuple(tuple((x + y) % q for y in range(q)) for x in range(q))
            self.mul_table = tuple(tuple((x * y) % q for y in range(q)) for x in range(q))
        else:
            mod = _IRREDUCIBLE[q]
            self.irreducible_poly = mod
            polys = [_digits(x, self.p, self.k) for x in range(q)]
            add = []
            mul = []
            for x in range(q):
                add.append(tuple(
                    _undigits([(a + b) % self.p for a, b in zip(polys[x], polys[y])], self.p)
                    for y in range(q)))
                mul.append(tuple(
                    _undigits(_poly_mul_mod(polys[x], polys[y], mod, self.p), self.p)
                    for y in range(q)))
            self.add_table = tuple(add)
            self.mul_table = tuple(mul)
        neg = [0] * q
        for x in range(q):
            neg[x] = self.add_table[x].index(0)
        self.neg_table = tuple(neg)
        inv = [None] * q
        for x in range(1, q):
            inv[x] = self.mul_table[x].index(1)
        self.inv_table = tuple(inv)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self.inv_table[x]

    def arith(self, op: str, x: int, y: int = 0) -> int:
        if op == "add":
            return self.add(x, y)
        if op == "mul":
            return self.mul(x, y)
        if op == "neg":
            return self.neg(x)
        if op == "inv":
            return self.inv(x)
        raise ValueError(f"unknown field op {op!r}")

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    """Shared immutable field instance for order q."""
    return FiniteField(q)


class Matrix:
    """Dense matrix over a FiniteField; entries stored row-major."""

    __slots__ = ("field", "rows", "cols", "entries", "_columns")

    def __init__(self, f: FiniteField, rows: int, cols: int, entries: Iterable[Iterable[int]]):
        self.field = f
        self.rows = rows
        self.cols = cols
        rows_t = tuple(tuple(row) for row in entries)
        if len(rows_t) != rows or any(len(r) != cols for r in rows_t):
            raise ValueError("entry grid does not match declared shape")
        for r in rows_t:
            for e in r:
                if not 0 <= e < f.q:
                    raise ValueError(f"entry {e} is not a GF({f.q}) element")
        self.entries = rows_t
        self._columns = tuple(tuple(rows_t[i][j] for i in range(rows)) for j in range(cols))

    def column(self, j: int) -> tuple[int, ...]:
        return self._columns[j]

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return self._columns

    @classmethod
    def from_columns(cls, f: FiniteField, columns: Sequence[Sequence[int]], rows: int) -> "Matrix":
        cols = len(columns)
        entries = [[columns[j][i] for j in range(cols)] for i in range(rows)]
        return cls(f, rows, cols, entries)

    def __repr__(self):
        return f"Matrix(GF({self.field.q}), {self.rows}x{self.cols})"


def rank_of_vectors(f: FiniteField, vectors: Iterable[Sequence[int]]) -> int:
    """Rank of a family of coordinate vectors by Gaussian elimination."""
    pivots: list[tuple[int, list[int]]] = []
    add_t, mul_t, neg_t, inv_t = f.add_table, f.mul_table, f.neg_table, f.inv_table
    for v in vectors:
        w = list(v)
        for lead, pv in pivots:
            c = w[lead]
            if c:
                row = mul_t[c]
                for i in range(len(w)):
                    pvi = pv[i]
                    if pvi:
                        w[i] = add_t[w[i]][neg_t[row[pvi]]]
        lead = -1
        for i, wi in enumerate(w):
            if wi:
                lead = i
                break
        if lead < 0:
            continue
        c = inv_t[w[lead]]
        if c != 1:
            row = mul_t[c]
            w = [row[wi] for wi in w]
        pivots.append((lead, w))
        if len(pivots) == len(w):
            break
    return len(pivots)


def normalized_vectors(f: FiniteField, r: int) -> list[tuple[int, ...]]:
    """All vectors of GF(q)^r with leading nonzero coordinate 1, lex order.

    One representative per 1-dimensional subspace: the points of the
    rank-r projective geometry over GF(q).
    """
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], leading_seen: bool):
        if len(prefix) == r:
            if leading_seen:
                out.append(prefix)
            return
        if not leading_seen:
            rec(prefix + (0,), False)
            rec(prefix + (1,), True)
        else:
            for c in range(f.q):
                rec(prefix + (c,), True)

    rec((), False)
    return out


def matrix_rank(m: Matrix, column_subset: Iterable[int] | None = None) -> int:
    """Rank of the selected columns of m (all columns when None)."""
    if column_subset is None:
        sel = m._columns
    else:
        idx = sorted(column_subset)
        if idx and (idx[0] < 0 or idx[-1] >= m.cols):
            raise IndexError("column index out of range")
        sel = [m._columns[j] for j in idx]
    return rank_of_vectors(m.field, sel)
