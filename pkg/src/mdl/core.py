"""Matroid kernel: rank oracles, minors, flats, connectivity, roundness.

Ground sets are dense integer ranges 0..n-1 and subsets are int bit
vectors (see bits.py).  Minor views keep the parent's indexing and carry
a live-element mask, so a set computed before a contraction still names
the same elements afterwards; the density procedures rely on that.

Rank queries are memoized per matroid value.  Minor views delegate to
their base matroid's memo, so a whole tower of contractions built during
a search shares one cache.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from . import gf
from .bits import bits, indices_of, submasks

MAX_GROUND = 128

# exhaustive validation/enumeration ceiling; beyond this we sample
EXHAUSTIVE_LIMIT = 14


class Matroid:
    """Base class: a ground mask plus a memoized rank oracle.

    Subclasses implement ``_rank_impl`` on subsets of ``ground`` and may
    override ``closure`` with something faster than the generic scan.
    """

    kind = "abstract"

    def __init__(self, n: int, ground: int):
        if n > MAX_GROUND:
            raise ValueError(f"ground size {n} exceeds cap {MAX_GROUND}")
        self.n = n
        self.ground = ground
        self._rank_memo: dict[int, int] = {}
        self._flat_levels: list[list[int]] | None = None
        self._full_rank: int | None = None

    # -- rank ---------------------------------------------------------

    def _rank_impl(self, x: int) -> int:
        raise NotImplementedError

    def rank(self, x: int | None = None) -> int:
        """Rank of the subset x; rank of the whole matroid when x is None."""
        if x is None:
            if self._full_rank is None:
                self._full_rank = self.rank(self.ground)
            return self._full_rank
        if x & ~self.ground:
            raise IndexError("subset contains elements outside the ground set")
        memo = self._rank_memo
        r = memo.get(x)
        if r is None:
            r = self._rank_impl(x)
            memo[x] = r
        return r

    # -- ground handling ----------------------------------------------

    def elements(self) -> Iterator[int]:
        return bits(self.ground)

    def size(self) -> int:
        return self.ground.bit_count()

    # -- derived notions ------------------------------------------------

    def closure(self, x: int) -> int:
        rx = self.rank(x)
        cl = x
        for e in bits(self.ground & ~x):
            if self.rank(x | (1 << e)) == rx:
                cl |= 1 << e
        return cl

    def loops(self) -> int:
        return self.closure(0)

    def nonloops(self) -> int:
        return self.ground & ~self.loops()

    def local_conn(self, x: int, y: int) -> int:
        """Local connectivity r(X) + r(Y) - r(X u Y); 0 means X, Y are skew."""
        return self.rank(x) + self.rank(y) - self.rank(x | y)

    def flats_of_rank(self, k: int) -> list[int]:
        """All flats of rank exactly k, ascending by bit-vector value."""
        if k < 0 or k > self.rank():
            return []
        if self._flat_levels is None:
            self._flat_levels = [[self.closure(0)]]
        levels = self._flat_levels
        while len(levels) <= k:
            nxt: set[int] = set()
            for f in levels[-1]:
                rest = self.ground & ~f
                for e in bits(rest):
                    g = self.closure(f | (1 << e))
                    nxt.add(g)
                    # every element of g - f extends f to the same flat
                    rest &= ~g
            levels.append(sorted(nxt))
        return list(levels[k])

    def epsilon(self) -> int:
        """Number of points (rank-1 flats), i.e. parallel classes of nonloops."""
        return len(self.flats_of_rank(1))

    def simplify(self) -> tuple["Matroid", dict[int, int | None]]:
        """Delete loops and parallel copies, keeping the least index per class.

        Returns the restriction and a mapping element -> representative
        (None for loops).
        """
        loops = self.loops()
        mapping: dict[int, int | None] = {e: None for e in bits(loops)}
        keep = 0
        for p in self.flats_of_rank(1):
            nz = p & ~loops
            rep = (nz & -nz).bit_length() - 1
            keep |= 1 << rep
            for e in bits(nz):
                mapping[e] = rep
        return self.delete(self.ground & ~keep), mapping

    def is_weakly_round(self) -> tuple[bool, tuple[int, int] | None]:
        """Check weak roundness; on failure return a violating pair (A, B).

        M fails iff some hyperplane H has r(E - H) <= r(M) - 2: the pair
        (E - H, H) then covers E with ranks <= r-2 and r-1.  Conversely a
        violating pair (A, B) can be closed and B extended to a
        hyperplane, so scanning hyperplanes is exhaustive.  The returned
        hyperplane minimizes the complement's rank (ties: least H).
        """
        r = self.rank()
        if r <= 2:
            return True, None
        best: tuple[int, int, int] | None = None
        for h in self.flats_of_rank(r - 1):
            comp = self.ground & ~h
            rc = self.rank(comp)
            if rc <= r - 2 and (best is None or rc < best[0]):
                best = (rc, comp, h)
        if best is None:
            return True, None
        return False, (best[1], best[2])

    # -- minors ---------------------------------------------------------

    def contract(self, c: int) -> "Matroid":
        return self.minor(c, 0)

    def delete(self, d: int) -> "Matroid":
        return self.minor(0, d)

    def restrict(self, x: int) -> "Matroid":
        return self.minor(0, self.ground & ~x)

    def minor(self, contract: int, delete: int) -> "Matroid":
        if contract & delete:
            raise ValueError("contract and delete sets overlap")
        if (contract | delete) & ~self.ground:
            raise IndexError("minor sets contain dead elements")
        if contract == 0 and delete == 0:
            return self
        return MinorMatroid(self, contract, delete)

    def basis_of(self, x: int) -> int:
        """Greedy (least-index) basis of the subset x."""
        b = 0
        r = 0
        for e in bits(x):
            if self.rank(b | (1 << e)) > r:
                b |= 1 << e
                r += 1
        return b

    def __repr__(self):
        return f"<{self.kind} matroid r={self.rank()} n={self.size()}>"


class UniformMatroid(Matroid):
    """U_{r,n}: every subset of size <= r is independent."""

    kind = "uniform"

    def __init__(self, r: int, n: int):
        if r < 0 or n < 0 or r > n:
            raise ValueError(f"bad uniform parameters r={r}, n={n}")
        super().__init__(n, (1 << n) - 1)
        self.r = r

    def _rank_impl(self, x: int) -> int:
        return min(x.bit_count(), self.r)

    def closure(self, x: int) -> int:
        if self.r == 0 or x.bit_count() >= self.r:
            return self.ground
        return x


class LinearMatroid(Matroid):
    """Column matroid of a matrix over GF(q)."""

    kind = "linear"

    def __init__(self, matrix: gf.Matrix):
        super().__init__(matrix.cols, (1 << matrix.cols) - 1)
        self.matrix = matrix
        self.field = matrix.field
        self._cols = matrix.columns()
        # GF(2) columns pack into ints for xor elimination
        self._bitcols = None
        if self.field.q == 2:
            self._bitcols = tuple(
                sum(1 << i for i, v in enumerate(col) if v) for col in self._cols)

    def _rank_impl(self, x: int) -> int:
        if self._bitcols is not None:
            pivots: list[int] = []
            for e in bits(x):
                v = self._bitcols[e]
                for p in pivots:
                    low = p & -p
                    if v & low:
                        v ^= p
                if v:
                    pivots.append(v)
            return len(pivots)
        return gf.rank_of_vectors(self.field, [self._cols[e] for e in bits(x)])

    def closure(self, x: int) -> int:
        """Span membership test against an echelon basis of x's columns."""
        f = self.field
        if self._bitcols is not None:
            pivots: list[int] = []
            for e in bits(x):
                v = self._bitcols[e]
                for p in pivots:
                    if v & (p & -p):
                        v ^= p
                if v:
                    pivots.append(v)
            cl = x
            for e in bits(self.ground & ~x):
                v = self._bitcols[e]
                for p in pivots:
                    if v & (p & -p):
                        v ^= p
                if not v:
                    cl |= 1 << e
            return cl
        add_t, mul_t, neg_t, inv_t = f.add_table, f.mul_table, f.neg_table, f.inv_table

        def reduce(col):
            w = list(col)
            for lead, pv in pivots:
                c = w[lead]
                if c:
                    row = mul_t[c]
                    for i in range(len(w)):
                        if pv[i]:
                            w[i] = add_t[w[i]][neg_t[row[pv[i]]]]
            return w

        pivots: list[tuple[int, list[int]]] = []
        for e in bits(x):
            w = reduce(self._cols[e])
            lead = next((i for i, wi in enumerate(w) if wi), -1)
            if lead >= 0:
                c = inv_t[w[lead]]
                if c != 1:
                    row = mul_t[c]
                    w = [row[wi] for wi in w]
                pivots.append((lead, w))
        cl = x
        for e in bits(self.ground & ~x):
            if not any(reduce(self._cols[e])):
                cl |= 1 << e
        return cl


class MinorMatroid(Matroid):
    """View M / contract \\ delete with the parent's element indexing.

    Nested minors flatten: contracting a minor composes the contraction
    sets on the original base, so rank queries stay two base lookups.
    """

    kind = "minor"

    def __init__(self, base: Matroid, contract: int, delete: int):
        if isinstance(base, MinorMatroid):
            contract = base.contracted | contract
            delete = base.deleted | delete
            base = base.base
        super().__init__(base.n, base.ground & ~contract & ~delete)
        self.base = base
        self.contracted = contract
        self.deleted = delete
        self._rc = base.rank(contract)

    def _rank_impl(self, x: int) -> int:
        return self.base.rank(x | self.contracted) - self._rc

    def rank(self, x: int | None = None) -> int:
        # delegate memoization to the base matroid
        if x is None:
            if self._full_rank is None:
                self._full_rank = self._rank_impl(self.ground)
            return self._full_rank
        if x & ~self.ground:
            raise IndexError("subset contains elements outside the ground set")
        return self._rank_impl(x)

    def closure(self, x: int) -> int:
        return self.base.closure(x | self.contracted) & self.ground


class DirectSumMatroid(Matroid):
    """Direct sum; parts are reindexed consecutively by live element order."""

    kind = "direct_sum"

    def __init__(self, parts: Sequence[Matroid]):
        if not parts:
            raise ValueError("direct sum needs at least one part")
        self.parts = tuple(parts)
        locate: list[tuple[int, int]] = []
        for pi, part in enumerate(self.parts):
            for e in part.elements():
                locate.append((pi, e))
        n = len(locate)
        super().__init__(n, (1 << n) - 1)
        self._locate = locate
        offsets = []
        off = 0
        for part in self.parts:
            offsets.append(off)
            off += part.size()
        self._offsets = offsets

    def _split(self, x: int) -> list[int]:
        local = [0] * len(self.parts)
        for g in bits(x):
            pi, e = self._locate[g]
            local[pi] |= 1 << e
        return local

    def _join(self, local: Sequence[int]) -> int:
        out = 0
        for pi, lm in enumerate(local):
            if not lm:
                continue
            part = self.parts[pi]
            g = self._offsets[pi]
            for e in part.elements():
                if lm & (1 << e):
                    out |= 1 << g
                g += 1
        return out

    def part_mask(self, pi: int) -> int:
        """Global mask of part pi's elements."""
        size = self.parts[pi].size()
        return ((1 << size) - 1) << self._offsets[pi]

    def _rank_impl(self, x: int) -> int:
        return sum(part.rank(lm) for part, lm in zip(self.parts, self._split(x)))

    def closure(self, x: int) -> int:
        local = self._split(x)
        return self._join([part.closure(lm) for part, lm in zip(self.parts, local)])


class ParallelExtensionMatroid(Matroid):
    """Base matroid plus fresh elements, each parallel to an existing one.

    Used by the stack projection procedure to make a contraction set
    disjoint from a stack before recursing.  Not part of the file format.
    """

    kind = "parallel_extension"

    def __init__(self, base: Matroid, originals: Sequence[int]):
        for e in originals:
            if not (base.ground >> e) & 1:
                raise IndexError("parallel extension of a dead element")
        super().__init__(base.n + len(originals), base.ground |
                         (((1 << len(originals)) - 1) << base.n))
        self.base = base
        self.originals = tuple(originals)

    def copy_index(self, i: int) -> int:
        return self.base.n + i

    def _project(self, x: int) -> int:
        lo = x & ((1 << self.base.n) - 1)
        hi = x >> self.base.n
        for i in bits(hi):
            lo |= 1 << self.originals[i]
        return lo

    def _rank_impl(self, x: int) -> int:
        return self.base.rank(self._project(x))

    def closure(self, x: int) -> int:
        cl_base = self.base.closure(self._project(x))
        out = cl_base
        for i, orig in enumerate(self.originals):
            if (cl_base >> orig) & 1:
                out |= 1 << (self.base.n + i)
        return out


def direct_sum(parts: Sequence[Matroid]) -> DirectSumMatroid:
    return DirectSumMatroid(parts)


def parallel_extension(base: Matroid, originals: Sequence[int]) -> ParallelExtensionMatroid:
    return ParallelExtensionMatroid(base, originals)


def validate_rank_axioms(m: Matroid, samples: int = 2000, seed: int = 0) -> bool:
    """Check the rank axioms, exhaustively for small ground sets.

    Exhaustive mode checks normalization plus, for every subset X and
    elements e, f outside X, unit increase and the local exchange
    inequality r(X+e) + r(X+f) >= r(X+e+f) + r(X); together these are
    equivalent to monotonicity and full submodularity.  Larger matroids
    get a seeded sample of subset pairs checked directly.
    """
    if m.rank(0) != 0:
        return False
    live = indices_of(m.ground)
    if len(live) <= EXHAUSTIVE_LIMIT:
        for x in submasks(m.ground):
            rx = m.rank(x)
            rest = live if x == 0 else [e for e in live if not (x >> e) & 1]
            singles = {}
            for e in rest:
                re = m.rank(x | (1 << e))
                if not rx <= re <= rx + 1:
                    return False
                singles[e] = re
            for i, e in enumerate(rest):
                be = 1 << e
                for f in rest[i + 1:]:
                    ref = m.rank(x | be | (1 << f))
                    if singles[e] + singles[f] < ref + rx:
                        return False
        return True
    rng = random.Random(seed)
    full = m.ground
    for _ in range(samples):
        x = 0
        y = 0
        for e in live:
            roll = rng.random()
            if roll < 0.4:
                x |= 1 << e
            if 0.2 < roll < 0.6:
                y |= 1 << e
        rx, ry = m.rank(x), m.rank(y)
        if rx + ry < m.rank(x | y) + m.rank(x & y):
            return False
        if x & y == x and rx > ry:
            return False
        e = rng.choice(live)
        re = m.rank(x | (1 << e))
        if not rx <= re <= rx + 1:
            return False
        if m.rank(full) < rx:
            return False
    return True
