"""Exact covering numbers, weighted covers, thickness, density bounds.

tau(M, a) and tau_weighted(M, d) are exact minimum set covers solved by
branch and bound over candidate flats.  Restricting candidates to flats
is lossless: replacing a cover member by its closure changes neither its
rank nor what it covers, and every flat of rank below the target extends
to one of target rank.  Everything that feeds an inequality check is
computed in exact integer or rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bits import bits, ksubsets
from .core import Matroid
from .errors import CapExceeded, PremiseError, UniformMinorDetected

INF = math.inf

# honest desk-scale boundary for the exact cover search
CANDIDATE_CAP = 5000


@dataclass(frozen=True)
class Cover:
    """A multiset of ground subsets whose union is E(M)."""

    sets: tuple[int, ...]
    matroid: Matroid

    def __len__(self):
        return len(self.sets)


@dataclass(frozen=True)
class CoverResult:
    value: int | float
    cover: Cover | None


@dataclass(frozen=True)
class DensityParams:
    """Shared parameter bundle of the density procedures."""

    a: int
    b: int
    q: int
    d: int
    t: int
    h: int
    lam: Fraction

    def __post_init__(self):
        if not 1 <= self.a < self.b:
            raise ValueError("need 1 <= a < b")
        if self.q < 2:
            raise ValueError("need q >= 2")
        if self.d < 1 or self.t < 1 or self.h < 0:
            raise ValueError("need d >= 1, t >= 1, h >= 0")
        if self.lam < 0:
            raise ValueError("need lam >= 0")


def cover_weight(m: Matroid, cover: Cover, d: int) -> int:
    """Sum of d^rank(F) over the members of the cover."""
    return sum(d ** m.rank(f) for f in cover.sets)


def _representative_universe(m: Matroid) -> int:
    """One element per parallel class; loops lie in every flat anyway."""
    reps = 0
    loops = m.loops()
    for p in m.flats_of_rank(1):
        nz = p & ~loops
        reps |= nz & -nz
    return reps


def _min_cover(universe: int, cands: list[int], weights: list[int]):
    """Deterministic branch-and-bound exact weighted set cover.

    Branches on the uncovered element hitting the fewest candidates;
    candidates at a node are ordered by descending fresh coverage, then
    ascending weight, then mask.  Pruned by a greedy upper bound and the
    counting bound ceil(remaining / max set size) * min weight.
    """
    if universe == 0:
        return 0, []
    by_elem: dict[int, list[int]] = {e: [] for e in bits(universe)}
    for ci, c in enumerate(cands):
        for e in bits(c & universe):
            by_elem[e].append(ci)
    if any(not lst for lst in by_elem.values()):
        return INF, None
    max_size = max(c.bit_count() for c in cands)
    min_weight = min(weights)

    # greedy incumbent
    uncovered = universe
    greedy: list[int] = []
    greedy_w = 0
    while uncovered:
        best = None
        for ci, c in enumerate(cands):
            fresh = (c & uncovered).bit_count()
            if fresh == 0:
                continue
            key = (-Fraction(fresh, weights[ci]), weights[ci], cands[ci])
            if best is None or key < best[0]:
                best = (key, ci)
        ci = best[1]
        greedy.append(ci)
        greedy_w += weights[ci]
        uncovered &= ~cands[ci]

    best_w = greedy_w
    best_sel = list(greedy)

    def dfs(uncovered: int, cur_w: int, chosen: list[int]):
        nonlocal best_w, best_sel
        if uncovered == 0:
            if cur_w < best_w:
                best_w = cur_w
                best_sel = list(chosen)
            return
        lb = -(-uncovered.bit_count() // max_size) * min_weight
        if cur_w + lb >= best_w:
            return
        e = min(bits(uncovered), key=lambda e: (len(by_elem[e]), e))
        options = sorted(
            by_elem[e],
            key=lambda ci: (-(cands[ci] & uncovered).bit_count(), weights[ci], cands[ci]))
        for ci in options:
            chosen.append(ci)
            dfs(uncovered & ~cands[ci], cur_w + weights[ci], chosen)
            chosen.pop()

    dfs(universe, 0, [])
    return best_w, best_sel


def tau(m: Matroid, a: int) -> CoverResult:
    """Exact a-covering number with an optimal cover certificate.

    Convention: the empty matroid has tau = 0; a = 0 with a nonloop
    present yields the +inf sentinel rather than an error.
    """
    if m.ground == 0:
        return CoverResult(0, Cover((), m))
    if a < 0:
        return CoverResult(INF, None)
    loops = m.loops()
    if a == 0:
        if m.ground & ~loops:
            return CoverResult(INF, None)
        return CoverResult(1, Cover((m.ground,), m))
    r = m.rank()
    if a >= r:
        return CoverResult(1, Cover((m.ground,), m))
    cands = m.flats_of_rank(a)
    if len(cands) > CANDIDATE_CAP:
        raise CapExceeded(f"tau: {len(cands)} candidate flats exceed cap {CANDIDATE_CAP}")
    universe = _representative_universe(m)
    value, sel = _min_cover(universe, cands, [1] * len(cands))
    if sel is None:
        return CoverResult(INF, None)
    return CoverResult(value, Cover(tuple(sorted(cands[i] for i in sel)), m))


def tau_weighted(m: Matroid, d: int) -> CoverResult:
    """Exact minimum d-weight of a cover, with a d-minimal certificate."""
    if d < 1:
        raise ValueError("need d >= 1")
    if m.ground == 0:
        return CoverResult(0, Cover((), m))
    r = m.rank()
    universe = _representative_universe(m)
    if universe == 0:
        # all loops: the single rank-0 set E(M)
        return CoverResult(1, Cover((m.ground,), m))
    cands: list[int] = []
    weights: list[int] = []
    n_points: dict[int, int] = {}
    for k in range(0, r + 1):
        w = d ** k
        for f in m.flats_of_rank(k):
            if f == 0:
                continue
            p = (f & universe).bit_count()
            if p == 0:
                continue
            # a flat never cheaper than covering its points one by one
            # can be dropped (points themselves are candidates)
            if k > 1 and w >= d * p:
                continue
            cands.append(f)
            weights.append(w)
            n_points[f] = p
    if len(cands) > CANDIDATE_CAP:
        raise CapExceeded(
            f"tau_weighted: {len(cands)} candidate flats exceed cap {CANDIDATE_CAP}")
    value, sel = _min_cover(universe, cands, weights)
    if sel is None:
        return CoverResult(INF, None)
    return CoverResult(value, Cover(tuple(sorted(cands[i] for i in sel)), m))


def is_d_thick(m: Matroid, x: int, d: int) -> bool:
    """True iff the restriction to x cannot be covered by fewer than d
    sets of rank below its own rank (tau with a negative index is +inf)."""
    if x == 0:
        raise ValueError("thickness of the empty set is undefined")
    sub = m.restrict(x)
    return tau(sub, sub.rank() - 1).value >= d


def _max_uniform_restriction(m: Matroid, k: int, cap: int | None) -> int:
    """Greedy inclusion-maximal X with M|X uniform of rank min(|X|, k).

    Elements are scanned in ascending order; adding e keeps uniformity
    iff every (k-1)-subset of X spans rank k with e.  Rejections stay
    valid as X grows, so one pass is maximal.  Raises when |X| hits cap.
    """
    x_list: list[int] = []
    x_mask = 0
    for e in m.elements():
        be = 1 << e
        if len(x_list) < k:
            ok = m.rank(x_mask | be) == len(x_list) + 1
        else:
            ok = all(m.rank(s | be) == k for s in ksubsets(x_mask, k - 1))
        if ok:
            x_list.append(e)
            x_mask |= be
            if cap is not None and len(x_list) >= cap:
                raise UniformMinorDetected(
                    f"found a U_{{{k},{cap}}} restriction", x_mask)
    return x_mask


def kdensity_cover(m: Matroid, a: int, b: int) -> Cover:
    """Constructive cover by rank-<=a sets of size <= C(b-1,a)^(r-a).

    Base case (rank a+1): grow a maximal uniform restriction X and take
    the closures of its a-subsets.  Inductive case: contract a nonloop,
    cover the contraction, then refine each lifted rank-(a+1) class by
    the base case.  Requires no U_{a+1,b} restriction to surface; if one
    does, UniformMinorDetected carries the witness.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    if m.ground == 0:
        return Cover((), m)
    r = m.rank()
    if r <= a:
        return Cover((m.ground,), m)
    if r == a + 1:
        x = _max_uniform_restriction(m, a + 1, cap=b)
        sets = sorted({m.closure(s) for s in ksubsets(x, a)})
        return Cover(tuple(sets), m)
    nl = m.nonloops()
    e = (nl & -nl).bit_length() - 1
    sub = kdensity_cover(m.contract(1 << e), a, b)
    out: set[int] = set()
    for f in sub.sets:
        g = f | (1 << e)
        mg = m.restrict(g)
        if mg.rank() <= a:
            out.add(g)
        else:
            out.update(kdensity_cover(mg, a, b).sets)
    return Cover(tuple(sorted(out)), m)


def thick_uniform_minor(m: Matroid, a: int, b: int, d: int) -> tuple[int, int]:
    """Find a U_{a+1,b}-minor in a d-thick matroid with d > C(b-1,a).

    Thickness survives contracting any nonloop, so contract down to rank
    a+1; there a maximal uniform restriction of size < b would cover the
    matroid with at most C(b-1,a) < d rank-a sets, beating thickness.
    Returns (contract mask, restriction mask with >= b elements).
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    if d <= math.comb(b - 1, a):
        raise PremiseError("need d > C(b-1, a)")
    if m.rank() <= a:
        raise PremiseError("need rank greater than a")
    if not is_d_thick(m, m.ground, d):
        raise PremiseError("matroid is not d-thick")
    cur = m
    contracted = 0
    while cur.rank() > a + 1:
        nl = cur.nonloops()
        e = nl & -nl
        contracted |= e
        cur = m.contract(contracted)
    x = _max_uniform_restriction(cur, a + 1, cap=None)
    if x.bit_count() < b:
        raise RuntimeError("thickness argument failed to produce b uniform elements")
    return contracted, x


@dataclass(frozen=True)
class ContractionReport:
    """Exact two-sided check of the contraction inequalities."""

    tau_a_m: int | float
    tau_a_mc: int | float
    cover_bound: Fraction
    cover_ok: bool
    tau_d_m: int | float
    tau_d_mc: int | float
    weighted_bound: Fraction
    weighted_ok: bool

    @property
    def ok(self) -> bool:
        return self.cover_ok and self.weighted_ok


def check_contraction_inequalities(m: Matroid, c: int, a: int, b: int, d: int) -> ContractionReport:
    """tau_a(M/C) >= C(b-1,a)^(-r(C)) tau_a(M) (valid for M in U(a,b))
    and tau^d(M/C) >= d^(-r(C)) tau^d(M), both in exact rationals."""
    rc = m.rank(c)
    mc = m.contract(c)
    ta_m = tau(m, a).value
    ta_mc = tau(mc, a).value
    td_m = tau_weighted(m, d).value
    td_mc = tau_weighted(mc, d).value
    cb = Fraction(ta_m, math.comb(b - 1, a) ** rc)
    wb = Fraction(td_m, d ** rc)
    return ContractionReport(
        tau_a_m=ta_m, tau_a_mc=ta_mc, cover_bound=cb, cover_ok=ta_mc >= cb,
        tau_d_m=td_m, tau_d_mc=td_mc, weighted_bound=wb, weighted_ok=td_mc >= wb)
