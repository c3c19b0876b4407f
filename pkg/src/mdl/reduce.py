"""Connectivity and roundness reductions.

Three procedures that trade ground set for structure: a dense restriction
with low connectivity to a given set, a weakly round restriction keeping
exponential density, and a contraction making one restriction spanning
while preserving two others.  Every numeric postcondition is re-verified
in exact arithmetic before the result is returned.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bits import bits, submasks
from .core import Matroid
from .covers import tau
from .errors import PremiseError

RESTRICTION_EQ_CAP = 12


def reduce_connectivity(m: Matroid, y: int, a: int, b: int) -> int:
    """Find X with tau_a(M|X) >= C(b-1,a)^(a - r(Y)) tau_a(M) and
    conn(X, Y) <= a; assumes M has no U_{a+1,b}-minor.

    Extends a basis of M|Y to a basis of M, contracts the complementary
    part, covers the contraction with rank-<=a sets and keeps the
    preimage of a best member: the cover has at most C(b-1,a)^(r(Y)-a)
    members, so a majority argument saves the stated density fraction.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    binom = math.comb(b - 1, a)
    tau_m = tau(m, a).value
    ry = m.rank(y)
    if ry <= a:
        return m.ground
    by = m.basis_of(y)
    extend = by
    cur_rank = m.rank(extend)
    r_need = m.rank()
    for e in bits(m.ground & ~y):
        if cur_rank == r_need:
            break
        if m.rank(extend | (1 << e)) > cur_rank:
            extend |= 1 << e
            cur_rank += 1
    ind = extend & ~by
    m1 = m.contract(ind)
    cover = tau(m1, a).cover
    # factor C(b-1,a)^(a-r(Y)) <= 1 here since r(Y) > a
    target = Fraction(tau_m, binom ** (ry - a))

    def verified(x: int) -> bool:
        if m.local_conn(x, y) > a:
            return False
        return tau(m.restrict(x), a).value >= target

    members = sorted(cover.sets, key=lambda f: (-f.bit_count(), f))
    best = members[0] | ind
    if verified(best):
        return best
    # the most-covering member can miss the density target; the member
    # maximizing tau of its preimage always meets it
    scored = sorted(
        cover.sets,
        key=lambda f: (-tau(m.restrict(f | ind), a).value, f))
    fallback = scored[0] | ind
    if not verified(fallback):
        raise RuntimeError("majority argument failed to verify; premise violated?")
    return fallback


def weakly_round_restriction(m: Matroid, a: int, q: int, alpha: Fraction) -> Matroid:
    """Weakly round restriction N with tau_a(N) >= alpha * q^r(N).

    Splits along a violating hyperplane pair; one side keeps at least
    half the covering number, which beats the q-fold drop of the rank
    bound.  Terminates because each split loses ground or rank.
    """
    alpha = Fraction(alpha)
    if q < 2:
        raise ValueError("need q >= 2")
    if tau(m, a).value < alpha * q ** m.rank():
        raise PremiseError("premise tau_a(M) >= alpha q^r(M) fails")
    cur = m
    while True:
        ok, pair = cur.is_weakly_round()
        if ok:
            break
        comp, hyper = pair
        bound = alpha * q ** cur.rank()
        t_comp = tau(cur.restrict(comp), a).value
        if 2 * t_comp >= bound:
            cur = cur.restrict(comp)
            continue
        t_h = tau(cur.restrict(hyper), a).value
        if 2 * t_h < bound:
            raise RuntimeError("neither side of the split kept half the cover number")
        cur = cur.restrict(hyper)
    if tau(cur, a).value < alpha * q ** cur.rank():
        raise RuntimeError("returned restriction lost the density premise")
    return cur


def _restriction_preserved(m: Matroid, c: int, x: int) -> bool:
    """(M/C)|X = M|X as rank functions, checked on every subset of X."""
    mc = m.contract(c)
    return all(mc.rank(z) == m.rank(z) for z in submasks(x))


def span_into(m: Matroid, x: int, y: int) -> Matroid:
    """Contract a maximal C avoiding X and Y so that both restrictions
    survive intact and Y spans the result; needs M weakly round and
    r(X) < r(Y)."""
    ok, _ = m.is_weakly_round()
    if not ok:
        raise PremiseError("matroid is not weakly round")
    if m.rank(x) >= m.rank(y):
        raise PremiseError("need r(X) < r(Y)")
    if x.bit_count() > RESTRICTION_EQ_CAP or y.bit_count() > RESTRICTION_EQ_CAP:
        raise PremiseError(
            f"restriction-equality check is exponential; cap {RESTRICTION_EQ_CAP}")
    c = 0
    for e in bits(m.ground & ~(x | y)):
        trial = c | (1 << e)
        if _restriction_preserved(m, trial, x) and _restriction_preserved(m, trial, y):
            c = trial
    n = m.contract(c)
    if n.rank(y) != n.rank():
        raise RuntimeError("maximal contraction left Y non-spanning; premise violated?")
    if n.closure(x) | n.closure(y) != n.ground:
        raise RuntimeError("closures of X and Y fail to cover the minor")
    return n
