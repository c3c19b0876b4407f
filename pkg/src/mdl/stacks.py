"""Stack certificates and the stack procedures.

A (q,h,t)-stack witness is an ordered list of pairwise disjoint subsets
F_1..F_h; layer i is the restriction of M/(F_1 u ... u F_{i-1}) to F_i
and must have rank between 2 and t and fail GF(q)-representability.
Certificates are verified against the matroid they claim to live in, and
every procedure here re-verifies its own output before returning it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import rep
from .bits import bits, indices_of, mask_of, submasks
from .core import Matroid, MinorMatroid, parallel_extension
from .covers import DensityParams, tau_weighted
from .errors import CapExceeded, PremiseError, cap_override

LAYER_BUDGET = 1_000_000


@dataclass(frozen=True)
class StackCert:
    """Ordered disjoint layer sets with the field order and rank cap."""

    parts: tuple[int, ...]
    q: int
    t: int

    @property
    def height(self) -> int:
        return len(self.parts)

    def union(self) -> int:
        u = 0
        for p in self.parts:
            u |= p
        return u


@dataclass(frozen=True)
class StackCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def verify_stack(m: Matroid, cert: StackCert, require_spanning: bool = False) -> StackCheck:
    """Check every certificate clause; report the first violated one.

    The layer union always spans the stack restriction it induces, so by
    default no spanning clause can fail (this keeps initial segments of
    valid certificates valid).  With require_spanning the union must
    additionally span all of M.
    """
    union = 0
    for i, f in enumerate(cert.parts, 1):
        if f == 0:
            return StackCheck(False, f"part {i} is empty")
        if f & ~m.ground:
            return StackCheck(False, f"part {i} contains dead elements")
        if f & union:
            return StackCheck(False, f"part {i} overlaps an earlier part")
        union |= f
    if require_spanning and m.rank(union) != m.rank():
        return StackCheck(False, "layer union does not span the matroid")
    cur = m
    for i, f in enumerate(cert.parts, 1):
        rk = cur.rank(f)
        if rk < 2:
            return StackCheck(False, f"layer {i} has rank {rk} < 2")
        if rk > cert.t:
            return StackCheck(False, f"layer {i} has rank {rk} > t={cert.t}")
        if rep.is_representable(cur.restrict(f), cert.q).representable:
            return StackCheck(False, f"layer {i} is GF({cert.q})-representable")
        cur = cur.contract(f)
    return StackCheck(True)


def layer_ranks(m: Matroid, parts: tuple[int, ...]) -> list[int]:
    out = []
    cur = m
    for f in parts:
        out.append(cur.rank(f))
        cur = cur.contract(f)
    return out


def certify(m: Matroid, parts: tuple[int, ...], q: int, t: int | None = None) -> StackCert:
    """Build a certificate (t defaults to the max layer rank) and verify it."""
    if parts and t is None:
        t = max(layer_ranks(m, parts))
    cert = StackCert(tuple(parts), q, t if t is not None else 2)
    check = verify_stack(m, cert)
    if not check.ok:
        raise RuntimeError(f"procedure produced an invalid certificate: {check.reason}")
    return cert


def serialize_cert(cert: StackCert) -> str:
    lines = [f"stack q={cert.q} t={cert.t}"]
    for p in cert.parts:
        lines.append("part " + " ".join(str(i) for i in indices_of(p)))
    return "\n".join(lines) + "\n"


def parse_cert(text: str) -> StackCert:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("stack "):
        raise ValueError("certificate must start with a 'stack' line")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    parts = []
    for ln in lines[1:]:
        if not ln.startswith("part "):
            raise ValueError(f"unexpected certificate line: {ln!r}")
        parts.append(mask_of(int(tok) for tok in ln.split()[1:]))
    return StackCert(tuple(parts), int(fields["q"]), int(fields["t"]))


def find_stack(m: Matroid, q: int, h: int, t: int) -> StackCert | None:
    """Search for a (q,h,t)-stack witness among flats of rank 2..t.

    Layer-by-layer closure replacement keeps this universe lossless:
    a non-representable restriction of rank k sits inside a flat of the
    same rank whose restriction is again non-representable.  "None" is
    exhaustive relative to this universe.
    """
    if t < 2 or h < 0:
        raise ValueError("need t >= 2 and h >= 0")
    budget = [cap_override(LAYER_BUDGET)]
    rep_cache: dict[tuple[int, int], bool] = {}

    def representable(cur: Matroid, prefix: int, fl: int) -> bool:
        key = (prefix, fl)
        got = rep_cache.get(key)
        if got is None:
            got = rep.is_representable(cur.restrict(fl), q).representable
            rep_cache[key] = got
        return got

    def recurse(cur: Matroid, prefix: int, chosen: list[int], depth: int):
        if depth == h:
            return tuple(chosen)
        if cur.rank() < 2 * (h - depth):
            return None
        for k in range(2, t + 1):
            for fl in cur.flats_of_rank(k):
                budget[0] -= 1
                if budget[0] < 0:
                    raise CapExceeded("find_stack exceeded its layer evaluation budget")
                if representable(cur, prefix, fl):
                    continue
                chosen.append(fl)
                out = recurse(cur.contract(fl), prefix | fl, chosen, depth + 1)
                if out is not None:
                    return out
                chosen.pop()
        return None

    parts = recurse(m, 0, [], 0)
    if parts is None:
        return None
    return certify(m, parts, q, t)


def _contract_mask(m: Matroid) -> int:
    return m.contracted if isinstance(m, MinorMatroid) else 0


def project_stack(m: Matroid, cert: StackCert, c: int, k: int) -> StackCert:
    """Survive a projection: a k(r(C)+1)-layer stack yields a k-layer
    stack of (M/C)|E(S) inside the original stack's ground.

    Recursion from the robustness proof: if C is skew to the first k
    layers they survive verbatim; otherwise contract those layers, which
    strictly drops r(C), recurse, and fold the contracted layers into the
    first returned one.  When C meets E(S), work in a parallel extension
    so the two are disjoint, then strip C from the result.
    """
    check = verify_stack(m, cert)
    if not check.ok:
        raise PremiseError(f"supplied certificate invalid: {check.reason}")
    rc = m.rank(c)
    if cert.height < k * (rc + 1):
        raise PremiseError(
            f"need at least k(r(C)+1) = {k * (rc + 1)} layers, have {cert.height}")
    union = cert.union()
    overlap = c & union
    if overlap:
        originals = indices_of(overlap)
        pe = parallel_extension(m, originals)
        c_work = (c & ~union) | mask_of(pe.copy_index(i) for i in range(len(originals)))
        host: Matroid = pe
    else:
        c_work = c
        host = m

    def recurse(cur: Matroid, parts: tuple[int, ...], cset: int) -> tuple[int, ...]:
        if cur.rank(cset) == 0:
            return parts[:k]
        first = 0
        for p in parts[:k]:
            first |= p
        if cur.local_conn(cset, first) == 0:
            return parts[:k]
        nxt = cur.contract(first)
        if nxt.rank(cset) >= cur.rank(cset):
            raise RuntimeError("projection recursion failed to reduce r(C)")
        sub = recurse(nxt, parts[k:], cset)
        return (first | sub[0],) + tuple(sub[1:])

    parts = recurse(host, cert.parts, c_work)
    stripped = tuple(p & ~c for p in parts)
    return certify(m.contract(c), stripped, cert.q)


def skew_stack(m: Matroid, cert: StackCert, x: int, a: int) -> tuple[int, StackCert]:
    """Contract C inside the stack so that h layers survive skew to X.

    Needs an ((a+1)h, q, t)-stack and local connectivity between X and
    the stack at most a; h is read off the certificate height.  Each
    non-skew step contracts the first h layers, which strictly drops the
    connectivity, so induction is on a.
    """
    if a < 0:
        raise PremiseError("need a >= 0")
    check = verify_stack(m, cert)
    if not check.ok:
        raise PremiseError(f"supplied certificate invalid: {check.reason}")
    h = cert.height // (a + 1)
    if h < 1:
        raise PremiseError(f"certificate height {cert.height} below a+1 = {a + 1}")
    conn = m.local_conn(x, cert.union())
    if conn > a:
        raise PremiseError(f"local connectivity {conn} exceeds a = {a}")

    def recurse(cur: Matroid, parts: tuple[int, ...], xcur: int, acur: int):
        first = 0
        for p in parts[:h]:
            first |= p
        if cur.local_conn(xcur, first) == 0:
            return 0, parts[:h]
        if acur == 0:
            raise RuntimeError("skewing recursion ran out of connectivity budget")
        nxt = cur.contract(first)
        xnxt = xcur & ~first
        rest = parts[h:h + acur * h]
        rest_union = 0
        for p in rest:
            rest_union |= p
        if nxt.local_conn(xnxt, rest_union) > acur - 1:
            raise RuntimeError("connectivity failed to decrease after contraction")
        c0, res = recurse(nxt, rest, xnxt, acur - 1)
        return first | c0, res

    c, res = recurse(m, cert.parts[:(a + 1) * h], x, a)
    out = certify(m.contract(c), res, cert.q, t=cert.t)
    final_conn = m.contract(c).local_conn(x & ~c, out.union())
    if final_conn != 0:
        raise RuntimeError(f"skewing postcondition failed: local connectivity {final_conn}")
    return c, out


def alpha_getstack(params: DensityParams) -> Fraction:
    """Density threshold recursion: alpha(0) = lam and
    alpha(h) = d^(a+1) * alpha(h-1) taken at lam * q^(a+1)."""
    a, d, q = params.a, params.d, params.q

    def recur(h: int, lam: Fraction) -> Fraction:
        if h == 0:
            return lam
        return d ** (a + 1) * recur(h - 1, lam * q ** (a + 1))

    return recur(params.h, Fraction(params.lam))


@dataclass(frozen=True)
class GetstackResult:
    minor: Matroid
    cert: StackCert


@dataclass(frozen=True)
class GetstackFailure:
    reason: str

    def __bool__(self):
        return False


DensityOracle = Callable[[Matroid], int | Fraction]


def exact_density_oracle(d: int) -> DensityOracle:
    return lambda m: tau_weighted(m, d).value


def _claim_step(cur: Matroid, e: int, q: int, d: int, a: int) -> int | None:
    """Locate X with rank <= a+1 whose restriction is not
    GF(q)-representable, via d-minimal covers of M and M/e.

    A cover member of rank >= 2 is d-thick, hence carries a long-line
    minor (Case 2); if both covers use only rank-1 sets, some line
    through e must hold q+1 further points (Case 1).  Candidates are
    verified against the representability oracle before being returned.
    """
    be = 1 << e
    cov_m = tau_weighted(cur, d).cover
    cov_me = tau_weighted(cur.contract(be), d).cover
    contraction = cur.contract(be)
    for fl in cov_m.sets:
        if cur.rank(fl) >= 2:
            if not rep.is_representable(cur.restrict(fl), q).representable:
                return fl
    for fl in cov_me.sets:
        if contraction.rank(fl) >= 2:
            x = fl | be
            if not rep.is_representable(cur.restrict(x), q).representable:
                return x
    for ln in cur.flats_of_rank(2):
        if (ln >> e) & 1 and cur.restrict(ln).epsilon() >= q + 2:
            if not rep.is_representable(cur.restrict(ln), q).representable:
                return ln
    return None


def getstack(m: Matroid, params: DensityParams,
             density_oracle: DensityOracle | None = None) -> GetstackResult | GetstackFailure:
    """Find a contraction-minor N with an (h, q, a+1)-stack restriction
    and tau^d(N) >= lam * q^r(N), or fail explicitly.

    The density oracle supplies tau^d values; when the input is small
    enough for the exact solver, the oracle is spot-checked against it
    and an inconsistency is an error, not a failure.
    """
    a, b, q, d, h = params.a, params.b, params.q, params.d, params.h
    lam = Fraction(params.lam)
    if d <= max(q + 1, math.comb(b - 1, a)):
        raise PremiseError("need d > max(q+1, C(b-1,a))")
    if lam < 1:
        raise PremiseError("the recursion is stated for lam >= 1")
    oracle = density_oracle or exact_density_oracle(d)
    if density_oracle is not None:
        try:
            exact = tau_weighted(m, d).value
            if oracle(m) != exact:
                raise ValueError(
                    f"density oracle disagrees with exact tau^d: {oracle(m)} != {exact}")
        except CapExceeded:
            pass
    alpha = alpha_getstack(params)
    if oracle(m) < alpha * q ** m.rank():
        return GetstackFailure("premise not met: tau^d(M) < alpha * q^r(M)")
    if h == 0:
        return GetstackResult(m, StackCert((), q, a + 1))

    cur = m
    while True:
        for e in bits(cur.nonloops()):
            nxt = cur.contract(1 << e)
            if oracle(nxt) >= alpha * q ** nxt.rank():
                cur = nxt
                break
        else:
            break
    nl = cur.nonloops()
    if nl == 0:
        return GetstackFailure("premise degenerate: contraction-minimal minor has no nonloop")
    e = (nl & -nl).bit_length() - 1
    x = _claim_step(cur, e, q, d, a)
    if x is None:
        return GetstackFailure(
            "claim failed: no non-representable set of rank <= a+1 located")
    sub_params = DensityParams(a=a, b=b, q=q, d=d, t=params.t, h=h - 1,
                               lam=lam * q ** (a + 1))
    deeper = getstack(cur.contract(x), sub_params, oracle)
    if isinstance(deeper, GetstackFailure):
        return GetstackFailure(f"recursion at h={h - 1}: {deeper.reason}")
    cur_x = cur.contract(x)
    c_rel = _contract_mask(deeper.minor) & ~_contract_mask(cur_x)
    bc = cur_x.basis_of(c_rel)
    n = cur.contract(bc)
    cert = certify(n, (x,) + deeper.cert.parts, q, t=a + 1)
    if oracle(n) < lam * q ** n.rank():
        return GetstackFailure("result failed the final density check")
    return GetstackResult(n, cert)


@dataclass(frozen=True)
class NoStackReport:
    h: int
    results: dict[int, StackCert | None]

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.results.values())


def check_no_stack_in_projection(m: Matroid, x: int, q: int, h: int,
                                 t_max: int) -> NoStackReport:
    """Premise-checked search: M \\ X a projective geometry (up to
    simplification), r(X) <= h; then M/X must carry no (q,h+1)-stack.

    Runs find_stack for each t up to t_max; "no stack" is relative to
    the flat candidate universe and the bounded t range.
    """
    if m.rank(x) > h:
        raise PremiseError(f"rank of X is {m.rank(x)} > h = {h}")
    if not rep.is_pg(m.delete(x), m.rank(), q):
        raise PremiseError("M \\ X does not simplify to the projective geometry")
    mx = m.contract(x)
    results: dict[int, StackCert | None] = {}
    for t in range(2, t_max + 1):
        results[t] = find_stack(mx, q, h + 1, t)
    return NoStackReport(h, results)


@dataclass(frozen=True)
class FlatResult:
    minor: Matroid
    pg_restriction: int
    flat: int


@dataclass(frozen=True)
class FlatFailure:
    reason: str

    def __bool__(self):
        return False


HALF_CONN_GROUND_CAP = 15


def _half_conn_holds(m: Matroid, r_mask: int, y: int) -> bool:
    """2 * conn(X, Y) <= r(X) for every X inside the geometry mask."""
    ry = m.rank(y)
    for xsub in submasks(r_mask):
        rx = m.rank(xsub)
        if 2 * (rx + ry - m.rank(xsub | y)) > rx:
            return False
    return True


def _constrained_stack(m1: Matroid, r_mask: int, q: int, k: int):
    """Deepest (q,j,k)-stack of m1, j <= k, whose layers have bases in R."""
    budget = [cap_override(LAYER_BUDGET)]

    def recurse(cur: Matroid, chosen: list[int], depth: int):
        best = tuple(chosen)
        if depth == k:
            return best
        for kk in range(2, k + 1):
            for fl in cur.flats_of_rank(kk):
                budget[0] -= 1
                if budget[0] < 0:
                    raise CapExceeded("constrained stack search budget exhausted")
                if cur.rank(fl & r_mask) != kk:
                    continue
                if rep.is_representable(cur.restrict(fl), q).representable:
                    continue
                chosen.append(fl)
                deeper = recurse(cur.contract(fl), chosen, depth + 1)
                chosen.pop()
                if len(deeper) > len(best):
                    best = deeper
                if len(best) == k:
                    return best
        return best

    return recurse(m1, [], 0)


def find_low_conn_flat(m: Matroid, r_mask: int, cert: StackCert,
                       k: int) -> FlatResult | FlatFailure:
    """Produce (M', R', K): a minor with a spanning geometry restriction
    and a rank-k flat at most half-connected to every subset of it.

    First grows a maximal J with the half-connectivity property; if its
    rank reaches k, a rank-k subflat of cl(J) answers directly.
    Otherwise the layered construction over a deepest R-based stack of
    M/J is attempted; hypotheses that cannot be established are reported
    as an explicit failure.  Any success is re-verified exhaustively
    over all subsets of the returned geometry.
    """
    q = cert.q
    if r_mask.bit_count() > HALF_CONN_GROUND_CAP:
        raise CapExceeded(
            f"geometry restriction has {r_mask.bit_count()} elements > "
            f"{HALF_CONN_GROUND_CAP}; the universal check is exponential in it")
    if k < 0:
        raise ValueError("need k >= 0")
    check = verify_stack(m, cert)
    if not check.ok:
        raise PremiseError(f"supplied certificate invalid: {check.reason}")
    if cert.height < k ** 4:
        raise PremiseError(f"need a stack of k^4 = {k ** 4} layers, have {cert.height}")
    # R need not span M; the half-connectivity postcondition is what
    # gets verified on success
    if not rep.is_pg(m.restrict(r_mask), m.rank(r_mask), q):
        raise PremiseError("R is not a projective geometry restriction")
    if k == 0:
        return FlatResult(m, r_mask, m.closure(0))

    j = 0
    for e in bits(m.ground & ~r_mask):
        be = 1 << e
        if _half_conn_holds(m, r_mask, j | be):
            j |= be
    if m.rank(j) >= k:
        bj = m.basis_of(j)
        kb = 0
        for e in bits(bj):
            kb |= 1 << e
            if kb.bit_count() == k:
                break
        flat = m.closure(kb)
        if not _half_conn_holds(m, r_mask, flat):
            raise RuntimeError("grown flat failed the half-connectivity re-check")
        return FlatResult(m, r_mask, flat)

    m1 = m.contract(j)
    parts = _constrained_stack(m1, r_mask, q, k)
    if len(parts) < k:
        return FlatFailure(
            f"maximal stack with layer bases inside R has {len(parts)} < k = {k} "
            "layers; deriving the contradiction needs the full asymptotic premise")
    return _layered_low_conn_flat(m1, r_mask, parts, q, k)


def _layered_low_conn_flat(m1: Matroid, r_mask: int, parts: tuple[int, ...],
                           q: int, k: int) -> FlatResult | FlatFailure:
    """Layered construction: one fresh non-parallel element per layer.

    Walks the k layers bottom-up, picking from each a nonloop of the
    contracted layer that is not parallel to a nonloop of the remaining
    geometry; the union is independent, and its closure is the flat.
    """
    rm = m1.restrict(r_mask)
    bases = []
    cur = m1
    for f in parts:
        lb = cur.basis_of(f & r_mask)
        if cur.rank(lb) != cur.rank(f):
            return FlatFailure("a layer lost its basis inside R after contraction")
        bases.append(lb)
        cur = cur.contract(f)
    prefixes = [0]
    for f in parts:
        prefixes.append(prefixes[-1] | f)
    kmask = 0
    for i in range(k - 1, -1, -1):
        mi = m1.contract(prefixes[i]) if prefixes[i] else m1
        # remaining geometry: closures of the layer bases not yet contracted
        tail = 0
        for bmask in bases[i:]:
            tail |= bmask
        r_i = rm.closure(tail) if tail else rm.closure(0)
        r_i_nonloops = [fe for fe in bits(r_i) if mi.rank(1 << fe) == 1]
        pick = None
        for e in bits(parts[i]):
            be = 1 << e
            if mi.rank(be) != 1:
                continue
            if all(mi.rank(be | (1 << fe)) == 2 for fe in r_i_nonloops):
                pick = e
                break
        if pick is None:
            return FlatFailure(
                f"layer {i + 1} has no nonloop avoiding parallelism with R_i")
        kmask |= 1 << pick
        if mi.rank(kmask) != kmask.bit_count():
            return FlatFailure("chosen elements failed independence")
    all_bases = 0
    for bm in bases:
        all_bases |= bm
    r0 = rm.closure(all_bases)
    if m1.rank(r0) != m1.rank() or not rep.is_pg(m1.restrict(r0), m1.rank(), q):
        return FlatFailure("R_0 is not a spanning geometry of the contracted minor")
    flat = m1.closure(kmask)
    if m1.rank(flat) != k:
        return FlatFailure(f"constructed flat has rank {m1.rank(flat)} != k")
    if not _half_conn_holds(m1, r0, flat):
        return FlatFailure("constructed flat failed the half-connectivity check")
    return FlatResult(m1, r0, flat)
