"""Command line front end.

Exit codes: 0 success / property holds, 1 verdict negative or property
violated (counterexamples are dumped as replayable .mtd files), 2 usage
or cap errors.  Every subcommand takes --json for a machine-readable
mirror of the same content.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, covers, harness, rep, stacks
from . import reduce as reductions
from .bits import indices_of, mask_of
from .errors import CapExceeded, PremiseError

OK, FAIL, USAGE = 0, 1, 2


def _emit(args, pairs: dict, blocks: list[str] | None = None) -> None:
    if getattr(args, "json", False):
        print(json.dumps(pairs, default=str))
        return
    for k, v in pairs.items():
        print(f"{k}={v}")
    for b in blocks or ():
        print(b, end="" if b.endswith("\n") else "\n")


def _parse_list(text: str) -> int:
    if not text.strip():
        return 0
    return mask_of(int(tok) for tok in text.replace(",", " ").split())


def _cover_block(m, cover) -> str:
    lines = ["cover"]
    for s in cover.sets:
        lines.append(f"  set rank={m.rank(s)}: " + " ".join(map(str, indices_of(s))))
    return "\n".join(lines)


def cmd_gen(args) -> int:
    params = tuple(int(p) for p in args.params)
    m = catalog.gen(args.family, params, seed=args.seed)
    header = f"family={args.family} params={list(params)} seed={args.seed} rng={catalog.RNG_ALGORITHM}"
    catalog.write_matroid(m, args.output, name=args.family, header=header)
    _emit(args, {"written": args.output, "n": m.size(), "rank": m.rank()})
    return OK


def cmd_tau(args) -> int:
    m = catalog.read_matroid(args.file)
    res = covers.tau(m, args.a)
    blocks = [_cover_block(m, res.cover)] if res.cover else []
    if getattr(args, "json", False):
        print(json.dumps({"tau": str(res.value),
                          "cover": [indices_of(s) for s in res.cover.sets] if res.cover else None}))
    else:
        _emit(args, {"tau": res.value}, blocks)
    return OK


def cmd_tauw(args) -> int:
    m = catalog.read_matroid(args.file)
    res = covers.tau_weighted(m, args.d)
    if getattr(args, "json", False):
        print(json.dumps({"tau_weighted": str(res.value),
                          "cover": [indices_of(s) for s in res.cover.sets] if res.cover else None}))
    else:
        blocks = [_cover_block(m, res.cover)] if res.cover else []
        _emit(args, {"tau_weighted": res.value}, blocks)
    return OK


def cmd_conn(args) -> int:
    m = catalog.read_matroid(args.file)
    x = _parse_list(args.x)
    y = _parse_list(args.y)
    conn = m.local_conn(x, y)
    _emit(args, {"local_conn": conn, "skew": conn == 0})
    return OK


def cmd_round(args) -> int:
    m = catalog.read_matroid(args.file)
    ok, pair = m.is_weakly_round()
    info: dict = {"weakly_round": ok}
    if not ok:
        info["violating_a"] = indices_of(pair[0])
        info["violating_b"] = indices_of(pair[1])
    if args.extract:
        alpha = Fraction(args.alpha)
        n = reductions.weakly_round_restriction(m, args.a, args.q, alpha)
        info["restriction"] = indices_of(n.ground)
        info["restriction_rank"] = n.rank()
        _emit(args, info)
        return OK
    _emit(args, info)
    return OK if ok else FAIL


def cmd_rep(args) -> int:
    m = catalog.read_matroid(args.file)
    res = rep.is_representable(m, args.q)
    info: dict = {"representable": res.representable}
    blocks = []
    if res.matrix is not None:
        rows = [" ".join(str(v) for v in row) for row in res.matrix.entries]
        blocks.append("matrix\n" + "\n".join("  " + r for r in rows))
        info["rows"] = res.matrix.rows
    _emit(args, info, blocks)
    return OK if res.representable else FAIL


def cmd_pg(args) -> int:
    m = catalog.read_matroid(args.file)
    verdict = rep.is_pg(m, args.n, args.q)
    _emit(args, {"is_pg": verdict, "points": m.epsilon(), "rank": m.rank()})
    return OK if verdict else FAIL


def cmd_stack(args) -> int:
    m = catalog.read_matroid(args.file)
    if args.action == "verify":
        if not args.parts:
            print("stack verify needs --parts", file=sys.stderr)
            return USAGE
        parts = tuple(_parse_list(p) for p in args.parts.split("|"))
        cert = stacks.StackCert(parts, args.q, args.t)
        check = stacks.verify_stack(m, cert)
        _emit(args, {"valid": check.ok, "reason": check.reason})
        return OK if check.ok else FAIL
    cert = stacks.find_stack(m, args.q, args.h, args.t)
    if cert is None:
        _emit(args, {"found": False})
        return FAIL
    if getattr(args, "json", False):
        print(json.dumps({"found": True, "q": cert.q, "t": cert.t,
                          "parts": [indices_of(p) for p in cert.parts]}))
    else:
        _emit(args, {"found": True}, [stacks.serialize_cert(cert)])
    return OK


def cmd_cover(args) -> int:
    m = catalog.read_matroid(args.file)
    cov = covers.kdensity_cover(m, args.a, args.b)
    import math

    bound = math.comb(args.b - 1, args.a) ** max(m.rank() - args.a, 0)
    union = 0
    for s in cov.sets:
        union |= s
    info = {"cover_size": len(cov.sets), "bound": bound,
            "covers_ground": union == m.ground,
            "within_bound": len(cov.sets) <= bound}
    if getattr(args, "json", False):
        info["sets"] = [indices_of(s) for s in cov.sets]
        print(json.dumps(info))
    else:
        _emit(args, info, [_cover_block(m, cov)])
    return OK if info["covers_ground"] and info["within_bound"] else FAIL


def cmd_verify(args) -> int:
    result = harness.run_suite(args.lemma, args.trials, args.seed)
    good, total = result.counts
    rows = []
    for t in result.trials:
        rows.append({"trial": t.index, "pass": t.passed, "detail": t.detail})
        if not t.passed and t.dump is not None:
            path = f"counterexample_{args.lemma}_trial{t.index}.mtd"
            try:
                catalog.write_matroid(t.dump, path, name=f"{args.lemma}_cx")
                rows[-1]["dump"] = path
            except ValueError:
                pass
    if getattr(args, "json", False):
        print(json.dumps({"lemma": args.lemma, "passed": good, "total": total,
                          "trials": rows}))
    else:
        for row in rows:
            line = f"trial={row['trial']} pass={row['pass']} {row['detail']}"
            if "dump" in row:
                line += f" dump={row['dump']}"
            print(line)
        print(f"lemma={args.lemma} passed={good}/{total}")
    return OK if result.passed else FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mdl", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("gen", help="emit a catalog matroid as a .mtd file")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    add_json(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tau", help="exact a-covering number with certificate")
    p.add_argument("file")
    p.add_argument("--a", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("tauw", help="exact minimum d-weight of a cover")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_tauw)

    p = sub.add_parser("conn", help="local connectivity and skewness of two sets")
    p.add_argument("file")
    p.add_argument("--x", required=True, help="comma separated element list")
    p.add_argument("--y", required=True)
    add_json(p)
    p.set_defaults(func=cmd_conn)

    p = sub.add_parser("round", help="weak roundness check / extraction")
    p.add_argument("file")
    p.add_argument("--extract", action="store_true")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--alpha", default="1", help="exact rational like 7/32")
    add_json(p)
    p.set_defaults(func=cmd_round)

    p = sub.add_parser("rep", help="GF(q)-representability verdict")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("pg", help="projective geometry recognition")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_pg)

    p = sub.add_parser("stack", help="verify or find stack certificates")
    p.add_argument("action", choices=["verify", "find"])
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--parts", help="pipe separated element lists: 0,1|2,3")
    add_json(p)
    p.set_defaults(func=cmd_stack)

    p = sub.add_parser("cover", help="constructive bounded cover")
    p.add_argument("mode", choices=["thm4"])
    p.add_argument("file")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="run a lemma property suite")
    p.add_argument("lemma", choices=sorted(harness.SUITES))
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    add_json(p)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except (CapExceeded, PremiseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
