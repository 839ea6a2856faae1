"""Command-line front end.

Subcommands: cf, pell, tuple, pairs, verify.  All output is JSON with big
integers rendered as decimal strings.  Exit codes: 0 = success / claim
confirmed, 1 = claim violated, 2 = usage or input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .contfrac import QuadIrr, convergents, expand
from .harness import CLAIMS, SweepConfig, deep_dec, run_claim
from .pellian import PellianProblem, solve_complete
from .zring import RingElem, check_tuple, find_admissible_pairs

_ELEM_RE = re.compile(r"^([+-]?\d+)(?:([+-]\d+)\*?w)?$")


def parse_elem(text: str, t: int) -> RingElem:
    """Parse 'a' or 'a+b*w' with w = sqrt(-t)."""
    m = _ELEM_RE.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse ring element {text!r}")
    re_part = int(m.group(1))
    im_part = int(m.group(2)) if m.group(2) else 0
    return RingElem(re_part, im_part, t)


def _emit(doc, compact: bool):
    if compact:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))


def cmd_cf(args) -> int:
    alpha = QuadIrr(args.d, args.s, args.t)
    exp = expand(alpha)
    upto = max(exp.preperiod_len + exp.period_len, 2)
    conv = convergents(exp, upto)
    doc = deep_dec({
        "input": {"d": args.d, "s": args.s, "t": args.t},
        "preperiod": exp.quotients[:exp.preperiod_len],
        "period": exp.quotients[exp.preperiod_len:],
        "preperiod_len": exp.preperiod_len,
        "period_len": exp.period_len,
        "convergents": [list(conv.pair(m)) for m in range(upto + 1)],
    })
    _emit(doc, args.json)
    return 0


def cmd_pell(args) -> int:
    prob = PellianProblem(args.D, args.N)
    oc = solve_complete(prob)
    doc = deep_dec({
        "D": args.D,
        "N": args.N,
        "verdict": oc.verdict,
        "method": oc.method,
        "witnesses": [list(w) for w in oc.witnesses],
        "search_bound_used": oc.search_bound_used,
    })
    _emit(doc, args.json)
    return 0


def cmd_tuple(args) -> int:
    elems = [parse_elem(e, args.t) for e in args.elements]
    report = check_tuple(elems, args.n, args.t)
    doc = deep_dec({
        "elements": [str(e) for e in report.elements],
        "n": report.n,
        "t": report.t,
        "verified": report.verified,
        "witnesses": {f"{i},{j}": str(w) for (i, j), w in report.witnesses.items()},
        "failing_pair": list(report.failing_pair) if report.failing_pair else None,
    })
    _emit(doc, args.json)
    return 0


def cmd_pairs(args) -> int:
    found = find_admissible_pairs(args.limit)
    doc = deep_dec({"limit": args.limit,
                    "pairs": [{"p": p, "k": k, "q": q, "l_exp": l}
                              for p, k, q, l in found]})
    _emit(doc, args.json)
    return 0


def cmd_verify(args) -> int:
    cfg = SweepConfig(
        p_max=args.p_max, k_max=args.k_max, y_max=args.y_max,
        c_max=args.c_max, n_max=args.n_max, j_max=args.j_max,
        limit=args.limit, samples=args.samples, seed=args.seed,
        workers=args.workers, out=args.out,
    )
    report = run_claim(args.claim_id, cfg)
    text = report.to_json(compact=args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.jsonl:
        for rec in report.body()["evidence"]:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        print(json.dumps({"claim_id": report.claim_id, "status": report.status},
                         sort_keys=True, separators=(",", ":")))
    else:
        print(text)
    return 0 if report.status == "CONFIRMED" else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pelltuples")
    ap.add_argument("--json", action="store_true",
                    help="compact single-line JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    p_cf = sub.add_parser("cf", help="continued fraction of (s+sqrt(d))/t")
    p_cf.add_argument("d", type=int)
    p_cf.add_argument("s", type=int)
    p_cf.add_argument("t", type=int)
    p_cf.set_defaults(func=cmd_cf)

    p_pell = sub.add_parser("pell", help="decide x^2 - D*y^2 = N")
    p_pell.add_argument("D", type=int)
    p_pell.add_argument("N", type=int)
    p_pell.set_defaults(func=cmd_pell)

    p_tuple = sub.add_parser("tuple", help="verify a D(n)-tuple in Z[sqrt(-t)]")
    p_tuple.add_argument("-n", type=int, required=True)
    p_tuple.add_argument("-t", type=int, default=0)
    p_tuple.add_argument("elements", nargs="+",
                         help="integers or 'a+b*w' with w=sqrt(-t)")
    p_tuple.set_defaults(func=cmd_tuple)

    p_pairs = sub.add_parser("pairs", help="list (p,k,q,l) with 2p^k = q^(2^l)+1")
    p_pairs.add_argument("--limit", type=int, default=50)
    p_pairs.set_defaults(func=cmd_pairs)

    p_verify = sub.add_parser("verify", help="run a claim sweep")
    p_verify.add_argument("claim_id", choices=sorted(CLAIMS))
    p_verify.add_argument("--p-max", type=int, default=50)
    p_verify.add_argument("--k-max", type=int, default=3)
    p_verify.add_argument("--y-max", type=int, default=10_000)
    p_verify.add_argument("--c-max", type=int, default=10_000)
    p_verify.add_argument("--n-max", type=int, default=20)
    p_verify.add_argument("--j-max", type=int, default=5)
    p_verify.add_argument("--limit", type=int, default=None)
    p_verify.add_argument("--samples", type=int, default=500)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--out", type=str, default=None)
    p_verify.add_argument("--jsonl", action="store_true",
                          help="stream evidence records as JSON lines")
    p_verify.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
