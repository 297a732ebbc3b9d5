"""Command-line front end emitting JSON run reports.

Exit codes: 0 verified success, 1 verification failure, 2 usage or input
errors, 3 enumeration budget exceeded.  Human-readable diagnostics go to
stderr; the JSON report goes to stdout or to --out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .errors import (
    BudgetExceededError, FamilyFormatError, ParameterError, VerificationError,
)
from .families import GroundSpec, SetFamily, mask_elements, read_family
from .compression import compress_pair_to_fixed_point, compress_to_fixed_point, is_compressed
from .hereditary import enumerate_downsets, lemma2_sweep
from .prooflab import build_alteration, find_conflicts, slice_family
from .search import (
    max_product_pair, verify_theorem1, verify_theorem4, verify_theorem5,
)

STRATEGY_CHOICES = ("auto", "exhaustive", "galois", "antichain")


def family_json(f: SetFamily) -> dict:
    return {"n": f.ground_n,
            "members": [list(mask_elements(m)) for m in f.member_bits]}


def search_result_json(res) -> dict:
    return {
        "max_product": res.max_product,
        "witness_a": family_json(res.witness_a),
        "witness_b": family_json(res.witness_b),
        "bound": res.bound,
        "equality": res.equality,
        "nodes_explored": res.nodes_explored,
        "strategy": res.strategy,
    }


def k_result_json(res) -> dict:
    return {
        "max_product": res.max_product,
        "witnesses": [family_json(w) for w in res.witnesses],
        "bound": res.bound,
        "equality": res.equality,
    }


def trace_json(trace) -> list:
    return [{"i": s.pair.i, "j": s.pair.j,
             "potential_before": s.potential_before,
             "potential_after": s.potential_after}
            for s in trace.steps]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossfam",
        description="Exact verification runs for cross-intersecting family bounds.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH",
                        help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sweeps (recorded in the report)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap (current kernels run one worker)")
    sub = parser.add_subparsers(dest="command", required=True)

    vb = sub.add_parser("verify-bounded", parents=[common],
                        help="exact product bound over ([m] choose <= r) x ([n] choose <= s)")
    vb.add_argument("--m", type=int, required=True)
    vb.add_argument("--n", type=int, required=True)
    vb.add_argument("--r", type=int, required=True)
    vb.add_argument("--s", type=int, required=True)
    vb.add_argument("--strategy", choices=STRATEGY_CHOICES, default="auto")

    vh = sub.add_parser("verify-hereditary", parents=[common],
                        help="sweep compressed hereditary grounds over [n]")
    vh.add_argument("--n", type=int, required=True)
    vh.add_argument("--all-pairs", action="store_true",
                    help="all ordered ground pairs instead of each ground with itself")
    vh.add_argument("--strategy", choices=STRATEGY_CHOICES, default="auto")

    vk = sub.add_parser("verify-k", parents=[common],
                        help="k-fold product bound over explicit hereditary compressed grounds")
    vk.add_argument("--grounds", nargs="+", required=True, metavar="FILE")

    cp = sub.add_parser("compress", parents=[common],
                        help="drive a family (or a cross-intersecting pair) to its fixed point")
    cp.add_argument("--in", dest="infile", metavar="FILE")
    cp.add_argument("--in-a", dest="in_a", metavar="FILE")
    cp.add_argument("--in-b", dest="in_b", metavar="FILE")

    pl = sub.add_parser("prooflab", parents=[common],
                        help="replay the alteration construction on a compressed pair")
    pl.add_argument("--in-a", dest="in_a", required=True, metavar="FILE")
    pl.add_argument("--in-b", dest="in_b", required=True, metavar="FILE")
    pl.add_argument("--ground-a", dest="ground_a", metavar="FILE",
                    help="optional hereditary compressed ground for the A side")
    pl.add_argument("--ground-b", dest="ground_b", metavar="FILE")

    lm = sub.add_parser("lemma2", parents=[common],
                        help="star-halving sweep over all downsets of [n]")
    lm.add_argument("--n", type=int, required=True)

    se = sub.add_parser("search", parents=[common],
                        help="raw exact product search over two family files")
    se.add_argument("--ground-a", dest="ground_a", required=True, metavar="FILE")
    se.add_argument("--ground-b", dest="ground_b", required=True, metavar="FILE")
    se.add_argument("--strategy", choices=STRATEGY_CHOICES, default="auto")
    return parser


def _cmd_verify_bounded(args):
    res = verify_theorem1(args.m, args.n, args.r, args.s, strategy=args.strategy)
    return search_result_json(res), False


def _cmd_verify_hereditary(args):
    catalog = enumerate_downsets(args.n, compressed_only=True)
    fams = catalog.families
    if args.all_pairs:
        pairs = [(g, h) for g in fams for h in fams]
    else:
        pairs = [(g, g) for g in fams]
    checked = 0
    for g, h in pairs:
        verify_theorem4(g, h, strategy=args.strategy)
        checked += 1
    results = {
        "n": args.n,
        "catalog_size": len(fams),
        "all_pairs": bool(args.all_pairs),
        "pairs_checked": checked,
        "violations": 0,
    }
    return results, False


def _cmd_verify_k(args):
    grounds = []
    for path in args.grounds:
        fam = read_family(path)
        GroundSpec.from_family(fam, validate=True)
        grounds.append(fam)
    res = verify_theorem5(grounds)
    return k_result_json(res), False


def _cmd_compress(args):
    if args.infile and not (args.in_a or args.in_b):
        fam = read_family(args.infile)
        out, trace = compress_to_fixed_point(fam)
        results = {
            "mode": "single",
            "initial": family_json(fam),
            "final": family_json(out),
            "steps": trace_json(trace),
            "is_compressed": is_compressed(out),
            "size_preserved": len(out) == len(fam),
        }
    elif args.in_a and args.in_b and not args.infile:
        a = read_family(args.in_a)
        b = read_family(args.in_b)
        out_a, out_b, trace = compress_pair_to_fixed_point(a, b)
        results = {
            "mode": "pair",
            "initial": [family_json(a), family_json(b)],
            "final": [family_json(out_a), family_json(out_b)],
            "steps": trace_json(trace),
            "is_compressed": is_compressed(out_a) and is_compressed(out_b),
            "size_preserved": (len(out_a), len(out_b)) == (len(a), len(b)),
        }
    else:
        raise ParameterError("use either --in FILE or both --in-a and --in-b")
    return results, False


def _cmd_prooflab(args):
    a = read_family(args.in_a)
    b = read_family(args.in_b)
    ground_a = read_family(args.ground_a) if args.ground_a else None
    ground_b = read_family(args.ground_b) if args.ground_b else None
    cs = find_conflicts(a, b)
    sa = slice_family(a)
    sb = slice_family(b)
    results = {
        "ground_n": a.ground_n,
        "k": cs.k,
        "r": cs.r,
        "slices": {
            "a0": family_json(sa.f0), "a1": family_json(sa.f1),
            "b0": family_json(sb.f0), "b1": family_json(sb.f1),
        },
        "conflict_pairs": [
            {"a": list(wa.elements()), "b": list(wb.elements())}
            for wa, wb in cs.pairs],
        "alteration": None,
    }
    if cs.k >= 1:
        ledger = build_alteration(cs, a, b, ground_a=ground_a, ground_b=ground_b)
        alt = {
            "primed": {
                "a0p": family_json(ledger.a0p), "a1p": family_json(ledger.a1p),
                "b0p": family_json(ledger.b0p), "b1p": family_json(ledger.b1p),
            },
            "double_primed": None,
            "sizes": ledger.sizes,
            "identities": ledger.size_identity_checks(),
            "cross_checks": ledger.altered_cross_checks(),
            "induction_inequalities": ledger.induction_inequalities(),
        }
        if ledger.a0pp is not None:
            alt["double_primed"] = {
                "a0pp": family_json(ledger.a0pp), "a1pp": family_json(ledger.a1pp),
                "b0pp": family_json(ledger.b0pp), "b1pp": family_json(ledger.b1pp),
            }
        results["alteration"] = alt
    return results, False


def _cmd_lemma2(args):
    results = lemma2_sweep(args.n)
    return results, results["violations"] > 0


def _cmd_search(args):
    fa = read_family(args.ground_a)
    fb = read_family(args.ground_b)
    res = max_product_pair(fa, fb, strategy=args.strategy)
    return search_result_json(res), False


_HANDLERS = {
    "verify-bounded": _cmd_verify_bounded,
    "verify-hereditary": _cmd_verify_hereditary,
    "verify-k": _cmd_verify_k,
    "compress": _cmd_compress,
    "prooflab": _cmd_prooflab,
    "lemma2": _cmd_lemma2,
    "search": _cmd_search,
}


def _parameters_json(args) -> dict:
    skip = {"command", "out"}
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        params[key.replace("_", "-")] = value
    return params


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.threads < 1:
        print("crossfam: --threads must be >= 1", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        results, failed = _HANDLERS[args.command](args)
    except (ParameterError, FamilyFormatError) as exc:
        print(f"crossfam: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"crossfam: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"crossfam: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"crossfam: VERIFICATION FAILURE: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "parameters": _parameters_json(args),
        "results": results,
        "wall_time_ms": int((time.perf_counter() - t0) * 1000),
        "version": __version__,
    }
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"crossfam: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    if failed:
        print("crossfam: VERIFICATION FAILURE: sweep reported violations",
              file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
