"""
Command-line entry point.

Every subcommand prints one JSON envelope (sorted keys, 12 significant
digits) or a CSV projection of the same numbers. Exit codes: 0 success,
1 usage or parse error, 2 inadmissible pattern, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from fractions import Fraction

from . import asymptotics, census, hfunction, singular, symmetric
from .errors import CapacityError, DomainError, InadmissibleError
from .patterns import Pattern, PatternParseError

log = logging.getLogger("hltuples")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CAPACITY = 0, 1, 2, 3
H_STATS_CEILING = 10**7

TWIN_FORM_WARNING = "two-element closed form takes the product over odd primes dividing d"
MOMENT_WARNING = (
    "exact second moment of h is ~2.63985 (empirically confirmed); "
    "the derived variances follow from that value, not from 2.649"
)
MAX_WARNING = "max h(n) ~ c ln ln x: claimed c = 2, Mertens' theorem gives c = exp(gamma)/(2*C2) ~ 1.349"
LEMMA_WARNING = "small-prime factor bound prod(1 - 1/p) is not implied by the per-prime bounds; checked per instance"
PRIMORIAL_WARNING = "primorial slope: claimed 4*C2^2 ~ 1.7432, Mertens' theorem gives exp(gamma) ~ 1.7811"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _num(x):
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return None
        return float(f"{x:.12g}")
    if isinstance(x, Fraction):
        return {"numerator": x.numerator, "denominator": x.denominator, "value": _num(x.numerator / x.denominator)}
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _envelope(command, params, results, warnings=()):
    return {"command": command, "parameters": _num(params), "results": _num(results), "warnings": list(warnings)}


def _emit(env, fmt, rows=None, header=None, out=None):
    out = out or sys.stdout
    if fmt == "csv" and rows is not None:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if v is None else (f"{v:.12g}" if isinstance(v, float) else v) for v in r])
        for msg in env["warnings"]:
            print(f"warning: {msg}", file=sys.stderr)
    else:
        out.write(json.dumps(env, sort_keys=True, indent=2) + "\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


def _int(text: str) -> int:
    # accepts 1e7 style
    v = float(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(v)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get("HLTUPLES_THREADS", "1")))


# ------------------------------------------------------------------ commands


def cmd_constant(args):
    pat = Pattern.parse(args.pattern)
    val = singular.singular_series(pat, args.truncation)
    res = {
        "pattern": str(pat),
        "k": pat.k,
        "diameter": pat.diameter,
        "value": val.value,
        "tail_bound": val.tail_bound,
        "truncation_prime": val.truncation_prime,
        "method": val.method,
    }
    warnings = []
    if pat.k == 2:
        closed = singular.twin_constant_for(pat.diameter)
        res["closed_form"] = closed.value
        warnings.append(TWIN_FORM_WARNING)
    env = _envelope("constant", {"pattern": args.pattern, "truncation": args.truncation}, res, warnings)
    _emit(env, args.format, [[res["pattern"], res["value"], res["tail_bound"], res["truncation_prime"]]],
          ["pattern", "value", "tail_bound", "truncation_prime"])


def cmd_h_stats(args):
    N = args.n_max
    if N > H_STATS_CEILING:
        raise DomainError(f"--n-max above {H_STATS_CEILING}")
    threads = _threads(args)
    moments = _ints(args.moments)
    rows = []
    mom = {}
    for k in moments:
        log.info("moment %d over n <= %d", k, N)
        rep = hfunction.empirical_moment(k, N, threads)
        mom[str(k)] = {"theoretical": rep.theoretical, "empirical": rep.empirical, "gap": rep.gap}
        rows.append([f"M{k}", rep.theoretical, rep.empirical])
    mx = hfunction.max_scan(N, threads)
    snap = hfunction.distribution_snapshot(N, threads)
    if args.distribution:
        snap.to_csv(args.distribution)
    median, mean = snap.median(), snap.mean()
    res = {
        "moments": mom,
        "mean_f": hfunction.mean_f(),
        "variance_h": hfunction.variance_h(),
        "variance_f": hfunction.variance_f(),
        "max": {"argmax": mx.argmax, "h": mx.value, "ratio_lnlnx": mx.ratio_lnlnx,
                "claimed_coefficient": mx.claimed_coefficient, "mertens_coefficient": mx.mertens_coefficient},
        "median": median,
        "empirical_mean": mean,
        "right_skewed": float(median) < mean,
    }
    rows += [["variance_h", res["variance_h"], None], ["variance_f", res["variance_f"], None],
             ["max", float(mx.value), mx.argmax]]
    env = _envelope("h-stats", {"n_max": N, "moments": moments, "distribution": args.distribution}, res,
                    [MOMENT_WARNING, MAX_WARNING])
    _emit(env, args.format, rows, ["quantity", "theoretical_or_value", "empirical_or_argmax"])


def cmd_census(args):
    pat = Pattern.parse(args.pattern)
    cps = _ints(args.checkpoints) if args.checkpoints else None
    c = census.count_tuples(pat, args.x, cps, count_mode=args.count_mode, threads=_threads(args))
    rows = [[r.x, r.observed, r.cramer, r.parity, r.hl_ratio, r.hl_integral] for r in c.rows]
    res = {
        "pattern": str(pat),
        "singular_series": c.singular_series,
        "count_mode": c.count_mode,
        "rows": [dict(zip(census_header, r)) for r in rows],
        "deviation": census.deviation_report(c),
    }
    env = _envelope("census", {"pattern": args.pattern, "x": args.x, "checkpoints": cps, "count_mode": args.count_mode}, res)
    _emit(env, args.format, rows, census_header)


census_header = ["x", "observed", "cramer", "parity", "hl_ratio", "hl_integral"]


def cmd_asymptotics(args):
    if args.mode == "assertion1":
        qs = _ints(args.q_points)
        rep = asymptotics.assertion1_constant(qs)
        dec = asymptotics.assertion1_decomposition(qs[-1])
        res = {
            "q_points": list(rep.q_points),
            "ratios": list(rep.ratios),
            "stability": rep.stability,
            "claimed": rep.claimed,
            "mertens": rep.mertens,
            "gap_to_claimed": rep.gap_to_claimed,
            "gap_to_mertens": rep.gap_to_mertens,
            "K": dec.K,
            "K_bound": dec.K_bound,
            "exp_K": dec.exp_K,
            "S1_minus_lnlnq": dec.S1.partial - dec.lnlnq,
        }
        env = _envelope("asymptotics", {"mode": "assertion1", "q_points": qs}, res, list(rep.warnings))
        rows = [[q, r] for q, r in zip(rep.q_points, rep.ratios)]
        _emit(env, args.format, rows, ["q", "L_over_lnq"])
        return
    scan = asymptotics.sequence_scan(args.sequence, args.n_max, log_space=args.log_space)
    res = {
        "sequence": scan.sequence,
        "points": [{"n": p.n, "d": p.d_description, "C": p.C} for p in scan.points],
        "truncated": scan.truncated,
        "slope": scan.slope,
        "stats": scan.stats,
    }
    warnings = [PRIMORIAL_WARNING] if args.sequence == "primorial" else []
    if scan.truncated:
        warnings.append("primorial scan truncated at the 64-bit ceiling; pass --log-space to continue")
    env = _envelope("asymptotics", {"mode": "sequence", "sequence": args.sequence, "n_max": args.n_max}, res, warnings)
    _emit(env, args.format, [[p.n, p.d_description, p.C] for p in scan.points], ["n", "d_description", "C_value"])


def cmd_symmetric_table(args):
    pat = Pattern.parse(args.pattern) if args.pattern else symmetric.TABLE_PATTERN
    order = _ints(args.removal_order) if args.removal_order is not None else (
        list(symmetric.TABLE_REMOVAL_ORDER) if not args.pattern else [])
    steps = symmetric.reduction_chain(pat, order)
    rows = [[s.pattern.k, str(s.pattern), s.constant, s.ratio] for s in steps]
    res = {"rows": [{"k": s.pattern.k, "pattern": str(s.pattern), "C": s.constant, "ratio": s.ratio,
                     "center_removed": s.center} for s in steps]}
    warnings = []
    if any(s.center for s in steps):
        warnings.append("a lone center offset was removed; that step is not a symmetric pair")
    env = _envelope("symmetric-table", {"pattern": str(pat), "removal_order": order}, res, warnings)
    _emit(env, args.format, rows, ["k", "pattern", "C(H)", "ratio"])


def cmd_assertion2(args):
    pat = Pattern.parse(args.pattern)
    rep = symmetric.verify_assertion2(pat, samples=args.samples, seed=args.seed)
    res = {
        "pattern": str(pat),
        "constant": rep.constant,
        "checked": rep.checked,
        "satisfied": rep.satisfied,
        "exhaustive": rep.exhaustive,
        "counterexamples": [{"subpattern": ",".join(map(str, s)), "sub_constant": a, "constant": b}
                            for s, a, b in rep.counterexamples],
        "max_identity_error": rep.max_identity_error,
        "max_p_small": rep.max_p_small,
        "p0": rep.p0,
    }
    env = _envelope("assertion2", {"pattern": args.pattern, "samples": args.samples, "seed": args.seed}, res,
                    [LEMMA_WARNING])
    _emit(env, args.format, [[c["subpattern"], c["sub_constant"], c["constant"]] for c in res["counterexamples"]],
          ["subpattern", "sub_constant", "constant"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None, help="worker threads (env HLTUPLES_THREADS)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = _Parser(prog="hltuples", description="Hardy-Littlewood constants and prime-tuple statistics")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constant", parents=[common], help="singular series of a pattern")
    c.add_argument("--pattern", required=True)
    c.add_argument("--truncation", type=_int, default=None)
    c.set_defaults(func=cmd_constant)

    h = sub.add_parser("h-stats", parents=[common], help="moments, extremes and distribution of h(n)")
    h.add_argument("--n-max", type=_int, required=True)
    h.add_argument("--moments", default="1,2")
    h.add_argument("--distribution", default=None, metavar="CSV")
    h.set_defaults(func=cmd_h_stats)

    s = sub.add_parser("census", parents=[common], help="count prime tuples and compare with predictions")
    s.add_argument("--pattern", required=True)
    s.add_argument("--x", type=_int, required=True)
    s.add_argument("--checkpoints", default=None)
    s.add_argument("--count-mode", choices=census.COUNT_MODES, default="start")
    s.set_defaults(func=cmd_census)

    a = sub.add_parser("asymptotics", parents=[common], help="growth of L(q) and C(0, d(n)) scans")
    a.add_argument("--mode", choices=("assertion1", "sequence"), required=True)
    a.add_argument("--q-points", default="100000,1000000,10000000")
    a.add_argument("--sequence", choices=asymptotics.SEQUENCES, default="power_of_two")
    a.add_argument("--n-max", type=_int, default=20)
    a.add_argument("--log-space", action="store_true")
    a.set_defaults(func=cmd_asymptotics)

    t = sub.add_parser("symmetric-table", parents=[common], help="constants along a symmetric reduction chain")
    t.add_argument("--pattern", default=None)
    t.add_argument("--removal-order", default=None)
    t.set_defaults(func=cmd_symmetric_table)

    v = sub.add_parser("assertion2", parents=[common], help="compare a symmetric pattern with its subpatterns")
    v.add_argument("--pattern", required=True)
    v.add_argument("--samples", type=int, default=2000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_assertion2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(message)s")
    try:
        args.func(args)
    except PatternParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InadmissibleError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except symmetric.ReductionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
