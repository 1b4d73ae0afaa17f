"""Command-line front end.

Data records go to stdout (newline-delimited JSON, or CSV with a fixed
per-command header); diagnostics go to stderr. Every record carries a
``status`` field. Exit codes: 0 success, 2 domain or convergence rejection,
3 numerical failure, 4 verification-suite failure.
"""

import argparse
import sys

from .branching import (
    GeneralProgenyLaw,
    ProgenyHalfLaw,
    ScaledSibuya,
    general_progeny_pmf_range,
    progeny_pgf_elementary,
    progeny_pgf_hypergeometric,
    progeny_pmf_range,
)
from .errors import (
    DomainError,
    InsufficientData,
    NonConvergent,
    NotConvergent,
    QuadratureFailure,
    RootFindFailure,
    SlowConvergence,
)
from .simulate import SimConfig, chi_square_threshold, gof_compare, simulate_total_progeny
from .special import DEFAULT_TOL, HypParams, hyp2f1_half_one, hyp2f1_series
from .sums import SumParams, evaluate
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4

_DOMAIN_ERRORS = (DomainError, NotConvergent)
_NUMERIC_ERRORS = (NonConvergent, SlowConvergence, QuadratureFailure,
                   RootFindFailure, InsufficientData, OverflowError)


def _jfloat(v):
    # 17 significant digits: round-trip exact for binary64.
    return "%.17g" % v


def _json_line(obj):
    """Serialize with explicit float formatting (17 significant digits)."""
    if isinstance(obj, dict):
        return "{" + ", ".join('"%s": %s' % (k, _json_line(v)) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_line(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return _jfloat(obj)
    if isinstance(obj, int):
        return str(obj)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


class _Emitter:
    """Writes records as JSON lines or CSV rows with a fixed header."""

    def __init__(self, fmt, out, columns):
        self.fmt = fmt
        self.out = out
        self.columns = columns
        self._wrote_header = False

    def emit(self, record):
        if self.fmt == "json":
            self.out.write(_json_line(record) + "\n")
            return
        if not self._wrote_header:
            self.out.write(",".join(self.columns) + "\n")
            self._wrote_header = True
        cells = []
        for col in self.columns:
            v = record.get(col, "")
            if isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(_jfloat(v))
            else:
                cells.append(str(v))
        self.out.write(",".join(cells) + "\n")


def _cmd_hyp2f1(args, out):
    em = _Emitter(args.format, out,
                  ["a", "b", "c", "x", "value", "abs_error_estimate",
                   "terms_used", "method", "status"])
    if args.a == 0.5 and args.b == 1.0:
        res = hyp2f1_half_one(args.c, args.x, tol=args.tol)
    else:
        res = hyp2f1_series(HypParams(args.a, args.b, args.c, args.x), tol=args.tol)
    em.emit({"a": args.a, "b": args.b, "c": args.c, "x": args.x,
             "value": res.value, "abs_error_estimate": res.abs_error_estimate,
             "terms_used": res.terms_used, "method": res.method.value,
             "status": "ok"})
    return EXIT_OK


def _cmd_sum(args, out):
    em = _Emitter(args.format, out,
                  ["eta", "c", "x", "method", "value", "abs_error_estimate",
                   "terms_used", "route", "continuation", "status"])
    res = evaluate(SumParams(args.eta, args.c, args.x), method=args.method)
    em.emit({"eta": args.eta, "c": args.c, "x": args.x, "method": args.method,
             "value": res.value, "abs_error_estimate": res.abs_error_estimate,
             "terms_used": res.terms_used, "route": res.method.value,
             "continuation": res.continuation, "status": "ok"})
    return EXIT_OK


def _cmd_progeny(args, out):
    if args.progeny_cmd == "pmf":
        em = _Emitter(args.format, out, ["lambda", "ell", "p", "status"])
        law = ProgenyHalfLaw(args.lam)
        for ell, p in enumerate(progeny_pmf_range(law, args.lmax), start=1):
            em.emit({"lambda": args.lam, "ell": ell, "p": p, "status": "ok"})
        return EXIT_OK
    if args.progeny_cmd == "pgf":
        em = _Emitter(args.format, out, ["lambda", "z", "value", "route", "status"])
        law = ProgenyHalfLaw(args.lam)
        if args.z <= law.z_minus * (1.0 + 1e-12):
            value = progeny_pgf_hypergeometric(law, args.z)
            route = "hypergeometric"
        else:
            value = progeny_pgf_elementary(law, args.z)
            route = "elementary"
        em.emit({"lambda": args.lam, "z": args.z, "value": value,
                 "route": route, "status": "ok"})
        return EXIT_OK
    em = _Emitter(args.format, out, ["c", "x", "ell", "q", "running_sum", "status"])
    law = GeneralProgenyLaw(args.c, args.x)
    acc = 0.0
    for ell, q in enumerate(general_progeny_pmf_range(law, args.lmax), start=1):
        acc += q
        em.emit({"c": args.c, "x": args.x, "ell": ell, "q": q,
                 "running_sum": acc, "status": "ok"})
    return EXIT_OK


def _cmd_simulate(args, out):
    em = _Emitter(args.format, out,
                  ["alpha", "lambda", "replicates", "seed", "censored",
                   "chi_square", "dof", "threshold_0999", "max_abs_deviation",
                   "status"])
    d = ScaledSibuya(args.alpha, args.lam)
    cfg = SimConfig(seed=args.seed, replicates=args.n,
                    progeny_cap=args.cap, workers=args.workers)
    sim = simulate_total_progeny(d, cfg)
    record = {"alpha": args.alpha, "lambda": args.lam,
              "replicates": sim.replicates, "seed": args.seed,
              "censored": sim.censored}
    if args.alpha == 0.5:
        rep = gof_compare(sim, ProgenyHalfLaw(args.lam), bins=args.bins)
        record.update({"chi_square": rep.chi_square, "dof": rep.dof,
                       "threshold_0999": chi_square_threshold(rep.dof),
                       "max_abs_deviation": rep.max_abs_deviation})
        if args.format == "json":
            record["z_scores"] = {str(k): v for k, v in sorted(rep.z_scores.items())}
            record["empirical_counts"] = {
                str(k): v for k, v in sorted(sim.counts.items())[:200]}
    else:
        # No analytic half-law cells away from alpha = 1/2.
        record.update({"chi_square": None, "dof": None, "threshold_0999": None,
                       "max_abs_deviation": None})
        if args.format == "json":
            record["empirical_counts"] = {
                str(k): v for k, v in sorted(sim.counts.items())[:200]}
    record["status"] = "ok"
    em.emit(record)
    return EXIT_OK


def _cmd_verify(args, out):
    kwargs = {}
    if args.suite == "montecarlo" and args.replicates is not None:
        kwargs["replicates"] = args.replicates
    result = run_suite(args.suite, **kwargs)
    result["status"] = "ok" if result["pass"] else "fail"
    em = _Emitter("json", out, [])
    em.emit(result)
    return EXIT_OK if result["pass"] else EXIT_VERIFY


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="hypersum",
        description="Weighted hypergeometric sums, progeny laws, and seeded "
                    "Monte Carlo checks.")
    ap.add_argument("--out", default=None, metavar="PATH",
                    help="write records to PATH instead of stdout")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("hyp2f1", help="evaluate 2F1(a,b;c;x)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    add_format(p)

    p = sub.add_parser("sum", help="evaluate the weighted sum S(eta, c; x)")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=("direct", "closed", "special", "auto"),
                   default="auto")
    add_format(p)

    p = sub.add_parser("progeny", help="total-progeny distributions")
    psub = p.add_subparsers(dest="progeny_cmd", required=True)
    pp = psub.add_parser("pmf", help="alpha = 1/2 progeny pmf rows")
    pp.add_argument("--lambda", dest="lam", type=float, required=True)
    pp.add_argument("--lmax", type=int, required=True)
    add_format(pp)
    pg = psub.add_parser("pgf", help="alpha = 1/2 progeny generating function")
    pg.add_argument("--lambda", dest="lam", type=float, required=True)
    pg.add_argument("--z", type=float, required=True)
    add_format(pg)
    pq = psub.add_parser("general", help="general (c, x) progeny-type pmf rows")
    pq.add_argument("--c", type=float, required=True)
    pq.add_argument("--x", type=float, required=True)
    pq.add_argument("--lmax", type=int, required=True)
    add_format(pq)

    p = sub.add_parser("simulate", help="seeded Monte Carlo of total progeny")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True, help="replicates")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--bins", type=int, default=20)
    add_format(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--replicates", type=int, default=None,
                   help="montecarlo suite replicate count override")
    return ap


_DISPATCH = {
    "hyp2f1": _cmd_hyp2f1,
    "sum": _cmd_sum,
    "progeny": _cmd_progeny,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w")
        close = True
    try:
        return _DISPATCH[args.cmd](args, out)
    except _DOMAIN_ERRORS as e:
        out.write(_json_line({"status": type(e).__name__, "error": str(e)}) + "\n")
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except _NUMERIC_ERRORS as e:
        out.write(_json_line({"status": type(e).__name__, "error": str(e)}) + "\n")
        print("error: %s" % e, file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
