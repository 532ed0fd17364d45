"""Command line front end.

Exit codes: 0 success, 1 failed verification, 2 unreadable input or bad
arguments, 3 domain error or degenerate problem, 4 solver did not converge.
On failure the first token written to stderr is the error category.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from importlib import metadata
from pathlib import Path

import numpy as np

from . import barycenters as bc
from . import io
from .divergences import SigmaPotential, bw_geodesic, d_bw, d_rtm, phi_mu, phi_sigma, rtm_geodesic
from .errors import OpMeansError
from .hermitian import random_spd
from .kubo_ando import mean, parse_mean
from .verify import VerificationFailure, run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NOT_CONVERGED = 4


class CliError(Exception):
    def __init__(self, category: str, message: str, code: int):
        super().__init__(message)
        self.category = category
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"parse-error: {message}\n")
        sys.exit(EXIT_PARSE)


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _say(args, text):
    if not args.quiet:
        print(text)


def _format(v: float) -> str:
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return repr(float(v))


def _parse_mean(spec: str):
    try:
        return parse_mean(spec)
    except OpMeansError:
        raise
    except ValueError as exc:
        raise CliError("parse-error", str(exc), EXIT_PARSE) from None


def _config(args) -> bc.SolverConfig:
    init = args.init
    if init is not None and init not in bc.INITS:
        init = io.read_matrix(init)
    try:
        return bc.SolverConfig(tol=args.tol, max_iter=args.max_iter, damping=args.damping, init=init)
    except ValueError as exc:
        raise CliError("parse-error", str(exc), EXIT_PARSE) from None


def _config_echo(args) -> dict:
    return {"tol": args.tol, "max_iter": args.max_iter, "damping": args.damping, "init": args.init}


def _measure(args, spec: str = ""):
    """Measure from ``--measure FILE`` or from a mean spec that carries one."""
    if args.measure:
        return io.read_measure(args.measure)
    if spec:
        sigma = _parse_mean(spec)
        if sigma.measure is None:
            raise CliError("domain-error", f"mean {spec!r} has no representing measure; pass --measure", EXIT_DOMAIN)
        return sigma.measure
    raise CliError("parse-error", "this kind needs --measure FILE or a ':<mean>' suffix", EXIT_PARSE)


def _manifest(args, command, inputs, out, config=None):
    man = io.RunManifest(command, [str(p) for p in inputs], config or {}, getattr(args, "seed", None), _version())
    io.write_manifest(out, man)


# ---------------------------------------------------------------------------
# commands


def cmd_mean(args) -> int:
    A = io.read_matrix(args.A)
    B = io.read_matrix(args.B)
    if A.shape != B.shape:
        raise CliError("domain-error", f"dimension mismatch: A is {A.shape}, B is {B.shape}", EXIT_DOMAIN)
    sigma = io.read_measure(args.measure) if args.measure else _parse_mean(args.sigma)
    M = mean(sigma, A, B)
    io.write_matrix(args.out, M)
    _manifest(args, "mean", [args.A, args.B], args.out, {"sigma": args.sigma, "measure": args.measure})
    _say(args, f"wrote {args.out}")
    return EXIT_OK


def cmd_distance(args) -> int:
    A = io.read_matrix(args.A)
    B = io.read_matrix(args.B)
    if A.shape != B.shape:
        raise CliError("domain-error", f"dimension mismatch: A is {A.shape}, B is {B.shape}", EXIT_DOMAIN)
    kind, _, rest = args.kind.partition(":")
    if kind == "rtm":
        v = d_rtm(A, B)
    elif kind == "bw":
        v = d_bw(A, B)
    elif kind == "hellinger":
        v = phi_mu(_measure(args, rest), A, B)
    elif kind == "sigma":
        if not rest:
            raise CliError("parse-error", "sigma distance needs a mean, e.g. sigma:#", EXIT_PARSE)
        v = phi_sigma(SigmaPotential(_parse_mean(rest)), A, B)
    else:
        raise CliError("parse-error", f"unknown distance kind {args.kind!r}", EXIT_PARSE)
    print(_format(v))
    return EXIT_OK


def _solve(kind: str, args, E):
    cfg = _config(args)
    base, _, rest = kind.partition(":")
    if base in ("karcher", "rtm"):
        return bc.karcher_mean(E, cfg)
    if base == "bw":
        return bc.bw_barycenter(E, cfg)
    if base == "hellinger":
        return bc.hellinger_barycenter(_measure(args, rest), E, cfg)
    if base == "sigma":
        if not rest:
            raise CliError("parse-error", "sigma barycenter needs a mean, e.g. sigma:#", EXIT_PARSE)
        return bc.ka_barycenter(_parse_mean(rest), E, cfg)
    raise CliError("parse-error", f"unknown barycenter kind {kind!r}", EXIT_PARSE)


def cmd_barycenter(args) -> int:
    E = io.read_ensemble(args.ensemble)
    X, report = _solve(args.kind, args, E)
    io.write_matrix(args.out, X)
    report_path = args.report or str(Path(args.out).with_suffix(".report.json"))
    io.write_report(report_path, report)
    echo = _config_echo(args) | {"kind": args.kind, "measure": args.measure}
    _manifest(args, "barycenter", [args.ensemble], args.out, echo)
    if not report.converged:
        sys.stderr.write(
            f"not-converged: {args.kind} stopped after {report.iterations} iterations "
            f"with residual {report.final_residual:.3e}\n"
        )
        return EXIT_NOT_CONVERGED
    _say(args, f"converged in {report.iterations} iterations, residual {report.final_residual:.3e}")
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.dim < 1 or args.count < 1 or args.condition < 1:
        raise CliError("domain-error", "dim, count and condition must be at least 1", EXIT_DOMAIN)
    rng = np.random.default_rng(args.seed)
    mats = tuple(random_spd(args.dim, args.condition, rng, iscomplex=args.complex) for _ in range(args.count))
    if args.weights == "uniform":
        E = bc.WeightedEnsemble.uniform(mats)
    else:
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.1, 1.0, args.count))
    io.write_ensemble(args.out, E)
    echo = {"dim": args.dim, "count": args.count, "condition": args.condition,
            "weights": args.weights, "complex": args.complex}
    _manifest(args, "generate", [], args.out, echo)
    _say(args, f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        results = run_suite(args.suite, args.seed)
    except KeyError as exc:
        raise CliError("parse-error", str(exc.args[0]), EXIT_PARSE) from None
    except VerificationFailure as exc:
        sys.stderr.write(f"verification-failed: {exc.check}\n")
        sys.stderr.write(io.dumps({"check": exc.check, "seed": args.seed, "counterexample": exc.counterexample}))
        return EXIT_VERIFY
    for res in results:
        _say(args, f"{res.name}: " + ", ".join(f"{k}={v}" for k, v in sorted(res.checks.items())))
    return EXIT_OK


def cmd_plotdata(args) -> int:
    E = io.read_ensemble(args.ensemble)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        if args.kind in ("rtm-geodesic", "bw-geodesic"):
            if len(E) < 2:
                raise CliError("domain-error", "a geodesic needs an ensemble with at least two matrices", EXIT_DOMAIN)
            A, B = E.matrices[:2]
            curve, dist = (rtm_geodesic, d_rtm) if args.kind == "rtm-geodesic" else (bw_geodesic, d_bw)
            w.writerow(["t", "distance_from_A", "distance_to_B"])
            for t in np.linspace(0, 1, args.points):
                G = curve(A, B, float(t))
                w.writerow([repr(float(t)), repr(dist(A, G)), repr(dist(G, B))])
        elif args.kind.startswith("residuals:"):
            _, report = _solve(args.kind.partition(":")[2], args, E)
            w.writerow(["iteration", "residual"])
            for k, r in enumerate(report.residual_history):
                w.writerow([k, repr(float(r))])
        else:
            raise CliError("parse-error", f"unknown plot kind {args.kind!r}", EXIT_PARSE)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opmeans", description="Kubo-Ando means, divergences and matrix barycenters.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")
    common.add_argument("--measure", help="measure JSON file defining the mean or divergence")
    common.add_argument("--seed", type=int, default=0)

    solver = _Parser(add_help=False)
    solver.add_argument("--tol", type=float, default=1e-10)
    solver.add_argument("--max-iter", type=int, default=500)
    solver.add_argument("--damping", type=float, default=1.0)
    solver.add_argument("--init", default=None,
                        help="arithmetic, harmonic, ah-geometric or a matrix JSON file (default: per solver)")

    s = sub.add_parser("mean", parents=[common], help="Kubo-Ando mean of two matrices")
    s.add_argument("sigma", help='mean spec, e.g. "geometric:0.5", "ah-geo:0.25", "#"')
    s.add_argument("A")
    s.add_argument("B")
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_mean)

    s = sub.add_parser("distance", parents=[common], help="distance or divergence between two matrices")
    s.add_argument("kind", help="rtm, bw, hellinger[:<mean>] or sigma:<mean>")
    s.add_argument("A")
    s.add_argument("B")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("barycenter", parents=[common, solver], help="weighted barycenter of an ensemble")
    s.add_argument("kind", help="karcher, bw, hellinger[:<mean>] or sigma:<mean>")
    s.add_argument("ensemble")
    s.add_argument("-o", "--out", required=True)
    s.add_argument("--report", help="solver report path (default: <out>.report.json)")
    s.set_defaults(func=cmd_barycenter)

    s = sub.add_parser("generate", parents=[common], help="random positive definite ensemble")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--condition", type=float, default=10.0)
    s.add_argument("--weights", choices=("uniform", "random"), default="uniform")
    s.add_argument("--complex", action="store_true")
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    s.add_argument("suite", help="ka-axioms, generators, convex-order, karcher, bw, hellinger, sigma, gradients or all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("plotdata", parents=[common, solver], help="CSV data for plots")
    s.add_argument("kind", help="rtm-geodesic, bw-geodesic or residuals:<barycenter kind>")
    s.add_argument("ensemble")
    s.add_argument("-o", "--out")
    s.add_argument("--points", type=int, default=21)
    s.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"{exc.category}: {exc}\n")
        return exc.code
    except io.FormatError as exc:
        sys.stderr.write(f"parse-error: {exc}\n")
        return EXIT_PARSE
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        sys.stderr.write(f"parse-error: cannot read {exc.filename}: {exc.strerror}\n")
        return EXIT_PARSE
    except OpMeansError as exc:
        sys.stderr.write(f"{exc.category}: {exc}\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        # bad mean specs, shape mismatches and similar caller mistakes
        sys.stderr.write(f"domain-error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
