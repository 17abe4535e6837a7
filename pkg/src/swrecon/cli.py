"""Command-line interface.

Every command prints (or writes to ``--out``) a JSON document of the form
``{"command", "config", "result", "metadata"}``. ``config`` is the fully
resolved configuration including seeds; ``metadata`` holds wall-clock data
and is the only part that may differ between identical runs (``--no-metadata``
drops it).
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from pathlib import Path

from . import __version__
from .de import DEParams, DegreeDistribution, EnsembleError, search, threshold
from .domain import (DistributionError, JointDistribution, conditional_entropy, entropy_x,
                     from_asymmetric, from_bsc, mutual_information, solve_equal_hxy)
from .ldpc import AlistError, MatrixError, generate, load_alist, regular, save_alist
from .session import (CascadeScheme, LdpcScheme, dumps, rate_sweep, reports_to_csv, simulate,
                      universality_sweep)


class UsageError(Exception):
    pass


def parse_dist(spec: str) -> JointDistribution:
    """``bsc:p``, ``asym:a,b`` or a path to a JSON object with p00..p11."""
    try:
        if spec.startswith("bsc:"):
            return from_bsc(float(spec[4:]))
        if spec.startswith("asym:"):
            a, b = spec[5:].split(",")
            return from_asymmetric(float(a), float(b))
    except ValueError as exc:
        if isinstance(exc, DistributionError):
            raise UsageError(f"invalid distribution {spec!r}: {exc}") from None
        raise UsageError(f"malformed distribution spec {spec!r}; "
                         "expected bsc:p, asym:a,b or a JSON file") from None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"distribution {spec!r} is neither bsc:p, asym:a,b nor a readable file")
    try:
        return JointDistribution.from_json(path.read_text())
    except (json.JSONDecodeError, DistributionError) as exc:
        raise UsageError(f"invalid distribution file {spec}: {exc}") from None


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}") from None


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed {what} {text!r}") from None


def load_ensemble(path: str) -> DegreeDistribution:
    """Bare ``{"lambda", "rho"}`` JSON, or a saved ``de-search`` output."""
    try:
        obj = json.loads(Path(path).read_text())
        if isinstance(obj, dict) and "result" in obj:
            obj = obj["result"]["ensemble"]
        return DegreeDistribution.from_json(json.dumps(obj))
    except OSError as exc:
        raise UsageError(f"cannot read ensemble file {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, EnsembleError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid ensemble file {path}: {exc}") from None


def build_matrix(spec: str, n: int | None, seed: int, depth: int | None):
    """Resolve ``--matrix``: an alist path, ``peg:dv,dc`` or ``peg:ENSEMBLE.json``.

    Returns the matrix and a JSON-able description of how it was obtained.
    """
    if spec.startswith("peg:"):
        if n is None:
            raise UsageError("--n is required to generate a matrix")
        arg = spec[4:]
        if Path(arg).is_file():
            dd = load_ensemble(arg)
            lam, rho = dd.as_dicts()
            m = int(round(n * dd.compression_rate))
            M = generate(n, m, lam, rho, seed=seed, max_depth=depth)
            desc = {"generator": "peg", "ensemble": json.loads(dd.to_json())}
        else:
            dv, dc = _ints(arg, "regular degrees")
            M = regular(n, dv, dc, seed=seed, max_depth=depth)
            desc = {"generator": "peg", "regular": [dv, dc]}
        desc.update({"n": n, "m": M.m, "matrix_seed": seed, "peg_depth": depth})
        return M, desc
    try:
        M = load_alist(Path(spec).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {spec}: {exc.strerror}") from None
    if n is not None and n != M.n:
        raise UsageError(f"matrix {spec} has n={M.n} but --n {n} was given")
    return M, {"alist": str(spec), "n": M.n, "m": M.m}


def _emit(args, command: str, config: dict, result, t0: float, csv_text: str | None = None):
    doc = {"command": command, "config": config, "result": result}
    if not args.no_metadata:
        doc["metadata"] = {"wall_clock_s": round(time.perf_counter() - t0, 6),
                           "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                           "python": platform.python_version(), "version": __version__}
    if args.format == "csv":
        if csv_text is None:
            raise UsageError(f"{command} has no CSV form; use --format json")
        text = "# config: " + json.dumps(config, sort_keys=True) + "\n" + csv_text
    else:
        text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dist_config(d: JointDistribution, spec: str) -> dict:
    return {"dist": spec, "distribution": d.to_dict()}


def cmd_info(args):
    t0 = time.perf_counter()
    d = parse_dist(args.dist)
    result = {"H_X": entropy_x(d), "H_X_given_Y": conditional_entropy(d),
              "I_XY": mutual_information(d)}
    _emit(args, "info", _dist_config(d, args.dist), result, t0)


def cmd_gen_matrix(args):
    t0 = time.perf_counter()
    if not args.out:
        raise UsageError("gen-matrix needs --out for the alist file")
    M, desc = build_matrix("peg:" + args.spec, args.n, args.seed, args.peg_depth)
    Path(args.out).write_text(save_alist(M))
    args.out = None
    result = {"n": M.n, "m": M.m, "edges": M.num_edges, "rate": M.rate}
    _emit(args, "gen-matrix", desc, result, t0)


def _ensemble_from_args(args) -> DegreeDistribution:
    if args.regular:
        dv, dc = _ints(args.regular, "regular degrees")
        return DegreeDistribution.regular(dv, dc)
    if args.ensemble:
        return load_ensemble(args.ensemble)
    raise UsageError("give --regular dv,dc or --ensemble FILE")


def cmd_de_threshold(args):
    t0 = time.perf_counter()
    dd = _ensemble_from_args(args)
    params = DEParams(n_pop=args.n_pop, max_iters=args.de_iters, seed=args.seed)
    rep = threshold(dd, args.tol, params)
    config = {"ensemble": json.loads(dd.to_json()), "tol": args.tol, "design_rate": dd.design_rate}
    _emit(args, "de-threshold", config, rep.to_dict(), t0)


def cmd_de_search(args):
    t0 = time.perf_counter()
    res = search(args.rate, args.cap, args.budget, seed=args.seed, tol=args.tol)
    config = {"design_rate": args.rate, "cap": args.cap, "budget": args.budget,
              "seed": args.seed, "tol": args.tol}
    result = {"ensemble": json.loads(res.ensemble.to_json()), "threshold": res.report.to_dict(),
              "baseline": json.loads(res.baseline.to_json()),
              "baseline_threshold": res.baseline_report.to_dict(),
              "evaluations": res.evaluations, "accepted": res.accepted}
    _emit(args, "de-search", config, result, t0)


def _check_counts(args):
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.n is not None and args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")


def cmd_simulate(args):
    t0 = time.perf_counter()
    _check_counts(args)
    d = parse_dist(args.dist)
    config = _dist_config(d, args.dist)
    if args.scheme == "cascade":
        if args.n is None:
            raise UsageError("--n is required for the cascade scheme")
        scheme = CascadeScheme(args.passes, args.k1)
        n = args.n
    else:
        if not args.matrix:
            raise UsageError("--matrix is required for the ldpc scheme")
        if not 0.0 <= args.reveal <= 1.0:
            raise UsageError(f"--reveal must lie in [0, 1], got {args.reveal}")
        M, mdesc = build_matrix(args.matrix, args.n, args.matrix_seed, args.peg_depth)
        config["matrix"] = mdesc
        scheme = LdpcScheme(M, args.max_iters, args.reveal)
        n = M.n
    config.update({"n": n, "trials": args.trials, "seed": args.seed, "scheme": scheme.describe()})
    rep = simulate(scheme, d, n, args.trials, args.seed)
    _emit(args, "simulate", config, rep.payload(), t0, reports_to_csv([rep]))


def cmd_cascade(args):
    args.scheme = "cascade"
    cmd_simulate(args)


def cmd_sweep(args):
    t0 = time.perf_counter()
    _check_counts(args)
    d = parse_dist(args.dist)
    if not args.matrix:
        raise UsageError("--matrix is required for sweeps")
    M, mdesc = build_matrix(args.matrix, args.n, args.matrix_seed, args.peg_depth)
    config = _dist_config(d, args.dist)
    config.update({"matrix": mdesc, "n": M.n, "trials": args.trials, "seed": args.seed,
                   "max_iters": args.max_iters, "kind": args.kind})
    if args.kind == "rate":
        fractions = _floats(args.reveal_fractions, "reveal fractions")
        config["reveal_fractions"] = fractions
        reports = rate_sweep(M, d, fractions, M.n, args.trials, args.seed, args.max_iters)
        result = {"reports": [r.payload() for r in reports]}
    else:
        anchors = _floats(args.anchors, "anchors") if args.anchors else []
        h = conditional_entropy(d)
        try:
            family = [d] + [solve_equal_hxy(h, a) for a in anchors]
        except DistributionError as exc:
            raise UsageError(str(exc)) from None
        config["anchors"] = anchors
        uni = universality_sweep(M, family, M.n, args.trials, args.seed, args.max_iters)
        reports = uni.reports
        result = uni.payload()
    _emit(args, "sweep", config, result, t0, reports_to_csv(reports))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-metadata", action="store_true",
                        help="omit wall-clock metadata so output is byte-reproducible")

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--dist", required=True, help="bsc:p, asym:a,b or a JSON file")
    sim.add_argument("--n", type=int)
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--matrix", help="alist file, peg:dv,dc or peg:ENSEMBLE.json")
    sim.add_argument("--matrix-seed", type=int, default=0)
    sim.add_argument("--peg-depth", type=int, default=None)
    sim.add_argument("--max-iters", type=int, default=200)

    p = argparse.ArgumentParser(prog="swrecon", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="entropies of a distribution")
    s.add_argument("--dist", required=True)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("gen-matrix", parents=[common], help="PEG matrix to an alist file")
    s.add_argument("spec", help="dv,dc for a regular code or an ensemble JSON file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--peg-depth", type=int, default=None)
    s.set_defaults(func=cmd_gen_matrix)

    s = sub.add_parser("de-threshold", parents=[common], help="density-evolution threshold")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--regular", help="dv,dc")
    g.add_argument("--ensemble", help="JSON file with lambda/rho (degree, weight) pairs")
    s.add_argument("--tol", type=float, default=0.002)
    s.add_argument("--n-pop", type=int, default=100_000)
    s.add_argument("--de-iters", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_de_threshold)

    s = sub.add_parser("de-search", parents=[common], help="search a degree distribution")
    s.add_argument("--rate", type=float, required=True, help="design code rate 1 - m/n")
    s.add_argument("--cap", type=int, default=12)
    s.add_argument("--budget", type=int, default=200)
    s.add_argument("--tol", type=float, default=0.002)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_de_search)

    s = sub.add_parser("simulate", parents=[common, sim], help="Monte-Carlo reconciliation")
    s.add_argument("--scheme", choices=("ldpc", "cascade"), default="ldpc")
    s.add_argument("--reveal", type=float, default=0.0, help="shortened fraction of x")
    s.add_argument("--passes", type=int, default=4)
    s.add_argument("--k1", type=int, default=None)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("cascade", parents=[common, sim], help="Monte-Carlo Cascade run")
    s.add_argument("--passes", type=int, default=4)
    s.add_argument("--k1", type=int, default=None)
    s.set_defaults(func=cmd_cascade)

    s = sub.add_parser("sweep", parents=[common, sim], help="rate or universality sweep")
    s.add_argument("kind", choices=("rate", "universality"))
    s.add_argument("--reveal", dest="reveal_fractions", default="0,0.05,0.1,0.15",
                   help="comma-separated reveal fractions (rate sweep)")
    s.add_argument("--anchors", default="",
                   help="comma-separated P(Y=1|X=0) anchors for equal-H(X|Y) members")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, DistributionError, EnsembleError, MatrixError, AlistError) as exc:
        print(f"swrecon {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"swrecon {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
