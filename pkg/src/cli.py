"""toric-ci: command-line surface.

    python -m src.cli kernel twisted_cubic.txt
    python -m src.cli search --family cyclic --r 3 --n 14 --mode exhaustive
    python -m src.cli ci-check --signs decagon.signs
    python -m src.cli verify-paper --only bounds,decagon
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import List, Sequence

import pandas as pd

from . import config
from .circuits import enumerate_circuits
from .citest import SignMatrix
from .errors import ToricCIError, UsageError
from .export_schema import SearchReport, Verdict
from .generators import (bound_eval, bound_threshold, codim3_bound, convex_polygon, curve_ci_basis,
                         cyclic_by_codimension, cyclic_polytope, monomial_curve)
from .lattice import Configuration, binomial_strings, kernel_lattice, validate
from .search import check_given_basis, check_sign_matrix, search_ci_circuit_basis, verify_nonexistence_bound
from .utils.io import format_matrix, read_matrix, read_sign_rows, write_matrix
from .utils.text import binomial, one_based, parse_supports, sign_string
from .verify_paper import GROUPS, all_passed, results_table, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NOT_CI = 10
EXIT_EXHAUSTED = 11
EXIT_BUDGET = 12

VERDICT_EXIT = {
    Verdict.FOUND: EXIT_OK,
    Verdict.NONE_FOR_BASIS: EXIT_NOT_CI,
    Verdict.EXHAUSTED_NONE: EXIT_EXHAUSTED,
    Verdict.BUDGET_EXCEEDED: EXIT_BUDGET,
}

# commands that read a configuration A
NEEDS_CONFIGURATION = {"kernel", "circuits", "search", "gen"}


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class RunConfig:
    command: str
    matrix: str | None = None
    family: str | None = None
    a: List[int] | None = None
    m: int | None = None
    t: List[int] | None = None
    n: int | None = None
    r: int | None = None
    mode: str = "exhaustive"
    budget: int | None = None
    seed: int | None = None
    jobs: int = config.DEFAULT_JOBS
    output: str = "text"
    check_homogeneity: bool = True
    allow_repeats: bool = False
    seed_supports: List[tuple] = field(default_factory=list)

    def __post_init__(self):
        needs = self.command in NEEDS_CONFIGURATION
        if needs and (self.matrix is None) == (self.family is None):
            raise UsageError("give exactly one input: a matrix file or --family")
        if self.budget is not None and self.budget <= 0:
            raise UsageError(f"--budget must be positive, got {self.budget}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")
        if self.mode not in config.SEARCH_MODES:
            raise UsageError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            matrix=getattr(args, "matrix", None),
            family=getattr(args, "family", None),
            a=getattr(args, "a", None),
            m=getattr(args, "m", None),
            t=getattr(args, "t", None),
            n=getattr(args, "n", None),
            r=getattr(args, "r", None),
            mode=getattr(args, "mode", None) or "exhaustive",
            budget=getattr(args, "budget", None),
            seed=getattr(args, "seed", None),
            jobs=getattr(args, "jobs", config.DEFAULT_JOBS),
            output="json" if getattr(args, "json", False) else "text",
            check_homogeneity=not getattr(args, "no_homogeneity_check", False),
            allow_repeats=getattr(args, "allow_repeats", False),
            seed_supports=parse_supports(args.seed_supports) if getattr(args, "seed_supports", None) else [],
        )


def load_configuration(run: RunConfig) -> Configuration:
    if run.matrix is not None:
        return validate(read_matrix(run.matrix), check_homogeneity=run.check_homogeneity,
                        allow_repeats=run.allow_repeats)
    if run.family == "curve":
        if not run.a:
            raise UsageError("--family curve needs --a")
        return monomial_curve(run.a)
    if run.family == "cyclic":
        if run.m is not None:
            return cyclic_polytope(run.m, t=run.t, n=run.n)
        if run.r is not None and run.n is not None:
            return cyclic_by_codimension(run.r, run.n)
        raise UsageError("--family cyclic needs --m with --t or --n, or --r with --n")
    if run.family == "polygon":
        if run.n is None:
            raise UsageError("--family polygon needs --n")
        return convex_polygon(run.n)
    raise UsageError(f"unknown family {run.family!r}")


def _emit(payload, run: RunConfig) -> None:
    if run.output == "json":
        print(json.dumps(payload, indent=2))


def _print_report(report: SearchReport, run: RunConfig) -> None:
    if run.output == "json":
        print(report.model_dump_json(indent=2))
        return
    print(f"verdict: {report.verdict.value}")
    if report.complete_intersection is not None:
        print(f"complete intersection: {'yes' if report.complete_intersection else 'no'}")
    if report.basis:
        print("basis:")
        for col, b in zip(report.basis, report.binomials):
            print(f"  {tuple(col)}  {b}")
    if report.witness is not None:
        w = report.witness
        print(f"witness: rows {{{','.join(map(str, w.rows))}}} x cols {{{','.join(map(str, w.cols))}}} "
              f"({len(w.rows)} < {len(w.cols)})")
    if report.consecutive_rows is not None:
        j, k = report.consecutive_rows
        print(f"rows {j},{k} are nonzero in every column; {report.associated_prime} is an associated prime")
    if report.g is not None:
        print(f"index g = {report.g} (Laurent-equal to I_A: {'yes' if report.laurent_equal else 'no'})")
    if report.mode is not None:
        c = report.counters
        print(f"mode: {report.mode}" + (f", seed {report.seed}" if report.seed is not None else ""))
        print(f"circuits: {c.circuits}, subsets: {report.total_combinations}, tested: {c.tested}, "
              f"pruned (sign/rank): {c.pruned_sign}/{c.pruned_rank} covering {c.pruned_covered}, "
              f"CI bases: {c.ci_bases}")
    for note in report.notes:
        print(f"note: {note}")
    print(f"elapsed: {report.elapsed_ms:.1f} ms")


def cmd_kernel(run: RunConfig) -> int:
    cfg = load_configuration(run)
    basis = kernel_lattice(cfg)
    if run.output == "json":
        _emit({"m": cfg.m, "n": cfg.n, "r": cfg.r, "basis": [list(c) for c in basis.columns()],
               "g": basis.index_g, "binomials": binomial_strings(basis)}, run)
        return EXIT_OK
    if cfg.r == 0:
        print("codimension 0: the kernel is trivial")
        return EXIT_OK
    print(format_matrix(basis.B), end="")
    print(f"g = {basis.index_g}")
    for b in binomial_strings(basis):
        print(f"  {b}")
    return EXIT_OK


def circuits_table(cfg: Configuration) -> pd.DataFrame:
    rows = [{"support": one_based(c.support), "signs": sign_string(c.vector), "vector": c.vector,
             "binomial": binomial(c.vector), "full_dimensional": c.full_dimensional}
            for c in enumerate_circuits(cfg)]
    return pd.DataFrame(rows, columns=["support", "signs", "vector", "binomial", "full_dimensional"])


def cmd_circuits(run: RunConfig) -> int:
    cfg = load_configuration(run)
    table = circuits_table(cfg)
    if run.output == "json":
        print(table.to_json(orient="records"))
    elif table.empty:
        print("no circuits (codimension 0)")
    else:
        print(table.to_string(index=False))
        print(f"{len(table)} circuits")
    return EXIT_OK


def cmd_ci_check(run: RunConfig, basis_path: str | None, signs_path: str | None) -> int:
    if (basis_path is None) == (signs_path is None):
        raise UsageError("ci-check needs exactly one of --basis or --signs")
    if signs_path is not None:
        report = check_sign_matrix(SignMatrix.from_rows(read_sign_rows(signs_path)))
    else:
        if (run.matrix is None) == (run.family is None):
            raise UsageError("ci-check --basis needs the configuration as a matrix file or --family")
        report = check_given_basis(load_configuration(run), read_matrix(basis_path))
    _print_report(report, run)
    return EXIT_OK if report.complete_intersection else EXIT_NOT_CI


def cmd_search(run: RunConfig, prune: bool, progress: bool) -> int:
    cfg = load_configuration(run)
    report = search_ci_circuit_basis(cfg, mode=run.mode, budget=run.budget, seed=run.seed, jobs=run.jobs,
                                     prune=prune, seed_supports=run.seed_supports or None, progress=progress)
    _print_report(report, run)
    return VERDICT_EXIT[report.verdict]


def cmd_gen(run: RunConfig, gale: bool, out: str | None) -> int:
    cfg = load_configuration(run)
    if gale:
        if run.family != "curve":
            raise UsageError("--gale is only defined for --family curve")
        M = curve_ci_basis(run.a)
    else:
        M = cfg.A
    if out:
        write_matrix(M, out)
        logger.info(f"wrote {M.rows}x{M.cols} matrix to {out}")
    else:
        print(format_matrix(M), end="")
    return EXIT_OK


def cmd_bound(run: RunConfig, args: argparse.Namespace) -> int:
    if args.eval:
        d, n = args.eval
        ev = bound_eval(d, n)
        payload = {"d": d, "n": n, "lhs": ev.lhs, "rhs": ev.rhs, "holds": ev.holds}
        text = f"d={d} n={n}: C(n,d+2)={ev.lhs} {'>' if ev.holds else '<='} 2(n-d-1)C(n-2,d)={ev.rhs}"
    elif args.threshold is not None:
        value = bound_threshold(args.threshold)
        payload = {"d": args.threshold, "threshold": value}
        text = f"inequality holds for every n >= {value} (d={args.threshold})"
    elif args.codim3 is not None:
        value = codim3_bound(args.codim3)
        payload = {"r": args.codim3, "bound": value}
        text = f"cyclic polytopes with r={args.codim3} have no CI basis ideal for n >= {value}"
    elif args.probe:
        if args.param is None or args.n_range is None:
            raise UsageError("--probe needs --param and --n-range")
        lo, hi = args.n_range
        table = verify_nonexistence_bound(args.param, args.probe, range(lo, hi + 1), budget=run.budget,
                                          mode=args.mode, jobs=run.jobs, progress=args.progress,
                                          seed_supports=run.seed_supports or None)
        print(table.to_json(orient="records") if run.output == "json" else table.to_string(index=False))
        return EXIT_OK
    else:
        raise UsageError("bound needs one of --eval, --threshold, --codim3, --probe")
    if run.output == "json":
        _emit(payload, run)
    else:
        print(text)
    return EXIT_OK


def cmd_verify_paper(run: RunConfig, only: List[str] | None, progress: bool) -> int:
    unknown = sorted(set(only or []) - set(GROUPS))
    if unknown:
        raise UsageError(f"unknown check groups {unknown}; choose from {', '.join(GROUPS)}")
    results = run_checks(only, progress=progress)
    table = results_table(results)
    if run.output == "json":
        print(table.to_json(orient="records"))
    else:
        print(table.drop(columns=["detail"]).to_string(index=False))
        for r in results:
            if not r.passed:
                print(f"[{r.group}] {r.name}: {r.detail}")
    ok = all_passed(results)
    logger.info(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _input_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("matrix", nargs="?", default=None, help="Configuration matrix file ('m n' header, then rows)")
    p.add_argument("--family", choices=config.FAMILIES, default=None, help="Build the configuration instead of reading it")
    p.add_argument("--a", type=_int_list, default=None, help="Curve exponents, e.g. 0,1,2,3")
    p.add_argument("--m", type=int, default=None, help="Cyclic polytope rows")
    p.add_argument("--t", type=_int_list, default=None, help="Cyclic polytope parameters, e.g. 1,2,3,4")
    p.add_argument("--n", type=int, default=None, help="Point count (cyclic, polygon)")
    p.add_argument("--r", type=int, default=None, help="Codimension (cyclic, with --n)")
    p.add_argument("--no-homogeneity-check", action="store_true", help="Warn instead of failing when A is not homogeneous")
    p.add_argument("--allow-repeats", action="store_true", help="Accept repeated columns")
    return p


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="Machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    p.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toric-ci", description="Complete intersection basis ideals in toric ideals")
    sub = ap.add_subparsers(dest="command", required=True)
    inp, common = _input_options(), _common_options()

    sub.add_parser("kernel", parents=[inp, common], help="Saturated kernel lattice basis and its index")
    sub.add_parser("circuits", parents=[inp, common], help="List the circuits of the kernel lattice")

    p = sub.add_parser("ci-check", parents=[inp, common], help="Apply the mixed-submatrix criterion")
    p.add_argument("--basis", default=None, help="Basis matrix file (n x r), checked against the configuration")
    p.add_argument("--signs", default=None, help="Sign matrix file of + - 0 tokens")

    p = sub.add_parser("search", parents=[inp, common], help="Search circuit bases for a complete intersection")
    p.add_argument("--mode", choices=config.SEARCH_MODES, default="exhaustive")
    p.add_argument("--budget", type=int, default=None, help=f"Subsets to test (default ${config.BUDGET_ENV_VAR} or {config.DEFAULT_BUDGET})")
    p.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS, help="Worker processes")
    p.add_argument("--seed", type=int, default=None, help="Randomized mode seed")
    p.add_argument("--seed-supports", default=None, help="Supports tried first, e.g. '1,2,3,4;1,2,4,9'")
    p.add_argument("--no-prune", action="store_true", help="Test every leaf without prefix pruning")
    p.add_argument("--progress", action="store_true", help="Show a progress bar")

    p = sub.add_parser("gen", parents=[inp, common], help="Emit a family configuration as a matrix file")
    p.add_argument("--gale", action="store_true", help="Emit the complete intersection basis of a curve instead")
    p.add_argument("--out", default=None, help="Write to this path instead of stdout")

    p = sub.add_parser("bound", parents=[common], help="Counting bounds and nonexistence probes")
    p.add_argument("--eval", nargs=2, type=int, metavar=("D", "N"), default=None)
    p.add_argument("--threshold", type=int, metavar="D", default=None)
    p.add_argument("--codim3", type=int, metavar="R", default=None)
    p.add_argument("--probe", choices=["cyclic", "polygon"], default=None)
    p.add_argument("--param", type=int, default=None, help="r for cyclic, d for polygon")
    p.add_argument("--n-range", nargs=2, type=int, metavar=("LO", "HI"), default=None)
    p.add_argument("--mode", choices=config.SEARCH_MODES, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    p.add_argument("--seed-supports", default=None, help="Supports tried first on every probed n")
    p.add_argument("--progress", action="store_true")

    p = sub.add_parser("verify-paper", parents=[common], help="Run the reproduction checks")
    p.add_argument("--only", type=lambda s: [x for x in s.split(",") if x], default=None,
                   help=f"Comma-separated groups: {','.join(GROUPS)}")
    p.add_argument("--progress", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO)
    logging.basicConfig(level=level, format=config.LOG_FORMAT)
    try:
        run = RunConfig.from_args(args)
        if run.command == "kernel":
            return cmd_kernel(run)
        if run.command == "circuits":
            return cmd_circuits(run)
        if run.command == "ci-check":
            return cmd_ci_check(run, args.basis, args.signs)
        if run.command == "search":
            return cmd_search(run, prune=not args.no_prune, progress=args.progress)
        if run.command == "gen":
            return cmd_gen(run, args.gale, args.out)
        if run.command == "bound":
            return cmd_bound(run, args)
        return cmd_verify_paper(run, args.only, args.progress)
    except ToricCIError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
