"""Command-line interface.

Subcommands: info, aij, count, paths, verify, sample, sweep, distribution.
Exit codes: 0 success, 1 usage/parameter error, 2 budget exceeded,
3 verification failure.
"""
from __future__ import annotations

import argparse
import math
import sys

from .combinatorics import GraphParams, a_ij, a_ij_nonzero, threshold_p
from .counting import (
    DEFAULT_BUDGET,
    WorkBudget,
    count_cycles_direct,
    count_cycles_lemma,
    count_paths,
)
from .errors import (
    BudgetExceededError,
    ConsistencyError,
    EnumerationCapError,
    ParameterError,
)
from .experiments import (
    SweepSpec,
    distribution_check,
    run_sweep,
    write_sweep_csv,
)
from .sampling import GENERATOR_NAME, SampleConfig, draw_sample, has_cycle_t
from .verify import aij_bruteforce_failures, run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; this tool reserves 2 for
    # budget exhaustion, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_params_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    p.add_argument("--r", type=int, required=True, help="subset size")
    p.add_argument("--s", type=int, required=True, help="required intersection size")


def _params(args) -> GraphParams:
    return GraphParams(args.n, args.r, args.s)


def _cmd_info(args) -> int:
    params = _params(args)
    n1 = params.degree
    print(f"{params}: generalized Johnson graph")
    print(f"  vertices N      = {params.vertex_count}")
    print(f"  degree N1       = {n1}")
    print(f"  edges N*N1/2    = {params.edge_count}")
    a_ss = a_ij(params, params.s, params.s)
    print(f"  A(s,s)          = {a_ss}   (common neighbors of an adjacent pair = p_3)")
    print("  A(i,j) table (rows i, cols j):")
    for i in range(params.r + 1):
        row = " ".join(f"{a_ij(params, i, j):>10d}" for j in range(params.r + 1))
        print(f"    i={i}: {row}")
    if args.t is not None:
        t = args.t
        exact = threshold_p(params, t, "exact-degree")
        asym = threshold_p(params, t, "fixed-t-asymptotic")
        print(f"  t = {t}:")
        print(f"    threshold (exact-degree)       p_hat = {exact.value:.9g}   ln = {exact.log_value:.9g}")
        print(f"    threshold (fixed-t-asymptotic) p_hat = {asym.value:.9g}   ln = {asym.log_value:.9g}")
        if t * t >= n1:
            print(
                f"    warning: t^2 = {t * t} >= N1 = {n1}; the threshold analysis "
                f"assumes t grows slower than sqrt(N1), treat p_hat as heuristic"
            )
        if params.s > 0 and t <= math.log(params.n):
            print(
                f"    warning: s > 0 with t <= ln n ({t} <= {math.log(params.n):.3f}); "
                f"sharpness of the transition is unknown in this regime"
            )
    return EXIT_OK


def _cmd_aij(args) -> int:
    params = _params(args)
    value = a_ij(params, args.i, args.j)
    if args.verify:
        failures, _ = aij_bruteforce_failures(params)
        if failures:
            print(f"{value} (BRUTE FORCE DISAGREES)")
            for f in failures:
                print(f"  {f}")
            return EXIT_VERIFY
        print(f"{value} (brute force agrees)")
    else:
        print(value)
    if not a_ij_nonzero(params.r, params.s, args.i, args.j) and value == 0:
        print(f"note: class (i={args.i}, j={args.j}) is zero for all large n")
    return EXIT_OK


def _cmd_count(args) -> int:
    params = _params(args)
    budget = WorkBudget(args.budget)
    if args.method == "lemma":
        census = count_cycles_lemma(params, args.t, budget)
        print(f"{census.c_t}")
    elif args.method == "direct":
        census = count_cycles_direct(params, args.t, budget)
        print(f"{census.c_t}")
    else:
        direct = count_cycles_direct(params, args.t, budget)
        via = count_cycles_lemma(params, args.t, budget)
        if direct.c_t != via.c_t:
            print(f"direct {direct.c_t} != identity {via.c_t} (METHODS DISAGREE)")
            return EXIT_VERIFY
        print(f"{direct.c_t} (methods agree)")
    return EXIT_OK


def _cmd_paths(args) -> int:
    params = _params(args)
    budget = WorkBudget(args.budget)
    if args.all_edges:
        p_t = count_paths(params, args.t, "all-edges-check", budget)
        print(f"{p_t} (uniform over {params.edge_count} edges)")
    else:
        p_t = count_paths(params, args.t, "canonical", budget)
        print(p_t)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = run_verification(
        max_n=args.max_n,
        max_r=args.max_r,
        t_min=args.t_min,
        t_max=args.t_max,
        per_instance_budget=args.budget,
        total_budget=args.total_budget,
    )
    for line in report.summary_lines():
        print(line)
    if not report.passed:
        print("VERIFICATION FAILED")
        return EXIT_VERIFY
    if report.partial:
        print("VERIFICATION PARTIAL (budget)")
        return EXIT_BUDGET
    print("VERIFICATION PASSED")
    return EXIT_OK


def _cmd_sample(args) -> int:
    params = _params(args)
    config = SampleConfig(
        params=params, p=args.p, master_seed=args.seed, trial_index=args.trial_index
    )
    sample = draw_sample(config)
    print(
        f"{params} p={args.p} seed={args.seed} trial={args.trial_index} "
        f"generator={GENERATOR_NAME}"
    )
    print(f"retained edges: {sample.retained_edges} of {params.edge_count}")
    if args.t is not None:
        budget = WorkBudget(args.budget)
        print(f"contains a {args.t}-cycle: {has_cycle_t(sample, args.t, budget)}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fp:
            sample.write_log(fp)
        print(f"log written to {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    params = _params(args)
    try:
        c_factors = tuple(float(tok) for tok in args.c_values.split(",") if tok.strip())
    except ValueError as exc:
        raise ParameterError(f"bad --c-values {args.c_values!r}: {exc}") from exc
    spec = SweepSpec(
        params=params,
        t=args.t,
        c_factors=c_factors,
        trials=args.trials,
        master_seed=args.seed,
        mode=args.mode,
        coupled=not args.independent_draws,
        budget_limit=args.budget,
    )
    rows = run_sweep(spec, workers=args.workers)
    p_hat = threshold_p(params, args.t, "exact-degree")
    print(
        f"sweep {params} t={args.t} p_hat={p_hat.value:.6g} trials={args.trials} "
        f"seed={args.seed} mode={args.mode} "
        f"draws={'coupled' if spec.coupled else 'independent'} generator={GENERATOR_NAME}"
    )
    if args.t * args.t >= params.degree:
        print(
            f"warning: t^2 = {args.t * args.t} >= N1 = {params.degree}; p_hat is "
            f"heuristic in this regime (needs t << sqrt(N1))"
        )
    for row in rows:
        ph = "n/a" if row.prob_hat is None else f"{row.prob_hat:.4f}"
        wl = "" if row.wilson_lo is None else f" [{row.wilson_lo:.4f}, {row.wilson_hi:.4f}]"
        flags = []
        if row.clamped:
            flags.append("clamped")
        if row.failed:
            flags.append(f"{row.failed} trials failed")
        suffix = f"  ({', '.join(flags)})" if flags else ""
        print(f"  c={row.c_factor:<8g} p={row.p:.6g}  prob={ph}{wl}{suffix}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fp:
            write_sweep_csv(rows, fp)
        print(f"csv written to {args.out}")
    return EXIT_OK


def _cmd_distribution(args) -> int:
    params = _params(args)
    report = distribution_check(
        params, args.t, args.p, args.trials, args.seed, args.budget
    )
    print(
        f"{params} t={args.t} p={args.p} trials={args.trials} seed={args.seed}: "
        f"copy count vs Poisson(mean={report.poisson_mean:.12g})"
    )
    print("  k  count      freq")
    for k, cnt in report.histogram.items():
        print(f"  {k:<3d}{cnt:<11d}{cnt / args.trials:.6f}")
    print(f"total-variation distance: {report.tv_distance:.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gjohnson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="sizes, degree, A-table, thresholds")
    _add_params_args(p_info)
    p_info.add_argument("--t", type=int, default=None, help="cycle length for thresholds")
    p_info.set_defaults(fn=_cmd_info)

    p_aij = sub.add_parser("aij", help="one A(i,j) value")
    _add_params_args(p_aij)
    p_aij.add_argument("--i", type=int, required=True)
    p_aij.add_argument("--j", type=int, required=True)
    p_aij.add_argument("--verify", action="store_true", help="cross-check by brute force")
    p_aij.set_defaults(fn=_cmd_aij)

    p_count = sub.add_parser("count", help="t-cycle census")
    _add_params_args(p_count)
    p_count.add_argument("--t", type=int, required=True)
    p_count.add_argument(
        "--method", choices=("lemma", "direct", "both"), default="both"
    )
    p_count.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_count.set_defaults(fn=_cmd_count)

    p_paths = sub.add_parser("paths", help="p_t between an adjacent pair")
    _add_params_args(p_paths)
    p_paths.add_argument("--t", type=int, required=True)
    p_paths.add_argument(
        "--all-edges", action="store_true", help="verify the count over every edge"
    )
    p_paths.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_paths.set_defaults(fn=_cmd_paths)

    p_verify = sub.add_parser("verify", help="run the identity suite over a grid")
    p_verify.add_argument("--max-n", type=int, default=9)
    p_verify.add_argument("--max-r", type=int, default=3)
    p_verify.add_argument("--t-min", type=int, default=3)
    p_verify.add_argument("--t-max", type=int, default=8)
    p_verify.add_argument("--budget", type=int, default=2_000_000, help="per instance")
    p_verify.add_argument("--total-budget", type=int, default=200_000_000)
    p_verify.set_defaults(fn=_cmd_verify)

    p_sample = sub.add_parser("sample", help="draw one percolation sample")
    _add_params_args(p_sample)
    p_sample.add_argument("--p", type=float, required=True)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--trial-index", type=int, default=0)
    p_sample.add_argument("--t", type=int, default=None, help="also check for a t-cycle")
    p_sample.add_argument("--out", type=str, default=None, help="write edge log here")
    p_sample.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_sample.set_defaults(fn=_cmd_sample)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo sweep across c * p_hat")
    _add_params_args(p_sweep)
    p_sweep.add_argument("--t", type=int, required=True)
    p_sweep.add_argument(
        "--c-values", type=str, required=True, help="comma-separated factors, e.g. 0.5,1,2,4"
    )
    p_sweep.add_argument("--trials", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--mode", choices=("existence", "count"), default="existence")
    p_sweep.add_argument(
        "--independent-draws",
        action="store_true",
        help="fresh uniforms per point instead of coupled draws",
    )
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--out", type=str, default=None, help="CSV output path")
    p_sweep.add_argument("--budget", type=int, default=None, help="per trial")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_dist = sub.add_parser("distribution", help="copy-count histogram vs Poisson")
    _add_params_args(p_dist)
    p_dist.add_argument("--t", type=int, required=True)
    p_dist.add_argument("--p", type=float, required=True)
    p_dist.add_argument("--trials", type=int, required=True)
    p_dist.add_argument("--seed", type=int, default=0)
    p_dist.add_argument("--budget", type=int, default=None)
    p_dist.set_defaults(fn=_cmd_distribution)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, EnumerationCapError) as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
