"""Monte Carlo experiments over multiples of the cycle-appearance threshold.

A sweep fixes (n, r, s, t) and a list of factors c; each point runs trials at
p = c * p_hat where p_hat = n**(-s/t) / N1 is the degree-normalized threshold.
Points are parameterized multiplicatively because the transition of interest
happens within constant factors of p_hat.  Output is a CSV with a fixed
header; determinism is byte-level given the master seed, independent of the
number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Sequence

from scipy import stats as _scipy_stats

from .combinatorics import GraphParams, a_ij, threshold_p
from .counting import count_cycles_lemma
from .errors import BudgetExceededError, ParameterError
from .sampling import (
    SampleConfig,
    count_copies,
    has_cycle_t,
    run_single_trial,
    sample_from_uniforms,
    trial_uniforms,
    WorkBudget,
)

__all__ = [
    "CSV_HEADER",
    "wilson_interval",
    "SweepSpec",
    "SweepRow",
    "run_sweep",
    "write_sweep_csv",
    "DistributionReport",
    "distribution_check",
]

# Consumers may rely on this exact column order.
CSV_HEADER = (
    "n,r,s,t,c_factor,p,trials,successes,prob_hat,wilson_lo,wilson_hi,"
    "mean_copies,var_copies,ln_expected_copies,clamped,failed,seed"
)

_Z_95 = 1.959963984540054


def wilson_interval(successes: int, trials: int, z: float = _Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the Wald interval because near-threshold success probabilities
    sit close to 0 or 1, where the normal approximation collapses.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ParameterError(f"successes={successes} outside [0, trials={trials}]")
    ph = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (ph + z2 / (2 * trials)) / denom
    half = z * math.sqrt(ph * (1.0 - ph) / trials + z2 / (4 * trials * trials)) / denom
    # at ph = 0 (resp. 1) the score bound is exactly 0 (resp. 1); pin it so
    # rounding cannot push the interval off the point estimate
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: points p = c * p_hat for each factor c, ``trials`` trials each.

    With ``coupled=True`` (default) all points of a trial share the same
    per-edge uniforms, so the retained sets are nested along c and success is
    monotone per trial.  With ``coupled=False`` point k draws its trials from
    substream indices k*trials .. k*trials + trials - 1.
    """

    params: GraphParams
    t: int
    c_factors: tuple[float, ...]
    trials: int
    master_seed: int
    mode: str = "existence"
    coupled: bool = True
    budget_limit: int | None = None
    census_budget: int = 10**6

    def __post_init__(self):
        if self.t < 3:
            raise ParameterError(f"cycle length t must be >= 3, got {self.t}")
        if not self.c_factors:
            raise ParameterError("c_factors must be non-empty")
        if any(c <= 0 for c in self.c_factors):
            raise ParameterError(f"c_factors must be positive, got {self.c_factors}")
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if self.mode not in ("existence", "count"):
            raise ParameterError(f"mode must be 'existence' or 'count', got {self.mode!r}")
        object.__setattr__(self, "c_factors", tuple(sorted(self.c_factors)))


@dataclass(frozen=True)
class SweepRow:
    """Aggregate of one sweep point; field order matches CSV_HEADER."""

    n: int
    r: int
    s: int
    t: int
    c_factor: float
    p: float
    trials: int
    successes: int
    prob_hat: float | None
    wilson_lo: float | None
    wilson_hi: float | None
    mean_copies: float | None
    var_copies: float | None
    ln_expected_copies: str
    clamped: int
    failed: int
    seed: int


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _ln_expected_copies(spec: SweepSpec, p: float) -> str:
    """ln(c_t * p**t), exact when the census fits the budget, else "lo:hi".

    The fallback bounds come from the exact per-edge path-count inequalities
    (A_s^s - t)**(t-2) <= p_t <= N1**(t-2) pushed through the cycle identity
    c_t = N * N1 * p_t / (2t); both sides are finite-n exact, so the true
    value always lies in [lo, hi].
    """
    params, t = spec.params, spec.t
    ln_p = math.log(p) if p > 0.0 else float("-inf")
    try:
        census = count_cycles_lemma(params, t, WorkBudget(spec.census_budget))
    except BudgetExceededError:
        base = math.log(params.vertex_count) + math.log(params.degree) - math.log(2 * t)
        a_ss = a_ij(params, params.s, params.s)
        if a_ss > t:
            lo = base + (t - 2) * math.log(a_ss - t) + t * ln_p
        else:
            lo = float("-inf")
        hi = base + (t - 2) * math.log(params.degree) + t * ln_p
        return f"{lo!r}:{hi!r}"
    if census.c_t == 0 or p == 0.0:
        return repr(float("-inf"))
    return repr(math.log(census.c_t) + t * math.log(p))


def _coupled_trial(spec: SweepSpec, ps: Sequence[float], trial_index: int):
    """Evaluate every sweep point of one trial on shared uniforms."""
    u = trial_uniforms(spec.params, spec.master_seed, trial_index)
    out = []
    for p in ps:
        config = SampleConfig(
            params=spec.params, p=p, master_seed=spec.master_seed, trial_index=trial_index
        )
        sample = sample_from_uniforms(config, u)
        budget = WorkBudget(spec.budget_limit) if spec.budget_limit else WorkBudget()
        try:
            if spec.mode == "count":
                copies = count_copies(sample, spec.t, budget)
                out.append((copies >= 1, copies, False))
            else:
                out.append((has_cycle_t(sample, spec.t, budget), None, False))
        except BudgetExceededError:
            out.append((False, None, True))
    return out


def _independent_trial(spec: SweepSpec, ps: Sequence[float], trial_index: int):
    out = []
    for point_index, p in enumerate(ps):
        res = run_single_trial(
            spec.params,
            p,
            spec.t,
            spec.master_seed,
            point_index * spec.trials + trial_index,
            spec.mode,
            spec.budget_limit,
        )
        out.append((res.contains_cycle, res.copy_count, res.failed))
    return out


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Run the sweep and return one row per c factor, in ascending c order.

    Trials are independent tasks aggregated in trial-index order with integer
    accumulators, so the result (and hence the CSV) is identical for any
    ``workers`` count.
    """
    p_hat = threshold_p(spec.params, spec.t, "exact-degree").value
    points = []
    for c in spec.c_factors:
        raw = c * p_hat
        points.append((c, min(raw, 1.0), 1 if raw > 1.0 else 0))
    ps = [p for _, p, _ in points]

    trial_fn = _coupled_trial if spec.coupled else _independent_trial
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: trial_fn(spec, ps, i), range(spec.trials)))
    else:
        results = [trial_fn(spec, ps, i) for i in range(spec.trials)]

    rows = []
    for k, (c, p, clamped) in enumerate(points):
        successes = 0
        failed = 0
        copy_sum = 0
        copy_sumsq = 0
        have_copies = spec.mode == "count"
        for per_trial in results:
            success, copies, trial_failed = per_trial[k]
            if trial_failed:
                failed += 1
                continue
            successes += 1 if success else 0
            if have_copies:
                copy_sum += copies
                copy_sumsq += copies * copies
        completed = spec.trials - failed
        prob_hat = wl = wh = None
        mean_copies = var_copies = None
        if completed > 0:
            prob_hat = successes / completed
            wl, wh = wilson_interval(successes, completed)
            if have_copies:
                mean_copies = copy_sum / completed
                if completed > 1:
                    var_copies = (copy_sumsq - completed * mean_copies * mean_copies) / (
                        completed - 1
                    )
        rows.append(
            SweepRow(
                n=spec.params.n,
                r=spec.params.r,
                s=spec.params.s,
                t=spec.t,
                c_factor=c,
                p=p,
                trials=spec.trials,
                successes=successes,
                prob_hat=prob_hat,
                wilson_lo=wl,
                wilson_hi=wh,
                mean_copies=mean_copies,
                var_copies=var_copies,
                ln_expected_copies=_ln_expected_copies(spec, p),
                clamped=clamped,
                failed=failed,
                seed=spec.master_seed,
            )
        )
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], fp: IO[str]) -> None:
    """Write rows under the fixed header.  LF endings, decimal dot, UTF-8."""
    fp.write(CSV_HEADER + "\n")
    for row in rows:
        fields = [
            row.n, row.r, row.s, row.t, row.c_factor, row.p, row.trials,
            row.successes, row.prob_hat, row.wilson_lo, row.wilson_hi,
            row.mean_copies, row.var_copies, row.ln_expected_copies,
            row.clamped, row.failed, row.seed,
        ]
        fp.write(",".join(_fmt(f) for f in fields) + "\n")


@dataclass(frozen=True)
class DistributionReport:
    """Copy-count histogram vs the matching-mean Poisson reference.

    Diagnostic only: the Poisson shape is an asymptotic statement, so no
    pass/fail is attached here.
    """

    params: GraphParams
    t: int
    p: float
    trials: int
    histogram: dict[int, int]
    poisson_mean: float
    tv_distance: float


def distribution_check(
    params: GraphParams,
    t: int,
    p: float,
    trials: int,
    master_seed: int,
    budget_limit: int | None = None,
) -> DistributionReport:
    """Empirical copy-count distribution and its total-variation distance to
    Poisson(c_t * p**t)."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"retention probability must lie in [0, 1], got {p}")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    census = count_cycles_lemma(params, t)
    mean = census.c_t * p**t

    histogram: dict[int, int] = {}
    for i in range(trials):
        res = run_single_trial(params, p, t, master_seed, i, "count", budget_limit)
        if res.failed:
            raise BudgetExceededError(
                f"trial {i} exceeded its budget during distribution check", 0
            )
        histogram[res.copy_count] = histogram.get(res.copy_count, 0) + 1

    k_max = max(histogram)
    tv = 0.0
    for k in range(k_max + 1):
        emp = histogram.get(k, 0) / trials
        tv += abs(emp - float(_scipy_stats.poisson.pmf(k, mean)))
    tv += float(_scipy_stats.poisson.sf(k_max, mean))  # reference mass beyond max observed
    tv *= 0.5
    return DistributionReport(
        params=params,
        t=t,
        p=p,
        trials=trials,
        histogram=dict(sorted(histogram.items())),
        poisson_mean=mean,
        tv_distance=tv,
    )
