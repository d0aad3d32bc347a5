"""Self-verification: every exact identity checked against an independent route.

The formula side (closed-form A(i, j), the path/cycle identity, the path-count
bounds) is compared against brute-force counting over explicitly materialized
vertex sets.  The brute-force side is vectorized set arithmetic and never
touches the formulas it checks.

Instances whose exhaustive side does not fit the per-instance budget are
recorded as skipped, not failed: the asymptotic regime is unreachable by
enumeration on purpose.  A run that exhausts its total budget stops early and
reports itself as partial.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .combinatorics import GraphParams, a_ij, a_ij_leading, a_ij_nonzero, binom, m_range
from .counting import (
    WorkBudget,
    count_cycles_direct,
    count_cycles_lemma,
    count_paths,
    enumerate_cycles,
    overlap,
)
from .errors import BudgetExceededError, EnumerationCapError, ParameterError

__all__ = [
    "CheckResult",
    "VerificationReport",
    "aij_bruteforce_failures",
    "special_identity_failures",
    "row_sum_failures",
    "nonzero_class_failures",
    "leading_ratio_failures",
    "census_instance_check",
    "overlap_invariant_failures",
    "valid_params_grid",
    "run_verification",
]


@dataclass
class CheckResult:
    name: str
    failures: list[str] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    partial: bool = False  # total budget ran out before the grid finished

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = f", {c.skipped} skipped (budget)" if c.skipped else ""
            lines.append(f"[{status}] {c.name}: {c.checked} checked{extra}")
            for f in c.failures[:10]:
                lines.append(f"    {f}")
            if len(c.failures) > 10:
                lines.append(f"    ... and {len(c.failures) - 10} more")
        if self.partial:
            lines.append("NOTE: total budget exhausted; report is partial")
        return lines


def valid_params_grid(max_n: int, max_r: int) -> list[GraphParams]:
    """All valid parameter triples with n <= max_n, r <= max_r."""
    out = []
    for n in range(2, max_n + 1):
        for r in range(1, min(max_r, n - 1) + 1):
            for s in range(0, r):
                try:
                    out.append(GraphParams(n, r, s))
                except ParameterError:
                    continue  # edgeless triple
    return out


def _intersection_matrix(params: GraphParams) -> np.ndarray:
    """M[a, b] = |vertex_a intersect vertex_b| over all rank pairs, rank-indexed."""
    from .graph import all_vertices

    members = np.zeros((params.vertex_count, params.n), dtype=np.float32)
    for rk, v in enumerate(all_vertices(params)):
        for e in v:
            members[rk, e - 1] = 1.0
    return (members @ members.T).astype(np.int16)


def aij_bruteforce_failures(params: GraphParams) -> tuple[list[str], int]:
    """Compare a_ij against |V_j(y) intersect V_s(x)| for every vertex pair.

    Brute force: with M the pairwise intersection-size matrix, the count for
    (y, x, j) is sum_z [M[y,z] = j][M[x,z] = s], a matrix product; x = y
    covers the i = r case.  Returns (failures, comparisons).
    """
    M = _intersection_matrix(params)
    S = (M == params.s).astype(np.float32)
    failures = []
    comparisons = 0
    for j in range(params.r + 1):
        Pj = (M == j).astype(np.float32)
        counts = np.rint(Pj @ S.T).astype(np.int64)  # counts[y, x]
        table = np.array([a_ij(params, i, j) for i in range(params.r + 1)], dtype=np.int64)
        expected = table[M.astype(np.int64)]
        comparisons += counts.size
        if not np.array_equal(counts, expected):
            bad = np.argwhere(counts != expected)
            y, x = bad[0]
            failures.append(
                f"{params} j={j}: brute force {counts[y, x]} != a_ij {expected[y, x]} "
                f"at (y_rank={y}, x_rank={x}, i={M[y, x]})"
            )
    return failures, comparisons


def special_identity_failures(params: GraphParams) -> list[str]:
    """A(r, j) = delta(s, j) * N1 and A(i, r) = delta(i, s)."""
    failures = []
    n1 = params.degree
    for j in range(params.r + 1):
        expect = n1 if j == params.s else 0
        got = a_ij(params, params.r, j)
        if got != expect:
            failures.append(f"{params}: A(r,{j}) = {got}, expected {expect}")
    for i in range(params.r + 1):
        expect = 1 if i == params.s else 0
        got = a_ij(params, i, params.r)
        if got != expect:
            failures.append(f"{params}: A({i},r) = {got}, expected {expect}")
    return failures


def row_sum_failures(params: GraphParams) -> list[str]:
    """sum_j A(i, j) = N1 for every realizable i (class V_i(y) non-empty)."""
    failures = []
    for i in range(params.r + 1):
        class_size = binom(params.r, i) * binom(params.n - params.r, params.r - i)
        if class_size == 0:
            continue  # no x realizes intersection i at this n
        total = sum(a_ij(params, i, j) for j in range(params.r + 1))
        if total != params.degree:
            failures.append(f"{params}: sum_j A({i},j) = {total} != N1 = {params.degree}")
    return failures


def nonzero_class_failures(params: GraphParams) -> list[str]:
    """For n >= 4r the large-n zero/nonzero classification is already exact."""
    failures = []
    if params.n < 4 * params.r:
        return failures
    for i in range(params.r + 1):
        for j in range(params.r + 1):
            predicted = a_ij_nonzero(params.r, params.s, i, j)
            value = a_ij(params, i, j)
            rng = m_range(params, i, j)
            if predicted and (value <= 0 or rng.empty):
                failures.append(f"{params}: class ({i},{j}) predicted nonzero, a_ij={value}")
            if not predicted and value != 0:
                failures.append(f"{params}: class ({i},{j}) predicted zero, a_ij={value}")
    return failures


def leading_ratio_failures(
    max_r: int, n: int = 1600, band: tuple[float, float] = (0.9, 1.1)
) -> list[str]:
    """a_ij / leading-term within band for every nonzero class at a large n."""
    failures = []
    lo, hi = band
    for r in range(1, max_r + 1):
        for s in range(0, r):
            params = GraphParams(n, r, s)
            for i in range(r + 1):
                for j in range(r + 1):
                    if not a_ij_nonzero(r, s, i, j):
                        continue
                    lead = a_ij_leading(r, s, i, j)
                    ratio = a_ij(params, i, j) / lead.evaluate(n)
                    if not lo <= ratio <= hi:
                        failures.append(
                            f"r={r} s={s} i={i} j={j} at n={n}: ratio {ratio:.6f} "
                            f"outside [{lo}, {hi}]"
                        )
    return failures


@dataclass
class CensusCheckOutcome:
    params: GraphParams
    t: int
    skipped: bool = False
    spent: int = 0
    p_t: int | None = None
    c_t: int | None = None
    failures: list[str] = field(default_factory=list)


def census_instance_check(
    params: GraphParams,
    t: int,
    budget_limit: int,
    check_all_edges: bool = True,
) -> CensusCheckOutcome:
    """Cross-check both cycle-count routes (and path-count bounds) on one instance."""
    out = CensusCheckOutcome(params=params, t=t)
    budget = WorkBudget(budget_limit)
    try:
        direct = count_cycles_direct(params, t, budget)
        via_identity = count_cycles_lemma(params, t, budget)
        if check_all_edges:
            p_t = count_paths(params, t, "all-edges-check", budget)
        else:
            p_t = via_identity.p_t
    except BudgetExceededError:
        out.skipped = True
        out.spent = budget.spent
        return out
    out.spent = budget.spent

    out.p_t = p_t
    out.c_t = direct.c_t
    if direct.c_t != via_identity.c_t:
        out.failures.append(
            f"{params} t={t}: direct c_t={direct.c_t} != identity c_t={via_identity.c_t}"
        )
    if p_t != via_identity.p_t:
        out.failures.append(
            f"{params} t={t}: all-edges p_t={p_t} != canonical p_t={via_identity.p_t}"
        )
    n1 = params.degree
    if p_t > n1 ** (t - 2):
        out.failures.append(f"{params} t={t}: p_t={p_t} exceeds N1^(t-2)={n1 ** (t - 2)}")
    a_ss = a_ij(params, params.s, params.s)
    if a_ss > t and p_t < (a_ss - t) ** (t - 2):
        out.failures.append(
            f"{params} t={t}: p_t={p_t} below (A_ss - t)^(t-2)={(a_ss - t) ** (t - 2)}"
        )
    # Exact census ceiling, valid at every n.
    if 2 * t * direct.c_t > params.vertex_count * n1 ** (t - 1):
        out.failures.append(
            f"{params} t={t}: 2t*c_t={2 * t * direct.c_t} exceeds N*N1^(t-1)"
        )
    # Asymptotic-shape ceiling n^s * N1^t: replaces N by n^s * N1, so it is
    # only implied by the exact chain once N <= n^s * N1 (large n; never at
    # small n when s = 0).  Checked only inside its validity regime.
    if params.vertex_count <= params.n**params.s * n1:
        if 2 * t * direct.c_t > params.n**params.s * n1**t:
            out.failures.append(
                f"{params} t={t}: 2t*c_t={2 * t * direct.c_t} exceeds n^s*N1^t"
            )
    return out


def overlap_invariant_failures(
    params: GraphParams, t: int, budget_limit: int, cycle_cap: int = 200
) -> tuple[list[str], int]:
    """alpha <= x <= t - alpha and alpha <= floor(t/2) over all distinct pairs."""
    try:
        cycles = enumerate_cycles(params, t, limit=cycle_cap, budget=WorkBudget(budget_limit))
    except (BudgetExceededError, EnumerationCapError):
        return [], 0
    failures = []
    pairs = 0
    for ia in range(len(cycles)):
        for ib in range(ia + 1, len(cycles)):
            st = overlap(cycles[ia], cycles[ib])
            x, alpha = st.shared_edges, st.maximal_paths
            if x == 0:
                if alpha != 0:
                    failures.append(f"{params} t={t}: x=0 but alpha={alpha}")
                continue
            pairs += 1
            if not (1 <= alpha <= x <= t - alpha) or alpha > t // 2:
                failures.append(
                    f"{params} t={t}: invalid overlap x={x}, alpha={alpha} "
                    f"(cycles {cycles[ia].vertices} / {cycles[ib].vertices})"
                )
    return failures, pairs


def run_verification(
    max_n: int = 9,
    max_r: int = 3,
    t_min: int = 3,
    t_max: int = 8,
    per_instance_budget: int = 2_000_000,
    total_budget: int = 200_000_000,
) -> VerificationReport:
    """Run the full identity suite over the parameter grid."""
    grid = valid_params_grid(max_n, max_r)

    aij_check = CheckResult(name="a_ij equals brute-force census")
    for params in grid:
        failures, comparisons = aij_bruteforce_failures(params)
        aij_check.failures.extend(failures)
        aij_check.checked += comparisons

    special_check = CheckResult(name="boundary identities A(r,j), A(i,r)")
    rowsum_check = CheckResult(name="row sums equal the degree")
    class_check = CheckResult(name="large-n zero/nonzero classification")
    for params in grid:
        special_check.failures.extend(special_identity_failures(params))
        special_check.checked += 2 * (params.r + 1)
        rowsum_check.failures.extend(row_sum_failures(params))
        rowsum_check.checked += params.r + 1
        class_check.failures.extend(nonzero_class_failures(params))
        class_check.checked += (params.r + 1) ** 2 if params.n >= 4 * params.r else 0

    ratio_check = CheckResult(name="leading-term ratio near 1 at large n")
    ratio_check.failures.extend(leading_ratio_failures(max_r))
    ratio_check.checked += 1

    census_check = CheckResult(name="cycle censuses agree (identity vs direct)")
    bounds_check = CheckResult(name="path-count bounds and census upper bound")
    partial = False
    remaining = total_budget
    for params in grid:
        for t in range(t_min, t_max + 1):
            if remaining <= 0:
                partial = True
                break
            outcome = census_instance_check(params, t, min(per_instance_budget, remaining))
            remaining -= outcome.spent
            if outcome.skipped:
                if remaining <= 0:
                    partial = True
                else:
                    census_check.skipped += 1
                continue
            census_check.checked += 1
            bounds_check.checked += 1
            for f in outcome.failures:
                target = bounds_check if ("exceeds" in f or "below" in f) else census_check
                target.failures.append(f)
        if partial:
            break

    overlap_check = CheckResult(name="pairwise overlap statistics are path-shaped")
    for params in grid:
        if params.vertex_count > 40:
            continue
        for t in range(t_min, min(t_max, 6) + 1):
            failures, pairs = overlap_invariant_failures(params, t, per_instance_budget)
            overlap_check.failures.extend(failures)
            overlap_check.checked += pairs

    return VerificationReport(
        checks=[
            aij_check,
            special_check,
            rowsum_check,
            class_check,
            ratio_check,
            census_check,
            bounds_check,
            overlap_check,
        ],
        partial=partial,
    )
