"""Edge percolation of G(n, r, s) with reproducible, splittable randomness.

Randomness contract: trial number k of a run with master seed m draws its
edge uniforms from a PCG64 generator seeded with output k of the SplitMix64
stream started at m.  One uniform is drawn per canonical edge, in canonical
edge-stream order, and the edge is retained when its uniform is below p.
Consequences:

* identical (params, p, master_seed, trial_index) gives an identical sample
  bit for bit, regardless of execution order or parallelism;
* for p1 < p2 with the same trial the retained set at p1 is a subset of the
  retained set at p2 (coupled draws), so any increasing property is monotone
  per trial.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import IO, Iterator

import numpy as np

from .combinatorics import GraphParams
from .counting import WorkBudget, _as_budget, iter_canonical_cycles
from .errors import BudgetExceededError, ParameterError
from .graph import edge_rank_pairs

__all__ = [
    "GENERATOR_NAME",
    "trial_seed",
    "edge_arrays",
    "trial_uniforms",
    "SampleConfig",
    "PercolationSample",
    "TrialResult",
    "sample_from_uniforms",
    "draw_sample",
    "has_cycle_t",
    "count_copies",
    "run_single_trial",
    "run_trials",
]

GENERATOR_NAME = "pcg64(splitmix64-per-trial)"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Output number ``trial_index`` of the SplitMix64 stream seeded at ``master_seed``."""
    if trial_index < 0:
        raise ParameterError(f"trial_index must be >= 0, got {trial_index}")
    z = (master_seed + (trial_index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@lru_cache(maxsize=8)
def edge_arrays(params: GraphParams) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint ranks of the canonical edge stream as two parallel arrays."""
    pairs = list(edge_rank_pairs(params))
    a = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
    b = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
    a.flags.writeable = False
    b.flags.writeable = False
    return a, b


def trial_uniforms(params: GraphParams, master_seed: int, trial_index: int) -> np.ndarray:
    """The per-edge uniforms of one trial, in canonical edge order."""
    gen = np.random.Generator(np.random.PCG64(trial_seed(master_seed, trial_index)))
    return gen.random(params.edge_count)


@dataclass(frozen=True)
class SampleConfig:
    """Everything that determines one percolation sample."""

    params: GraphParams
    p: float
    master_seed: int
    trial_index: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"retention probability must lie in [0, 1], got {self.p}")
        if self.trial_index < 0:
            raise ParameterError(f"trial_index must be >= 0, got {self.trial_index}")


@dataclass
class PercolationSample:
    """One edge-retained subgraph, as symmetric adjacency lists over ranks."""

    config: SampleConfig
    pairs: list[tuple[int, int]]
    adjacency: dict[int, list[int]]

    @property
    def retained_edges(self) -> int:
        return len(self.pairs)

    def write_log(self, fp: IO[str]) -> None:
        """Sample log: header ``n r s p master_seed trial_index``, then one
        ``rankA rankB`` line per retained edge, rankA < rankB."""
        c = self.config
        fp.write(f"{c.params.n} {c.params.r} {c.params.s} {c.p!r} {c.master_seed} {c.trial_index}\n")
        for a, b in self.pairs:
            fp.write(f"{a} {b}\n")


def sample_from_uniforms(config: SampleConfig, uniforms: np.ndarray) -> PercolationSample:
    """Threshold the per-edge uniforms at p and assemble the retained subgraph."""
    a, b = edge_arrays(config.params)
    if uniforms.shape != a.shape:
        raise ParameterError(
            f"expected {a.shape[0]} uniforms for {config.params}, got {uniforms.shape[0]}"
        )
    kept = np.flatnonzero(uniforms < config.p)
    pairs: list[tuple[int, int]] = []
    adjacency: dict[int, list[int]] = {}
    for ra, rb in zip(a[kept].tolist(), b[kept].tolist()):
        pairs.append((ra, rb))
        adjacency.setdefault(ra, []).append(rb)
        adjacency.setdefault(rb, []).append(ra)
    for row in adjacency.values():
        row.sort()
    return PercolationSample(config=config, pairs=pairs, adjacency=adjacency)


def draw_sample(config: SampleConfig) -> PercolationSample:
    """Draw the sample determined by ``config``."""
    u = trial_uniforms(config.params, config.master_seed, config.trial_index)
    return sample_from_uniforms(config, u)


def _pruned_core(sample: PercolationSample) -> dict[int, list[int]]:
    """Adjacency after iteratively deleting degree <= 1 vertices.

    Sound for cycle existence and counting: removing a vertex of degree <= 1
    cannot destroy a cycle.  Near-threshold samples are forests plus a few
    extra edges, so this usually collapses the graph to almost nothing.
    """
    degree = {v: len(row) for v, row in sample.adjacency.items()}
    neighbor_sets = {v: set(row) for v, row in sample.adjacency.items()}
    stack = [v for v, d in degree.items() if d <= 1]
    dead: set[int] = set()
    while stack:
        v = stack.pop()
        if v in dead:
            continue
        dead.add(v)
        for w in neighbor_sets[v]:
            if w in dead:
                continue
            neighbor_sets[w].discard(v)
            degree[w] -= 1
            if degree[w] <= 1:
                stack.append(w)
    return {
        v: sorted(nbrs)
        for v, nbrs in neighbor_sets.items()
        if v not in dead and nbrs
    }


def has_cycle_t(
    sample: PercolationSample, t: int, budget: WorkBudget | int | None = None
) -> bool:
    """Whether the sample contains a simple cycle on exactly t vertices.

    Early-exits on the first witness after degree-1 pruning.
    """
    if t < 3:
        raise ParameterError(f"cycle length t must be >= 3, got {t}")
    budget = _as_budget(budget)
    core = _pruned_core(sample)
    if len(core) < t:
        return False
    roots = sorted(core)
    found = next(iter_canonical_cycles(core, roots, t, budget), None)
    return found is not None


def count_copies(
    sample: PercolationSample, t: int, budget: WorkBudget | int | None = None
) -> int:
    """Number of t-cycle copies in the sample (equals the host census at p = 1)."""
    if t < 3:
        raise ParameterError(f"cycle length t must be >= 3, got {t}")
    budget = _as_budget(budget)
    core = _pruned_core(sample)
    if len(core) < t:
        return 0
    roots = sorted(core)
    return sum(1 for _ in iter_canonical_cycles(core, roots, t, budget))


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one percolation trial."""

    trial_index: int
    retained_edges: int
    contains_cycle: bool
    copy_count: int | None = None
    failed: bool = False


def run_single_trial(
    params: GraphParams,
    p: float,
    t: int,
    master_seed: int,
    trial_index: int,
    mode: str = "existence",
    budget_limit: int | None = None,
) -> TrialResult:
    """One trial as a pure function of its arguments; safe to run in parallel."""
    if mode not in ("existence", "count"):
        raise ParameterError(f"mode must be 'existence' or 'count', got {mode!r}")
    config = SampleConfig(params=params, p=p, master_seed=master_seed, trial_index=trial_index)
    sample = draw_sample(config)
    budget = WorkBudget(budget_limit) if budget_limit is not None else WorkBudget()
    try:
        if mode == "count":
            copies = count_copies(sample, t, budget)
            return TrialResult(
                trial_index=trial_index,
                retained_edges=sample.retained_edges,
                contains_cycle=copies >= 1,
                copy_count=copies,
            )
        return TrialResult(
            trial_index=trial_index,
            retained_edges=sample.retained_edges,
            contains_cycle=has_cycle_t(sample, t, budget),
        )
    except BudgetExceededError:
        return TrialResult(
            trial_index=trial_index,
            retained_edges=sample.retained_edges,
            contains_cycle=False,
            copy_count=None,
            failed=True,
        )


def run_trials(
    params: GraphParams,
    p: float,
    t: int,
    trials: int,
    master_seed: int,
    mode: str = "existence",
    budget_limit: int | None = None,
) -> Iterator[TrialResult]:
    """Stream of ``trials`` independent trials, trial i using trial_index = i.

    A trial that exhausts its budget is yielded with ``failed=True`` instead
    of aborting the batch.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    for i in range(trials):
        yield run_single_trial(params, p, t, master_seed, i, mode, budget_limit)
