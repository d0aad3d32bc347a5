"""Generalized Johnson graphs G(n, r, s): exact combinatorics, cycle censuses,
and seeded edge-percolation experiments around the cycle-appearance threshold."""

from .combinatorics import (
    GraphParams,
    LeadingTerm,
    MRange,
    Threshold,
    a_ij,
    a_ij_leading,
    a_ij_nonzero,
    binom,
    degree,
    m_range,
    threshold_p,
    vertex_count,
)
from .counting import (
    CanonicalCycle,
    CycleCensus,
    ExactMoments,
    OverlapStats,
    WorkBudget,
    count_cycles_direct,
    count_cycles_lemma,
    count_paths,
    enumerate_cycles,
    exact_moments,
    overlap,
)
from .errors import (
    BudgetExceededError,
    ConsistencyError,
    EnumerationCapError,
    ParameterError,
)
from .experiments import (
    DistributionReport,
    SweepRow,
    SweepSpec,
    distribution_check,
    run_sweep,
    wilson_interval,
    write_sweep_csv,
)
from .graph import (
    adjacent,
    all_vertices,
    edges,
    edge_rank_pairs,
    format_vertex,
    intersection_size,
    neighbors,
    partition_class,
    rank_vertex,
    unrank_vertex,
)
from .sampling import (
    PercolationSample,
    SampleConfig,
    TrialResult,
    count_copies,
    draw_sample,
    has_cycle_t,
    run_trials,
    trial_seed,
)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
