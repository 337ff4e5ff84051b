"""Exact Dyson rank statistics for integer partitions.

The package builds exact tables of rank counts N(m, n), aggregates them
into residue counts N(r, t; n), checks those counts against analytic
envelopes and error budgets, verifies multiplicative convexity of the
residue counts, and maximizes products of residue counts over the parts
of a partition, including closed forms for the maximizing partitions.
"""

from .bounds import (
    BUDGET_CAP,
    RATIO_CAP_2_DERIVED,
    RATIO_CAPS,
    BoundPair,
    ConstantTable,
    ErrorBudget,
    envelope,
    error_budget,
    error_term_bound,
    hardy_ramanujan,
    lehmer_bounds,
    lehmer_estimate,
    lehmer_log_bounds,
    lemma_threshold,
    main_term,
    mu,
    ratio_bound,
    residue_envelope_check,
    s_ratio,
    t_gap,
)
from .cache import CacheFormatError, load_table, save_table
from .convexity import (
    ConvexityReport,
    check_pair,
    scan_region,
    sharpness_frontier,
)
from .core import (
    RankTable,
    a_third_exact,
    brute_rank_counts,
    build_rank_table,
    decomposition_check,
    enumerate_partitions,
    partition_number,
    partition_numbers,
    rank,
    rank_count,
    residue_count,
)
from .maxprod import (
    ClosedFormCase,
    MaxProductEntry,
    VerificationReport,
    brute_max,
    closed_form,
    conjecture_max_mod2,
    max_table,
    product_over_partition,
    replacement_rules,
    verify_closed_forms,
    verify_replacement_rules,
    verify_small_tables,
)

__version__ = "0.1.0"

__all__ = [
    "BUDGET_CAP",
    "RATIO_CAP_2_DERIVED",
    "RATIO_CAPS",
    "BoundPair",
    "CacheFormatError",
    "ClosedFormCase",
    "ConstantTable",
    "ConvexityReport",
    "ErrorBudget",
    "MaxProductEntry",
    "RankTable",
    "VerificationReport",
    "a_third_exact",
    "brute_max",
    "brute_rank_counts",
    "build_rank_table",
    "check_pair",
    "closed_form",
    "conjecture_max_mod2",
    "decomposition_check",
    "enumerate_partitions",
    "envelope",
    "error_budget",
    "error_term_bound",
    "hardy_ramanujan",
    "lehmer_bounds",
    "lehmer_estimate",
    "lehmer_log_bounds",
    "lemma_threshold",
    "load_table",
    "main_term",
    "max_table",
    "mu",
    "partition_number",
    "partition_numbers",
    "product_over_partition",
    "rank",
    "rank_count",
    "ratio_bound",
    "replacement_rules",
    "residue_count",
    "residue_envelope_check",
    "s_ratio",
    "save_table",
    "scan_region",
    "sharpness_frontier",
    "t_gap",
    "verify_closed_forms",
    "verify_replacement_rules",
    "verify_small_tables",
    "__version__",
]
