"""Local search for highly non-linear balanced Boolean functions."""

from .boolfn import (
    TruthTable,
    format_truth_table,
    hamming_distance,
    hamming_weight,
    parse_truth_table,
    random_balanced,
)
from .census import CensusReport, census, enumerate_balanced
from .criteria import (
    Criterion,
    Ordering,
    compare,
    compare_histograms,
    fitness1,
    fitness2,
    is_strict_improvement,
)
from .mutation import (
    MutationKind,
    mutate_cyclic_shift,
    mutate_inversion,
    mutate_permutation,
    mutate_swap,
)
from .search import BatchResult, RunResult, SearchConfig, Status, first_improvement_ls, run_batch
from .spectrum import (
    SpectrumHistogram,
    WalshSpectrum,
    fwht,
    histogram,
    naive_wht,
    nonlinearity,
    update_after_swap,
)

__version__ = "0.1.0"
