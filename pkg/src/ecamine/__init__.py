"""Elementary-CA input/output databases mined through correlation spectra.

Build the table of one-step rule outputs over all binary patterns of a
given length (optionally corrupted by per-bit noise), standardize it, and
study the eigenvalue spectrum of the resulting correlation matrix.
"""

from .ca import (
    BitPattern,
    Rule,
    cardinal,
    enumerate_patterns,
    evolve_open,
    rule_from_index,
    rule_index,
)
from .dataset import (
    ALL_RULES,
    CenteredMatrix,
    DataMatrix,
    build_matrix,
    center_and_weigh,
    read_table_csv,
    standardize,
    table_csv_string,
    write_table_csv,
)
from .experiments import (
    Check,
    ExperimentConfig,
    ReferenceTable,
    RunReport,
    compare,
    convergence_sweep,
    load_reference,
    run,
)
from .noise import NoiseModel, flip_bits
from .spectral import (
    KlBasis,
    Spectrum,
    count_components,
    covariance,
    dual_spectrum,
    eig_sym,
    kl_project,
    kl_reconstruct,
    symmetrize,
    truncation_error,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_RULES",
    "BitPattern",
    "CenteredMatrix",
    "Check",
    "DataMatrix",
    "ExperimentConfig",
    "KlBasis",
    "NoiseModel",
    "ReferenceTable",
    "Rule",
    "RunReport",
    "Spectrum",
    "build_matrix",
    "cardinal",
    "center_and_weigh",
    "compare",
    "convergence_sweep",
    "count_components",
    "covariance",
    "dual_spectrum",
    "eig_sym",
    "enumerate_patterns",
    "evolve_open",
    "flip_bits",
    "kl_project",
    "kl_reconstruct",
    "load_reference",
    "read_table_csv",
    "rule_from_index",
    "rule_index",
    "run",
    "standardize",
    "symmetrize",
    "table_csv_string",
    "truncation_error",
    "write_table_csv",
]
