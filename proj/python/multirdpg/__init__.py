"""Joint low-rank PSD embedding of multiple graphs on shared nodes.

Thin Python surface over the C++ core: PSD projection, graph generation,
the alternating-minimization fitter, the common-weights fit, the entrywise
permutation test, and the evaluation metrics.
"""

from ._core import (
    DataError,
    FitResult,
    NumericalError,
    TestResult,
    __version__,
    adjacency_error,
    build_u_structured,
    downsample_edges,
    edge_probabilities,
    fit_common_lambda,
    fit_multi_rdpg,
    fit_rdpg_single,
    permutation_test,
    permute_graphs,
    positive_part,
    read_edge_list,
    sample_graph,
    subspace_distance,
    symmetric_positive_part,
    test_statistic,
)

__all__ = [
    "DataError",
    "FitResult",
    "NumericalError",
    "TestResult",
    "__version__",
    "adjacency_error",
    "build_u_structured",
    "downsample_edges",
    "edge_probabilities",
    "fit_common_lambda",
    "fit_multi_rdpg",
    "fit_rdpg_single",
    "permutation_test",
    "permute_graphs",
    "positive_part",
    "read_edge_list",
    "sample_graph",
    "subspace_distance",
    "symmetric_positive_part",
    "test_statistic",
]
