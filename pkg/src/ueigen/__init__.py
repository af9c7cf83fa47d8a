"""Unitary eigenpairs of dense complex tensors and geometric entanglement
of multipartite pure states."""

from .tensor import (
    BlockPartition,
    ComplexTensor,
    Permutation,
    RankOneFactors,
    block,
    contract_excluding,
    contract_excluding_conj,
    from_array,
    from_sparse,
    inner,
    norm,
    overlap,
    rank_one,
    tensor_from_json,
    tensor_to_json,
    transpose_p,
    zeros,
)
from .embedding import (
    EmbeddedTensor,
    LiftedEigenpair,
    embedded_from_json,
    embedded_to_json,
    is_symmetric,
    lift_eigenpair,
    shift_to_embedded,
    sym_embed,
)
from .solvers import (
    ALGORITHMS,
    BreakdownError,
    IterationTrace,
    MultiStartResult,
    SolverConfig,
    SolverError,
    UEigenpair,
    ZeroEigenvalueError,
    check_stop,
    multi_start,
    random_start,
    residual,
    solve,
    solve_embed,
    solve_gauss_seidel,
    solve_joint,
)
from .entanglement import (
    AlgorithmStats,
    GmeReport,
    PureState,
    analyze,
    gme_from_lambda,
    verify_closest,
)
from .oracle import (
    OracleResult,
    evaluate_oracles,
    orthogonal_sum_oracle,
    sampling_oracle,
    svd_oracle,
)
from . import catalog

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AlgorithmStats",
    "BlockPartition",
    "BreakdownError",
    "ComplexTensor",
    "EmbeddedTensor",
    "GmeReport",
    "IterationTrace",
    "LiftedEigenpair",
    "MultiStartResult",
    "OracleResult",
    "Permutation",
    "PureState",
    "RankOneFactors",
    "SolverConfig",
    "SolverError",
    "UEigenpair",
    "ZeroEigenvalueError",
    "analyze",
    "block",
    "catalog",
    "check_stop",
    "contract_excluding",
    "contract_excluding_conj",
    "embedded_from_json",
    "evaluate_oracles",
    "embedded_to_json",
    "from_array",
    "from_sparse",
    "gme_from_lambda",
    "inner",
    "is_symmetric",
    "lift_eigenpair",
    "multi_start",
    "norm",
    "orthogonal_sum_oracle",
    "overlap",
    "random_start",
    "rank_one",
    "residual",
    "sampling_oracle",
    "shift_to_embedded",
    "solve",
    "solve_embed",
    "solve_gauss_seidel",
    "solve_joint",
    "svd_oracle",
    "sym_embed",
    "tensor_from_json",
    "tensor_to_json",
    "transpose_p",
    "verify_closest",
    "zeros",
]
