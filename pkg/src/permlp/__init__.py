"""Linear-programming decodable permutation codes.

A code is the set of images ``X @ s`` of an initial arrangement ``s`` under
all permutation matrices ``X`` that satisfy a chosen system of linear
constraints.  The package provides the constraint families, exhaustive code
construction, an LP decoder with a maximum-likelihood certificate, exact
vertex enumeration of the relaxed polytope, pseudo-distance and union-bound
analysis, a message encoder for pure involutions, random constraint
ensembles, and an AWGN simulation harness.
"""

from .bounds import (
    BoundReport,
    derangement_count,
    expected_cardinality,
    expected_weight,
    is_group,
    lp_bound_report,
    lp_union_bound,
    ml_bound_report,
    ml_union_bound,
    q_function,
)
from .channel import (
    EnsembleResult,
    SnrPoint,
    TrialRecord,
    WeightEnsembleResult,
    awgn,
    ensemble_experiment,
    ensemble_weight_experiment,
    sigma_from_snr_db,
    simulate_bler,
)
from .codebook import (
    Code,
    CodeSpec,
    DistanceEnumerator,
    block_min_sq_distance,
    build_code,
    distance_enumerator,
    min_hamming_distance,
    weight_distribution,
)
from .constraints import (
    ConstraintRow,
    ConstraintSystem,
    Relation,
    SparseBinaryMatrix,
    block,
    cyclic,
    derangement,
    involution,
    is_block_permutation,
    pure_involution,
    repetition,
    sample_ensemble,
    satisfies,
    satisfies_mask,
    theta,
    transposition,
)
from .encoder import (
    codeword_rank,
    codeword_unrank,
    dec_map,
    digits_to_message,
    enc_map,
    message_count,
    message_digits,
)
from .lp import (
    DecodeResult,
    InfeasibleCodeError,
    LPProblem,
    LPSolution,
    LPStatus,
    build_decoding_lp,
    lp_decode,
    ml_decode,
    ml_decode_detail,
    solve,
)
from .perm import (
    BRUTE_FORCE_LIMIT,
    BruteForceLimitError,
    PermutationMatrix,
    enumerate_all,
    hamming_distance,
    permutation_table,
    sq_euclidean_distance,
)
from .polytope import (
    BasisBudgetError,
    RationalMatrix,
    VertexSet,
    enumerate_vertices,
    min_pseudo_distance,
    pseudo_distance,
)
from .specfile import CodeSpecFile, SpecFileError, load_spec, parse_spec, save_spec, serialize_spec

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "BasisBudgetError",
    "BoundReport",
    "BruteForceLimitError",
    "Code",
    "CodeSpec",
    "CodeSpecFile",
    "ConstraintRow",
    "ConstraintSystem",
    "DecodeResult",
    "DistanceEnumerator",
    "EnsembleResult",
    "InfeasibleCodeError",
    "LPProblem",
    "LPSolution",
    "LPStatus",
    "PermutationMatrix",
    "RationalMatrix",
    "Relation",
    "SnrPoint",
    "SparseBinaryMatrix",
    "SpecFileError",
    "TrialRecord",
    "VertexSet",
    "WeightEnsembleResult",
    "awgn",
    "block",
    "block_min_sq_distance",
    "build_code",
    "build_decoding_lp",
    "codeword_rank",
    "codeword_unrank",
    "cyclic",
    "dec_map",
    "derangement",
    "digits_to_message",
    "distance_enumerator",
    "enc_map",
    "ensemble_experiment",
    "ensemble_weight_experiment",
    "enumerate_all",
    "enumerate_vertices",
    "derangement_count",
    "expected_cardinality",
    "expected_weight",
    "hamming_distance",
    "involution",
    "is_block_permutation",
    "is_group",
    "load_spec",
    "lp_bound_report",
    "lp_decode",
    "lp_union_bound",
    "message_count",
    "message_digits",
    "min_hamming_distance",
    "min_pseudo_distance",
    "ml_bound_report",
    "ml_decode",
    "ml_decode_detail",
    "ml_union_bound",
    "parse_spec",
    "permutation_table",
    "pseudo_distance",
    "pure_involution",
    "q_function",
    "repetition",
    "sample_ensemble",
    "satisfies",
    "satisfies_mask",
    "save_spec",
    "serialize_spec",
    "sigma_from_snr_db",
    "simulate_bler",
    "solve",
    "sq_euclidean_distance",
    "theta",
    "transposition",
    "weight_distribution",
]
