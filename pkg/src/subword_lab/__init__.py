"""Exact-arithmetic toolkit for reduced-word combinatorics of finite
Coxeter groups, sign functions on braid-move graphs, model-matrix
determinant factorizations through partial Schur functions, and
signature-matrix / chirotope verification for subword complexes."""

from .complexes import (
    ChirotopeData,
    GaleMatrixData,
    SubwordComplex,
    Verdict,
    build_complex,
    check_schur_conditions,
    check_signature_matrix,
    chirotope_from_matrix,
    extract_parameter_tensor,
    gale_transform,
    occurrences,
)
from .coxeter import (
    Budget,
    BudgetExceededError,
    CoxeterSystem,
    SpectrumResult,
    abelian_spectrum,
    braid_move_targets,
    c_sorting_word,
    coxeter_system,
    demazure_product,
    is_reduced,
    longest_element_reduced_words,
    reduced_words,
)
from .polyring import (
    ExactDivisionError,
    MPoly,
    conjugate_partition,
    det_poly,
    exact_divide,
    partial_schur,
    schur,
    schur_value,
    vandermonde_divisor,
    x_var,
)
from .redgraph import (
    RedGraph,
    SignAssignment,
    bipartition,
    build_graph,
    contract,
    contract_preset,
    punctual_sign,
    t_sign,
    to_dot,
    to_json,
)
from .tensors import (
    FactoredDeterminant,
    ModelMatrix,
    ParameterTensor,
    counting_parameter_tensor,
    det_factored,
    minor_support,
    model_matrix,
    parameter_minor,
    random_parameter_tensor,
    sign_of_model_det,
    standard_partitions,
)
from .words import (
    BraidMoveContext,
    Word,
    abelian_vector,
    braid_move_sign_ratio,
    format_word,
    inversion_number,
    parse_word,
    s_sign,
    standardization,
)

__version__ = "0.1.0"
