"""Laminates of finite order, their piecewise-affine realizations, and
numerical certificates that the gradient/flux integral ratio of the
p-Laplacian grows without bound along the construction."""

from .mat2 import Mat2, outer, rank_one_connection, signed_pow
from .flux import p_flux, residual_field, rotated_row2
from .threshold import choose_b, decay_exponent, threshold_exponent
from .laminate import (
    Atom,
    AtomLabel,
    Laminate,
    SplitStep,
    SplitTree,
    build_laminate,
    cumulative_weights,
    initial_split,
    initial_weight,
    intermediate_matrix,
    laminate_from_dict,
    laminate_to_dict,
    load_laminate,
    log_tail_weight,
    matrix_family,
    min_support_distance,
    save_laminate,
    split_coefficients,
    tail_weight,
    validate_split_tree,
)

__version__ = "0.1.0"
