"""Cut-set bounds and explicit codes for single-receiver network computing.

The library models directed acyclic networks whose single receiver must
compute a target function of all source messages.  It computes the
cut-set upper bound on the computing capacity, a family of lower bounds
(tree constructions, fractional Steiner packing, prime-field simulation,
histogram reduction, footprint growth classes), and constructs and
exhaustively verifies explicit (k, n) codes at desk scale.
"""

from .bounds import (
    BoundEntry,
    BoundsReport,
    SteinerPacking,
    bounds_report,
    build_NML,
    enumerate_steiner_trees,
    lower_bound_arith_sum,
    lower_bound_divisible,
    lower_bound_general,
    lower_bound_lambda_bdd,
    lower_bound_lambda_exp,
    lower_bound_symmetric,
    lower_bound_weighted,
    min_cut_classic,
    min_cut_f,
    min_cut_f_flow,
    mincut_NML_closed_form,
    rate_upper_NML,
    smallest_prime_above,
    steiner_packing,
    tree_subnetwork,
)
from .catalog import builtin_example
from .codes import (
    BUDGET_EXHAUSTED,
    INFEASIBLE,
    NetworkCode,
    VerificationOutcome,
    best_tree_rate_pair,
    code_from_json,
    code_to_json,
    diamond_code,
    diamond_counting_feasible,
    diamond_network,
    repeat_code,
    reverse_butterfly_network,
    reverse_butterfly_xor_code,
    search_code,
    simulate_alphabet,
    tree_code,
    tree_rate_bound,
    verify_code,
)
from .functions import (
    FootprintResult,
    TargetFunction,
    arithmetic_sum,
    divisible_necessary_check,
    evaluate,
    footprint,
    footprint_size,
    footprint_table,
    histogram,
    identity,
    is_symmetric,
    lambda_bounded_index,
    lambda_exponential_index,
    linear,
    maximum,
    min_footprint,
    minimum,
    mod_sum,
    range_size,
    table_function,
)
from .network import (
    Cut,
    Network,
    NetworkSpec,
    classify_cut,
    compile_network,
    enumerate_cuts,
    is_multi_edge_tree,
    min_edge_cut,
)
from .sumsets import (
    BlockFamily,
    binary_entropy,
    check_downward_closure,
    check_hamming_count,
    check_invariance,
    check_sumset_shrink,
    compress,
    gamma,
    h_j,
    lemma_A2_check,
    phi_j,
    product_min_bound,
    q_sum,
    q_sumset,
    random_family,
)

__version__ = "0.1.0"
