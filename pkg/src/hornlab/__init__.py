"""Horn inequalities, Littlewood-Richardson coefficients and invariant factors."""
from .errors import DomainError, HornlabError, ResourceLimitError, ValidationError
from .feasibility import (
    FeasibilityVerdict,
    SignedInequality,
    buch_facet_candidates,
    check_hermitian_triple,
    check_integral_via_lr,
    check_rational_via_lr,
    check_scalar_sum_tuple,
    check_singular_additive,
    check_singular_multiplicative,
    feasible_gammas,
    fiedler_bounds,
    gamma_k_interval,
    singular_inequality,
)
from .horn import (
    HornTriple,
    HornTuple,
    h_set_small,
    in_t_set,
    r_set,
    r_set_m,
    s_set,
    s_set_m,
    t_set,
    t_set_m,
    t_violations,
    u_set,
    u_set_m,
)
from .lr import (
    expand_product,
    lr_coefficient,
    lr_fillings,
    pieri_column_expand,
    pieri_row_expand,
    point_class_multiple,
    schubert_coefficient,
)
from .partitions import (
    IndexSet,
    Partition,
    complement_subset,
    conjugate,
    partition_from_subset,
    subset_from_partition,
)

__version__ = "0.1.0"
