"""Exact arithmetic for higher-order infinitesimal free probability.

Truncated jet scalars, non-crossing partitions of types A, B and k,
moment-cumulant transforms, boxed convolutions, free additive and
multiplicative convolution of infinitesimal laws, a freeness checker, and
derivation upgrades.  Everything is rational and exact.
"""

from .ck import (
    CkScalar,
    CkSeries,
    LambdaVector,
    NotInvertible,
    ck_inverse,
    ck_mul,
    ck_prod_many,
    series_comp_inverse,
    series_compose,
    series_mul,
)
from .partitions import (
    BarredElement,
    NcPartition,
    SetPartition,
    biane_permutation,
    enumerate_nc,
    is_noncrossing,
    kreweras,
    mobius_to_top,
    ordered_blocks,
    partition_join,
)
from .typek import (
    TypeKPartition,
    enumerate_type_k,
    enumerate_type_k_star,
    is_type_k,
    r_of_shape,
    reduce_mod,
    shape_of,
)
from .cumulants import (
    CumulantTable,
    InfLaw,
    cumulant_of_products,
    cumulants_to_moments,
    infinitesimal_component,
    kappa_pi,
    moments_to_cumulants,
)
from .convolve import (
    additive_convolve,
    boxed_conv_ck,
    boxed_conv_type_b,
    boxed_conv_type_k,
    example_law,
    fourier_transform,
    moments_from_r,
    multiplicative_convolve,
    r_from_moments,
    special_series,
)
from .freeness import (
    Coloring,
    Derivation,
    FreenessVerdict,
    NcPolynomial,
    apply_derivation,
    check_inf_freeness,
    derivative_of_convolution,
    free_product_joint,
    law_at_t,
    product_tuple_cumulants,
    upgraded_law,
)

__version__ = "0.1.0"
