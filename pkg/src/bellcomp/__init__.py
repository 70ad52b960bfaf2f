"""Partial Bell polynomials and weighted integer compositions in exact arithmetic."""

from .bell import (
    BellCache,
    bell_by_strategy,
    bell_by_id1,
    bell_by_id2,
    bell_by_id3,
    bell_by_id4,
    bell_by_id5,
    bell_by_id6,
    bell_direct,
    bell_eval,
    bell_from_compositions,
    corollary1_weight,
    stirling2,
)
from .compositions import (
    PreconditionError,
    WeightFunction,
    convolution_table,
    enumerate_compositions,
    weight_by_convolution,
    weight_by_depril,
    weight_by_enumeration,
    weight_by_part_removal,
    weight_by_partitions,
    weight_by_weighted_conv,
    weight_convolve_split,
    weight_fn_truncate,
    weight_fn_zero_at,
)
from .ring import (
    BigRational,
    DivisibilityError,
    MultiPoly,
    binomial,
    multinomial,
    poly_extract_factor,
    poly_scale_div,
)
from .stochastic import (
    NormalizedWeight,
    Pmf,
    normalize,
    pmf_of_weighted_sum,
    sum_pmf,
    weight_from_pmf,
)

__version__ = "0.1.0"
