"""Exact mixed volumes of rational polytopes, Bezout-type functionals and
their extremal ratios, excluding conditions for minimizers, and desk-scale
root-count verification for sparse bivariate systems."""

from .bezout import (
    BezoutReport,
    bezout_form,
    diskant_check,
    fenchel_form,
    fenchel_sharp_check,
    fgm_check,
    ratio_b,
    ratio_b2,
    ratio_bprime,
    rectangle_lemma_check,
    search_b2_lower,
    xiao_bound_check,
)
from .bkk import (
    SparseBivariatePoly,
    ZeroCountReport,
    bkk_verify,
    count_torus_zeros,
    mixed_area,
    newton_polygon,
    random_system,
)
from .bodies import (
    body_from_obj,
    body_to_obj,
    box,
    corpus_generate,
    crosspolytope,
    cube,
    load_body,
    parse_rational,
    save_body,
    simplex,
    triangular_prism,
)
from .errors import (
    DegenerateDenominator,
    DegenerateInput,
    DimensionMismatch,
    LowerDimensional,
    MixvolError,
    NonGeneric,
    ParseError,
    UnstablePerturbation,
    ValidationError,
    ZeroDirection,
    ZeroPolynomial,
)
from .exclusion import (
    IsopReport,
    PerturbedPolytope,
    affine_isop_search,
    classify_omega,
    isop,
    isop_condition,
    perturb_facet,
    sigma_proportionality,
    stability_interval,
    support_equality_check,
    weakly_decomposable_polytope,
)
from .mixed import (
    BodyTuple,
    body_tuple,
    first_mixed_volume,
    measure_mixed_volume,
    mixed_surface_measure,
    mixed_volume,
    mixed_volume_oracle,
    mixed_volume_segments,
)
from .polytope import (
    DirectionalMeasure,
    Homothety,
    VPolytope,
    edge_directions,
    facet_measure,
    homothety_check,
    inradius,
    is_simplex,
    minkowski_sum,
    project_volume,
    scaled_sum,
    segment,
    support,
    volume,
)

__version__ = "0.1.0"
