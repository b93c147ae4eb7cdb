"""Exact characteristic classes of singular varieties and quotient stacks.

Truncated graded rings, multiplicative classes from power series, a small
catalog of smooth spaces, CSM and Hirzebruch classes of arrangement strata,
finite-group counting, and constructible-function calculus on stratified
stack models.
"""
from .classes import (
    BundleData,
    CharClassSeries,
    apply_series,
    line_bundle,
    named_series,
    series_chern,
    series_L,
    series_tdy,
    series_todd,
    trivial_bundle,
)
from .csm import (
    Arrangement,
    CsmClass,
    csm_complement,
    csm_of_function,
    csm_smooth,
    csm_stratum,
    enumerative_degree,
    euler_degree,
)
from .errors import EngineError
from .groups import (
    AbelianGroupSpec,
    FiniteGroup,
    conjugacy_class_count,
    group_from_json,
    group_from_preset,
    hom_count,
    measured_value,
)
from .hirzebruch import (
    MotivicClass,
    Ty_of_class,
    Ty_smooth,
    chi_y,
    equivariant_scaling_approx,
    scissor_decompose,
)
from .ring import GradedElement, Poly, RingPresentation, invert_unit, mul, normal_form, parse_element
from .spaces import (
    DivisorSet,
    EquivariantSpace,
    Space,
    borel_approximation,
    equivariant_projective_space,
    hypersurface,
    integrate,
    point,
    product,
    projective_space,
)
from .stacks import (
    ConstructibleFunction,
    StratifiedMap,
    StratifiedStackModel,
    T_A,
    T_A_inverse,
    canonical_function,
    degree_CA,
    integral,
    modified_pushforward,
    orbifold_euler,
    pushforward,
)

__version__ = "0.1.0"
