"""Curvature-gauge: bilinear-form curvature algebra, sphere quadrature and
total-curvature identities for immersions in low codimension."""

from .errors import (
    CodimensionError,
    ConditionError,
    ConstraintError,
    CurvatureGaugeError,
    DegeneratePoint,
    DegenerateRegion,
    DimensionError,
    EmptyDomain,
    GenericityError,
    HypothesisViolation,
    KSignError,
    NormalizationError,
    PatternError,
    ResolutionError,
    SignError,
)
from .kernels import BACKEND
from .tensor_core import (
    BilinearForm,
    QuadTensor,
    Subspace,
    SymmetricOperator,
    diagonal_form,
    gauss_curvature,
    index_of,
    is_flat,
    kn_scalar,
    kn_vector,
    lemma_decompose,
    nullity_space,
    r1_tensor,
    sc,
    scal,
    sharp,
    umbilic_form,
)
from .quadrature import (
    ProductRule,
    SphereRule,
    circle_rule,
    integrate_region,
    integrate_unit_normal_bundle,
    pairwise_sum,
    sphere_rule,
    sphere_volume,
)
from .topology import PoincarePolynomial, betti_window_sum, product_poincare, sphere_poincare
from .submanifolds import (
    FunctionalValue,
    ProductOfSpheres,
    SphereInCodim,
    curvature_functional,
    lipschitz_killing,
    make_rules,
    pinch_ratio,
    second_fundamental_form,
    total_abs_curvature,
    total_curvature_by_index,
    total_curvature_index,
)
from .morse import (
    MorseProfile,
    chern_lashof_check,
    height_critical_points,
    morse_inequality_check,
    mu_counts,
    shiohama_xu_check,
)
from .constants_lab import (
    ConstantEstimate,
    SequencePattern,
    SequenceRecord,
    default_pattern,
    empirical_epsilon,
    estimate_constant,
    example_beta_sequence,
    example_sequence,
    omega_ratio,
    phi_k,
    phi_scal,
    positive_sc_pattern,
    psi,
    region_of,
    remark_bound,
)

__version__ = "0.1.0"
