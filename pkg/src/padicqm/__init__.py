"""Exact p-adic quantum-mechanical operator calculus over Q_p(sqrt(mu))."""

from .errors import PadicError, PrecisionExhausted, ValidationError
from .hilbert import (
    BasisRotation,
    PVector,
    basis_vector,
    find_isotropic,
    find_norm_two_element,
    inner_product,
    is_norm_orthogonal,
    is_orthonormal_system,
    isotropy_index,
    rotation_on_pairs,
    sqrt_minus_one,
    sup_norm,
)
from .operators import (
    BlockOperator,
    CanonicalDecomposition,
    DecayCertificate,
    GeneratorOperator,
    OperatorClassification,
    SymmetricDecomposition,
    Verdict,
    adjoint,
    affine_certificate,
    apply,
    build_norm_inflating_ip_preserver,
    canonical_decomposition,
    classify,
    compose,
    diagonal,
    factor_trace_class,
    from_rotation,
    hs_inner,
    identity,
    is_ip_preserving,
    is_unitary,
    operator_norm,
    rank_one,
    symmetric_decomposition,
    trace,
    trace_tail_bound,
    verify_cyclic,
    zero_operator,
)
from .padic import (
    PadicContext,
    PadicNumber,
    find_eta,
    is_prime,
    is_square,
    sqrt,
    square_class,
    square_class_product,
)
from .quadext import ExtensionContext, Magnitude, QuadExtElement
from .states import (
    PadicDistribution,
    Sovm,
    StatisticalOperator,
    ZeroTraceOperator,
    affine_combine,
    is_affine_combination,
    is_convex_combination,
    is_density,
    make_sovm,
    make_statistical,
    make_zero_trace,
    pair,
    product_distribution,
    simple_statistical,
    sovm_from_symmetric_decomposition,
    split_zero_trace,
    validate_distribution,
    zero_trace_perturb,
)

__version__ = "0.1.0"
