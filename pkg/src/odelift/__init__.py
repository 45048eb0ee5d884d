"""Exact engine for ODEs of polynomial-linear transforms of hypergeometric
solutions, Heun reduction, and X1-Jacobi construction."""

from .errors import MathError
from .exceptional import X1Construction, X1JacobiSpec, build_x1, x1_operator, x1_to_heun
from .heun import (
    ConfluentOrDegenerate,
    HeunParameters,
    NotHeunReducible,
    SingularPoint,
    UnresolvedFactor,
    classify_singularities,
    heun_operator,
    heun_reduce,
)
from .hypergeom import (
    ClassicalFamily,
    FitError,
    ForbiddenParameter,
    Hermite,
    HypergeomEq,
    InvalidEquation,
    InvalidFamily,
    Jacobi,
    Laguerre,
    equation_of,
    fit_hypergeom_equation,
    jacobi_series_gh,
    pochhammer,
    polynomial_solution,
)
from .polynomial import (
    AllZeroOperator,
    DivisionByZeroPoly,
    InconsistentFactorization,
    PartialFractionTerm,
    Poly,
    Rational,
    RepeatedRootBeyondSupport,
    format_poly,
    gcd_and_normalize,
    parse_poly,
    parse_rational,
    partial_fractions,
    poly_gcd,
    rational_roots,
)
from .transform import (
    BarCoefficients,
    ClosedFormAgreement,
    DegenerateTransform,
    LinearTransform,
    OdeOperator2,
    SingularSubstitution,
    affine_substitute,
    apply_operator,
    closed_form_basic,
    closed_form_check,
    closed_form_const,
    compute_bars,
    equation_operator,
    expand_determinant,
    expand_determinant_hat,
    expanded_double_bars,
)

__all__ = [name for name in dir() if not name.startswith("_")]
