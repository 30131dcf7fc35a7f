"""Numerical laboratory for evolution families and generator representations:
the kappa-shifted logarithmic representation, the Cole-Hopf transform between
heat and Burgers dynamics, x-direction spectral evolution with fractional
powers via subordination, and emergence-of-nonlinearity identities.
"""

from .errors import (
    BranchCutError,
    CFLError,
    ConfigError,
    ConvergenceError,
    DivisionWindowError,
    DomainError,
    InterpolationError,
    NumericalError,
    PositivityError,
    PreconditionError,
    QuadratureError,
    SemigroupLabError,
    ShapeError,
    SingularError,
    StabilityError,
)
from .evolution import (
    EvolutionFamily,
    GeneratorSpec,
    build_family,
    check_group_axioms,
    coefficient_from_name,
    pre_generator,
)
from .heat_burgers import (
    Grid1D,
    HeatParams,
    burgers_residual,
    cole_hopf_transform,
    gauge_check,
    inverse_cole_hopf,
    solve_burgers_direct,
    solve_heat_dirichlet,
)
from .identities import (
    IdentityResidual,
    SmoothPair,
    Window,
    advection_identity_residual,
    conforming_catalogue,
    factorization_residual,
    gradient_square_identity,
    leibniz_residual,
)
from .logrep import (
    LogRepResult,
    generalized_cole_hopf,
    kappa_admissible,
    log_representation,
    normalized_generator,
)
from .operators import (
    branch_distance,
    mat_exp,
    mat_inv,
    mat_log_principal,
    op_norm,
    operator_from_json,
    operator_to_json,
)
from .report import VerificationReport, inputs_digest
from .spectral import (
    FrequencyGrid,
    forward_transform,
    frequency_grid_for,
    inverse_transform,
    resolvent_apply,
    resolvent_bound_check,
    solve_x_direction,
    subordinated_multiplier_closed_form,
    subordinated_multiplier_quadrature,
    subordinated_semigroup_apply,
    subordination_density,
    subordination_density_check,
)

__version__ = "0.1.0"
