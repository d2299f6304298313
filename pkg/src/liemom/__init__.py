"""Momentum gradient descent on Lie groups via retraction maps.

Classical-momentum (heavy-ball) and accelerated (Nesterov-type) descent on
SO(3) and on translation groups, driven by a reconstruction equation that
turns algebra increments into group transitions.  Ships closed-form SO(3)
kernels for three retractions (matrix exponential, Cayley transform,
inverse skew projection), benchmark objectives, Hamilton-Pontryagin
variational integrators for cross-validation, and a benchmark CLI.
"""

from .errors import ConvergenceError, DomainError, SingularityError
from .groups import LieGroupOps, SO3Group, TranslationGroup, so3_group, translation_group
from .objectives import (
    Objective,
    frobenius_objective,
    quadratic_objective,
    restricted_rosenbrock_objective,
    retracted_rosenbrock_objective,
    rosenbrock_nd,
    rosenbrock_nd_grad,
    rosenbrock_objective,
)
from .optimizer import (
    MethodKind,
    Strategy,
    Trajectory,
    del_residuals,
    run_gd,
    run_momentum,
    run_momentum_doubled,
    strategy_from_lagrangian,
)
from .pontryagin import (
    PontryaginState,
    QuadraticLagrangian,
    backward_step_reverse,
    coadjoint_invariant_check,
    forward_step,
    free_lagrangian,
    integrate_forward,
)
from .reconstruction import (
    ExplicitSo3Solver,
    FixedPointSolver,
    solve_cay,
    solve_exp,
    solve_fixed_point,
    solve_skw,
)
from .retractions import (
    CAY,
    EXP,
    SKW,
    Retraction,
    TrivializationSide,
    adjoint_tangent_identity_check,
    cay,
    cay_inv,
    dcay,
    dcay_inv,
    dexp,
    dlog,
    dskew,
    dskew_exact,
    dunskew,
    dunskew_exact,
    exp_so3,
    log_so3,
    unskew,
)
from .so3 import (
    adjoint_apply,
    adjoint_transpose_apply,
    check_rotation,
    frobenius_inner,
    hat,
    is_rotation,
    orthonormalize,
    random_rotation,
    skew_part,
    vee,
)

__version__ = "0.1.0"
