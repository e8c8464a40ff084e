"""Positive radial solutions of the autonomous Kirchhoff equation

    -(a + b‖∇u‖²) Δu + λu = |u|^{p-2} u   in R^N,

built as dilations of the local ground state, with the manifold algebra and
numerical checks that go with them.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .ground_state import (
    FunctionalTriple,
    GroundStateSpec,
    IdentityResiduals,
    RadialProfile,
    compute_functionals,
    local_identity_report,
    rescale_profile,
    shot_outcome,
    solve_base_profile,
    solve_profile,
)
from .io import read_profile, write_profile
from .scaling import (
    AmplitudeForm,
    ExistenceReport,
    GammaRoots,
    KirchhoffSolution,
    Regime,
    SolutionSet,
    amplitude_form,
    build_solutions,
    classify_existence,
    critical_b,
    h_gamma,
    solve_gamma,
)
from .sweep import b_grid, sweep_table
from .variational import (
    B_of_u,
    Classification,
    F_ab,
    FiberingReport,
    KirchhoffParams,
    amplitude_critical_points,
    classify_nehari,
    classify_pohozaev,
    dilation_critical_points,
    energy_E,
    energy_I,
    fibering_F,
    fibering_G,
    manifold_energy,
    nehari_residual,
    optimal_dilation,
    pohozaev_psi,
    rayleigh_quotient,
)
from .verification import (
    IdentityReport,
    SobolevConstant,
    derivative_check,
    identity_suite,
    monotonicity_check,
    ode_residual,
    pohozaev_bounds,
    root_count_oracle,
    sobolev_constant,
)
