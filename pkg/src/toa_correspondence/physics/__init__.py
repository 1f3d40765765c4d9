"""Physics engines: potentials, local series, time kernels, transforms and numeric oracles."""

from toa_correspondence.physics.kernel import (
    TimeKernel,
    check_boundary,
    delta_table,
    kernel_from_qq,
    kernel_to_qq,
    pde_residual,
    solve_time_kernel,
)
from toa_correspondence.physics.local_toa import (
    LocalToaResult,
    closed_form_coefficient,
    local_toa_series,
)
from toa_correspondence.physics.numeric import (
    NumericConfig,
    PhasePoint,
    closed_form_global,
    global_toa_quadrature,
)
from toa_correspondence.physics.potential import PolynomialPotential, parse_potential
from toa_correspondence.physics.transforms import (
    ComparisonReport,
    SystemClass,
    t_hbar_transform,
    verify_correspondence,
    weyl_kernel,
)

__all__ = [
    "ComparisonReport",
    "LocalToaResult",
    "NumericConfig",
    "PhasePoint",
    "PolynomialPotential",
    "SystemClass",
    "TimeKernel",
    "check_boundary",
    "closed_form_coefficient",
    "closed_form_global",
    "delta_table",
    "global_toa_quadrature",
    "kernel_from_qq",
    "kernel_to_qq",
    "local_toa_series",
    "parse_potential",
    "pde_residual",
    "solve_time_kernel",
    "t_hbar_transform",
    "verify_correspondence",
    "weyl_kernel",
]
