"""Casimir-Lifshitz interaction between chessboard-patterned magneto-dielectric half-spaces.

Second-order perturbation theory in the (resummed) permittivity and
permeability contrasts: every reciprocal-lattice mode of the pattern
contributes a smooth double integral over imaginary frequency, and the
displacement dependence is a pure cosine series over those modes.  The
package computes interaction energies per area, normal pressures with
their mean-mode normalization, and lateral force vector fields, and ships
an independent oracle suite (grid DFT, finite differences, homogeneous
closed forms) plus a sweep CLI.
"""

__version__ = "0.1.0"

from .assembly import (
    ForceResult,
    ModeTable,
    NonConvergenceError,
    SumConvention,
    build_mode_table,
    convention_report,
    energy_per_area,
    force_result,
    homogeneous_closed_form,
    homogeneous_energy_closed_form,
    homogeneous_energy_quadrature,
    homogeneous_pressure_quadrature,
    lateral_force,
    normal_force,
)
from .constants import C_LIGHT, HBAR, PhysicalConstants
from .lattice import (
    ChessboardSpec,
    Displacement,
    ModeAmplitude,
    ModeIndex,
    geometric_coefficient,
    mode_amplitudes,
    profile_value,
)
from .materials import (
    CaseAssignment,
    CaseVariant,
    ConstantMaterial,
    DispersionParams,
    MaterialKind,
    PermeabilityModel,
    PermittivityModel,
    cm_contrast,
    eps_at,
    mu_at,
    patch_contrasts,
)
from .oracle import (
    OracleReport,
    dft_coefficients,
    finite_difference,
    lateral_harmonics,
    run_validation_suite,
    suite_passed,
)
from .spectral_kernel import (
    ModeIntegralResult,
    QuadratureSpec,
    mode_energy_integral,
    mode_force_integral,
    pair_integral,
    transverse_wavenumber,
)

__all__ = [
    "__version__",
    "C_LIGHT",
    "HBAR",
    "PhysicalConstants",
    "CaseAssignment",
    "CaseVariant",
    "ChessboardSpec",
    "ConstantMaterial",
    "Displacement",
    "DispersionParams",
    "ForceResult",
    "MaterialKind",
    "ModeAmplitude",
    "ModeIndex",
    "ModeIntegralResult",
    "ModeTable",
    "NonConvergenceError",
    "OracleReport",
    "PermeabilityModel",
    "PermittivityModel",
    "QuadratureSpec",
    "SumConvention",
    "build_mode_table",
    "cm_contrast",
    "convention_report",
    "dft_coefficients",
    "energy_per_area",
    "eps_at",
    "finite_difference",
    "force_result",
    "geometric_coefficient",
    "homogeneous_closed_form",
    "homogeneous_energy_closed_form",
    "homogeneous_energy_quadrature",
    "homogeneous_pressure_quadrature",
    "lateral_force",
    "lateral_harmonics",
    "mode_amplitudes",
    "mode_energy_integral",
    "mode_force_integral",
    "mu_at",
    "normal_force",
    "pair_integral",
    "patch_contrasts",
    "profile_value",
    "run_validation_suite",
    "suite_passed",
    "transverse_wavenumber",
]
