"""Scattering by a bubble in an elastic medium: modal solvers and diagnostics."""

from ._core import (
    LogComplex,
    ModalSolution2D,
    ModalSolution3D,
    NondimensionalMedium,
    PhysicalMedium,
    check_regime,
    diagnostics,
    localization_ratios,
    localization_ratios_2d,
    make_nondimensional,
    nondimensionalize,
    pdms_medium,
    pdms_rounded_nondimensional,
    property_suites,
    run_cli,
    solve_2d,
    solve_3d,
    stress_lower_bound,
)

__all__ = [
    "LogComplex",
    "ModalSolution2D",
    "ModalSolution3D",
    "NondimensionalMedium",
    "PhysicalMedium",
    "check_regime",
    "diagnostics",
    "localization_ratios",
    "localization_ratios_2d",
    "make_nondimensional",
    "nondimensionalize",
    "pdms_medium",
    "pdms_rounded_nondimensional",
    "property_suites",
    "run_cli",
    "solve_2d",
    "solve_3d",
    "stress_lower_bound",
]
