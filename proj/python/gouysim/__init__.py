"""Simulator for a Ramsey-interferometric measurement of the matter-wave Gouy phase."""

from ._core import (
    AtomParams,
    CavityLensParams,
    ConfigError,
    ExperimentConfig,
    GaussianBeam,
    GuardError,
    component_overlap,
    design_report,
    focal_distance,
    matter_rayleigh_range,
    min_quality_factor,
    parse_config,
    potential_curvature,
    run_scenario,
)

__all__ = [
    "AtomParams",
    "CavityLensParams",
    "ConfigError",
    "ExperimentConfig",
    "GaussianBeam",
    "GuardError",
    "component_overlap",
    "design_report",
    "focal_distance",
    "matter_rayleigh_range",
    "min_quality_factor",
    "parse_config",
    "potential_curvature",
    "run_scenario",
]
