"""Decoherence of hydrogenic s-states from sudden nuclear displacement."""

from ._scatdeco import (
    AtomSpec,
    DimensionError,
    Displacement,
    DomainError,
    InputError,
    NumericalError,
    closed_form_cn0,
    closed_form_cn1,
    coefficients,
    coefficients_after,
    constant_set_version,
    constants,
    convert,
    delta_l_transition_probability,
    displacement_radius,
    hydrogenic_radial,
    interaction_time,
    laguerre,
    preset_config,
    preset_names,
    run_cli,
    scenario_rates,
    scenario_survival,
    survival_sweep,
    to_si,
    verify,
)

__version__ = "0.1.0"
