"""Simulator and estimator library for a surface-assisted two-link downlink.

A moving receiver sees a direct path plus a cascaded path refracted
through a phase-controllable transparent surface, each with its own
Doppler shift and complex gain. This package synthesizes pilot frames of
that channel, runs the serial least-squares recovery pipeline, evaluates
the matching Cramer-Rao bounds, and sweeps Monte Carlo MSE curves against
SNR from the command line or from Python.
"""

from .backend import active_backend, available_backends, select_backend
from .channel import (
    ArrayGeometry,
    ChannelParams,
    direct_channel,
    doppler_from_geometry,
    equivalent_array_response,
    initial_cascaded_channel,
    phase_diffs_from_geometry,
    steering_vector_1d,
)
from .configio import format_config, load_config, parse_config_text
from .crlb import (
    CrlbReport,
    crlb_fd1,
    crlb_fd2,
    crlb_report,
    crlb_xi1,
    crlb_xi2,
    fim_zbar,
)
from .errors import (
    ConfigError,
    CsvFormatError,
    DegenerateInnerProductError,
    DesignError,
    DimensionError,
    GeometryError,
    ItshsrError,
    PhysicsError,
    SingularMatrixError,
)
from .estimators import (
    ChannelEstimates,
    EstimationResult,
    build_omega,
    doppler_from_xi,
    estimate_beta1,
    estimate_beta2_and_z,
    estimate_c,
    estimate_channels,
    estimate_xi_nonnormalized,
    estimate_xi_normalized,
    ls_estimate_subblock,
    principal_angle,
    run_pipeline,
)
from .harness import MseCurve, demo_scenario, emit_csv, read_csv, run_sweep
from .linksim import (
    ReceivedFrame,
    clean_frame,
    draw_noise,
    sigma_from_snr,
    synthesize_frame,
    trial_stream,
)
from .pilots import (
    PilotDesign,
    SystemConfig,
    ValidationReport,
    design_refraction_matrix,
    design_training_matrix,
    dft_refraction_matrix,
    make_pilot_design,
    training_matrix,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "ChannelEstimates",
    "ChannelParams",
    "ConfigError",
    "CrlbReport",
    "CsvFormatError",
    "DegenerateInnerProductError",
    "DesignError",
    "DimensionError",
    "EstimationResult",
    "GeometryError",
    "ItshsrError",
    "MseCurve",
    "PhysicsError",
    "PilotDesign",
    "ReceivedFrame",
    "SingularMatrixError",
    "SystemConfig",
    "ValidationReport",
    "active_backend",
    "available_backends",
    "build_omega",
    "clean_frame",
    "crlb_fd1",
    "crlb_fd2",
    "crlb_report",
    "crlb_xi1",
    "crlb_xi2",
    "demo_scenario",
    "design_refraction_matrix",
    "design_training_matrix",
    "dft_refraction_matrix",
    "direct_channel",
    "doppler_from_geometry",
    "doppler_from_xi",
    "draw_noise",
    "emit_csv",
    "equivalent_array_response",
    "estimate_beta1",
    "estimate_beta2_and_z",
    "estimate_c",
    "estimate_channels",
    "estimate_xi_nonnormalized",
    "estimate_xi_normalized",
    "fim_zbar",
    "format_config",
    "initial_cascaded_channel",
    "load_config",
    "ls_estimate_subblock",
    "make_pilot_design",
    "parse_config_text",
    "phase_diffs_from_geometry",
    "principal_angle",
    "read_csv",
    "run_pipeline",
    "run_sweep",
    "select_backend",
    "sigma_from_snr",
    "steering_vector_1d",
    "synthesize_frame",
    "trial_stream",
    "training_matrix",
    "validate_config",
]
