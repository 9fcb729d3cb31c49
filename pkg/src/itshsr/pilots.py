"""DFT-based pilot and refraction schedules, plus configuration validation."""

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ArrayGeometry, ChannelParams
from .errors import DesignError

__all__ = [
    "SystemConfig",
    "PilotDesign",
    "ValidationReport",
    "design_training_matrix",
    "training_matrix",
    "dft_refraction_matrix",
    "design_refraction_matrix",
    "make_pilot_design",
    "validate_config",
]

_GRAM_TOL = 1e-9


@dataclass(frozen=True)
class SystemConfig:
    """Frame dimensions, surface geometry, and sweep controls.

    Only basic well-formedness is enforced here; estimation feasibility
    (pilot minimum, subblock rank, aliasing) is reported by validate_config
    so that infeasible configurations can still be loaded and diagnosed.
    """

    n_pilots: int  # pilot symbols per subblock (N)
    n_subblocks: int  # subblocks per pilot block (I)
    geom: ArrayGeometry
    subblock_duration: float  # seconds per subblock (T)
    snr_grid: tuple  # SNR points in dB
    trials: int  # Monte Carlo trials per SNR point
    seed: int  # master RNG seed, u64

    def __post_init__(self):
        object.__setattr__(self, "snr_grid", tuple(float(s) for s in self.snr_grid))
        if self.n_pilots < 1:
            raise DesignError(f"n_pilots must be >= 1, got {self.n_pilots}")
        if self.n_subblocks < 1:
            raise DesignError(f"n_subblocks must be >= 1, got {self.n_subblocks}")
        if not self.subblock_duration > 0.0:
            raise DesignError(
                f"subblock_duration must be positive, got {self.subblock_duration}"
            )
        if len(self.snr_grid) == 0:
            raise DesignError("snr_grid must contain at least one point")
        if self.trials < 1:
            raise DesignError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise DesignError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class PilotDesign:
    """Training vector and refraction schedule shared by both pilot blocks."""

    psi: np.ndarray  # second training column, length N
    phi_bar: np.ndarray  # refraction schedule, I x M

    def __post_init__(self):
        psi = np.ascontiguousarray(self.psi, dtype=complex)
        phi_bar = np.ascontiguousarray(self.phi_bar, dtype=complex)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "phi_bar", phi_bar)
        if psi.ndim != 1 or phi_bar.ndim != 2:
            raise DesignError("psi must be a vector and phi_bar a matrix")
        if np.max(np.abs(np.abs(psi) - 1.0)) > _GRAM_TOL:
            raise DesignError("training entries must have unit modulus")
        if np.max(np.abs(np.abs(phi_bar) - 1.0)) > _GRAM_TOL:
            raise DesignError("refraction entries must have unit modulus")
        n = psi.shape[0]
        # orthogonality of [1, psi]: the single off-diagonal Gram entry is sum(psi)
        if abs(np.sum(psi)) > n * _GRAM_TOL:
            raise DesignError("training columns must be orthogonal")
        n_sub, m = phi_bar.shape
        gram = phi_bar.conj().T @ phi_bar
        if np.max(np.abs(gram - n_sub * np.eye(m))) > n_sub * _GRAM_TOL:
            raise DesignError("refraction columns must be orthogonal with norm I")


def design_training_matrix(n_pilots: int) -> np.ndarray:
    """Second column of the N-point DFT matrix; the first column is all-ones."""
    if n_pilots < 2:
        raise DesignError(
            f"n_pilots = {n_pilots}: at least two pilots per subblock are "
            "required to separate the two links"
        )
    return np.exp(-2j * math.pi * np.arange(n_pilots) / n_pilots)


def training_matrix(psi: np.ndarray) -> np.ndarray:
    """Full N x 2 training matrix [1, psi]."""
    psi = np.asarray(psi, dtype=complex)
    return np.column_stack([np.ones(psi.shape[0], dtype=complex), psi])


def dft_refraction_matrix(n_subblocks: int, m_columns: int) -> np.ndarray:
    """First m_columns columns of the n_subblocks-point DFT matrix."""
    if n_subblocks < m_columns:
        raise DesignError(
            f"n_subblocks = {n_subblocks} < {m_columns} columns: the schedule "
            "cannot reach full column rank"
        )
    i = np.arange(n_subblocks)[:, None]
    m = np.arange(m_columns)[None, :]
    return np.exp(-2j * math.pi * i * m / n_subblocks)


def design_refraction_matrix(config: SystemConfig) -> np.ndarray:
    """Refraction schedule for the configured surface: I x M DFT columns."""
    return dft_refraction_matrix(config.n_subblocks, config.geom.m_total)


def make_pilot_design(config: SystemConfig) -> PilotDesign:
    return PilotDesign(
        psi=design_training_matrix(config.n_pilots),
        phi_bar=design_refraction_matrix(config),
    )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of feasibility checks; empty violations means pass."""

    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "all constraints satisfied"
        return "\n".join(self.violations)


def validate_config(config: SystemConfig, params: ChannelParams) -> ValidationReport:
    """Check estimability of the scenario; returns a report, never raises.

    Four constraints are verified: both block-gap phases must stay in the
    principal range (no Doppler aliasing across a block), at least two pilots
    per subblock, at least as many subblocks as surface elements, and every
    cascaded gain-vector argument inside (-pi, pi].
    """
    violations = []
    block_span = config.n_subblocks * config.subblock_duration
    limit_hz = 1.0 / (2.0 * block_span)
    for name, doppler in (("f_d1", params.f_d1), ("f_d2", params.f_d2)):
        alpha = 2.0 * math.pi * doppler * block_span
        if not (-math.pi < alpha <= math.pi):
            violations.append(
                f"doppler-aliasing: 2*pi*{name}*I*T = {alpha:.6f} rad is outside "
                f"(-pi, pi]; |{name}| must stay below {limit_hz:.6g} Hz"
            )
    if config.n_pilots < 2:
        violations.append(
            f"pilot-minimum: n_pilots = {config.n_pilots}, but at least two "
            "pilots per subblock are required to separate the two links"
        )
    m_total = config.geom.m_total
    if config.n_subblocks < m_total:
        violations.append(
            f"subblock-rank: n_subblocks = {config.n_subblocks} is smaller than "
            f"the {m_total}-element surface; the refraction schedule loses rank"
        )
    gain_phase = math.atan2(params.beta2.imag, params.beta2.real)
    m_z = config.geom.m_z
    for m in range(m_total):
        arg = gain_phase + (m // m_z) * params.phi_y + (m % m_z) * params.phi_z
        if not (-math.pi < arg <= math.pi):
            violations.append(
                f"argument-range: entry {m} of the cascaded gain vector has "
                f"argument {arg:.6f} rad outside (-pi, pi]"
            )
            break
    return ValidationReport(violations=tuple(violations))
