"""Ground-truth channel construction for the surface-aided rail downlink.

Two links are modeled over a frame of two pilot blocks: a direct base-station
to receiver path with Doppler shift ``f_d1`` and complex gain ``beta1``, and a
cascaded path refracted through a planar surface with Doppler shift ``f_d2``,
gain ``beta2``, and per-element phase progression (``phi_y``, ``phi_z``).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DesignError, DimensionError, GeometryError, PhysicsError

__all__ = [
    "ArrayGeometry",
    "ChannelParams",
    "steering_vector_1d",
    "equivalent_array_response",
    "direct_channel",
    "initial_cascaded_channel",
    "doppler_from_geometry",
    "phase_diffs_from_geometry",
]


@dataclass(frozen=True)
class ArrayGeometry:
    """Element layout of the planar refracting surface."""

    m_y: int  # elements along the horizontal axis
    m_z: int  # elements along the vertical axis

    def __post_init__(self):
        if self.m_y < 2 or self.m_z < 2:
            raise GeometryError(
                f"surface must have at least 2 elements per axis, "
                f"got {self.m_y}x{self.m_z}"
            )

    @property
    def m_total(self) -> int:
        return self.m_y * self.m_z


@dataclass(frozen=True)
class ChannelParams:
    """The six ground-truth unknowns recovered by the estimation pipeline."""

    f_d1: float  # direct-link Doppler shift, Hz
    f_d2: float  # cascaded-link Doppler shift, Hz
    beta1: complex  # direct-link path gain
    beta2: complex  # cascaded-link path gain
    phi_y: float  # horizontal inter-element phase difference, rad
    phi_z: float  # vertical inter-element phase difference, rad

    def __post_init__(self):
        for name in ("f_d1", "f_d2"):
            if not math.isfinite(getattr(self, name)):
                raise PhysicsError(f"{name} must be finite")
        for name in ("beta1", "beta2"):
            if not _complex_finite(getattr(self, name)):
                raise PhysicsError(f"{name} must be finite")
        for name in ("phi_y", "phi_z"):
            value = getattr(self, name)
            if not (-math.pi < value <= math.pi):
                raise PhysicsError(
                    f"{name} = {value!r} rad is outside the principal range (-pi, pi]"
                )


def _complex_finite(z: complex) -> bool:
    z = complex(z)
    return math.isfinite(z.real) and math.isfinite(z.imag)


def steering_vector_1d(phase_diff: float, length: int) -> np.ndarray:
    """Unit-modulus progression exp(j*m*phase_diff) for m = 0..length-1."""
    if length < 1:
        raise DimensionError(f"steering vector length must be >= 1, got {length}")
    return np.exp(1j * phase_diff * np.arange(length))


def equivalent_array_response(params: ChannelParams, geom: ArrayGeometry) -> np.ndarray:
    """Combined response of the surface, Kronecker-ordered y-axis over z-axis.

    Entry m equals exp(j*(floor(m/m_z)*phi_y + (m mod m_z)*phi_z)); every
    entry has unit modulus.
    """
    return np.kron(
        steering_vector_1d(params.phi_y, geom.m_y),
        steering_vector_1d(params.phi_z, geom.m_z),
    )


def _check_block_indices(k: int, i: int, n_subblocks: int) -> None:
    if k not in (0, 1):
        raise DimensionError(f"pilot block index must be 0 or 1, got {k}")
    if not 0 <= i < n_subblocks:
        raise DimensionError(
            f"subblock index {i} outside valid range [0, {n_subblocks})"
        )


def direct_channel(params: ChannelParams, k: int, i: int, config) -> complex:
    """Direct-link gain at subblock i of pilot block k."""
    _check_block_indices(k, i, config.n_subblocks)
    phase = (
        2.0
        * math.pi
        * params.f_d1
        * (k * config.n_subblocks + i)
        * config.subblock_duration
    )
    return complex(params.beta1) * _unit_phasor(phase)


def initial_cascaded_channel(
    params: ChannelParams,
    geom: ArrayGeometry,
    phi_bar_i: np.ndarray,
    k: int,
    i: int,
    config,
) -> complex:
    """Cascaded-link gain under the refraction row applied at subblock i.

    The surface element amplitudes must all be unity; only phases are
    controllable. Raises DesignError otherwise.
    """
    _check_block_indices(k, i, config.n_subblocks)
    phi_row = np.asarray(phi_bar_i, dtype=complex)
    if phi_row.shape != (geom.m_total,):
        raise DimensionError(
            f"refraction row has shape {phi_row.shape}, expected ({geom.m_total},)"
        )
    if np.max(np.abs(np.abs(phi_row) - 1.0)) > 1e-9:
        raise DesignError("refraction coefficients must have unit modulus")
    phase = (
        2.0
        * math.pi
        * params.f_d2
        * (k * config.n_subblocks + i)
        * config.subblock_duration
    )
    response = equivalent_array_response(params, geom)
    return complex(params.beta2) * _unit_phasor(phase) * complex(response @ phi_row)


def _unit_phasor(phase: float) -> complex:
    return complex(math.cos(phase), math.sin(phase))


def doppler_from_geometry(
    speed: float, wavelength: float, azimuth: float, elevation: float
) -> float:
    """Doppler shift (v/lambda)*sin(azimuth)*sin(elevation) in Hz.

    Parameters
    ----------
    speed : float
        Relative speed along the track, m/s.
    wavelength : float
        Carrier wavelength, m; must be positive.
    azimuth, elevation : float
        Arrival angles at the receiver, rad.
    """
    if wavelength <= 0.0:
        raise PhysicsError(f"wavelength must be positive, got {wavelength}")
    return speed / wavelength * math.sin(azimuth) * math.sin(elevation)


def phase_diffs_from_geometry(
    wavelength: float,
    spacing: float | None,
    azimuth: float,
    elevation: float,
) -> tuple[float, float]:
    """Per-axis inter-element phase differences of a planar array.

    Parameters
    ----------
    wavelength : float
        Carrier wavelength, m; must be positive.
    spacing : float or None
        Inter-element spacing, m; ``None`` selects half-wavelength spacing.
    azimuth, elevation : float
        Incidence angles at the surface, rad.

    Returns
    -------
    (float, float)
        Horizontal and vertical phase differences in radians:
        (2*pi/lambda)*d*sin(azimuth)*sin(elevation) and
        (2*pi/lambda)*d*cos(elevation).
    """
    if wavelength <= 0.0:
        raise PhysicsError(f"wavelength must be positive, got {wavelength}")
    if spacing is None:
        spacing = wavelength / 2.0
    if spacing <= 0.0:
        raise PhysicsError(f"element spacing must be positive, got {spacing}")
    scale = 2.0 * math.pi / wavelength * spacing
    return (
        scale * math.sin(azimuth) * math.sin(elevation),
        scale * math.cos(elevation),
    )
