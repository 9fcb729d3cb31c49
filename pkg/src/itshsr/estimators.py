"""Serial least-squares recovery of the link parameters.

The receiver works through one frame in stages: per-subblock LS projection
onto the training design, phase-ratio Doppler recovery for both links,
direct-path gain averaging, de-rotated projection onto the refraction
design, and finally a linear phase fit across the surface elements.
Every stage consumes only the outputs of the previous one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .channel import ArrayGeometry
from .errors import (
    DegenerateInnerProductError,
    DesignError,
    DimensionError,
)
from .linksim import ReceivedFrame
from .pilots import PilotDesign, SystemConfig, training_matrix

__all__ = [
    "ChannelEstimates",
    "EstimationResult",
    "build_omega",
    "doppler_from_xi",
    "estimate_beta1",
    "estimate_beta2_and_z",
    "estimate_c",
    "estimate_channels",
    "estimate_xi_nonnormalized",
    "estimate_xi_normalized",
    "ls_estimate_subblock",
    "principal_angle",
    "run_pipeline",
]


@dataclass(frozen=True, eq=False)
class ChannelEstimates:
    """Per-subblock LS channel estimates, one row per block.

    Attributes
    ----------
    g_hat : numpy.ndarray
        Direct-link estimates, shape ``(2, n_subblocks)``.
    h_hat : numpy.ndarray
        Cascaded-link estimates, same shape.
    """

    g_hat: np.ndarray
    h_hat: np.ndarray

    def __post_init__(self) -> None:
        g = np.ascontiguousarray(self.g_hat, dtype=np.complex128)
        h = np.ascontiguousarray(self.h_hat, dtype=np.complex128)
        if g.ndim != 2 or g.shape[0] != 2 or g.shape != h.shape:
            raise DimensionError(
                "channel estimates must be a pair of (2, n_subblocks) arrays, "
                f"got {g.shape} and {h.shape}"
            )
        object.__setattr__(self, "g_hat", g)
        object.__setattr__(self, "h_hat", h)


@dataclass(frozen=True, eq=False)
class EstimationResult:
    """Everything the serial pipeline recovers from one frame."""

    xi1_hat: complex
    xi2_hat: complex
    f_d1_hat: float
    f_d2_hat: float
    beta1_hat: complex
    c_hat: np.ndarray
    beta2_mag_hat: float
    z_hat: np.ndarray


def principal_angle(x):
    """Argument of ``x`` folded into (-pi, pi], elementwise for arrays."""
    ang = np.angle(x)
    if np.ndim(ang) == 0:
        return math.pi if ang == -math.pi else float(ang)
    ang = np.asarray(ang)
    ang[ang == -math.pi] = math.pi
    return ang


def ls_estimate_subblock(y_i: np.ndarray, design: PilotDesign) -> np.ndarray:
    """LS-project one subblock onto the training design.

    Parameters
    ----------
    y_i : numpy.ndarray
        Received samples of one subblock, shape ``(n_pilots, 2)`` with the
        two transmission blocks as columns.
    design : PilotDesign

    Returns
    -------
    numpy.ndarray
        The ``(2, 2)`` estimate with the direct path in row 0 and the
        cascaded path in row 1, blocks as columns.
    """
    y_i = np.asarray(y_i, dtype=np.complex128)
    n = design.psi.shape[0]
    if y_i.shape != (n, 2):
        raise DimensionError(
            f"subblock must have shape ({n}, 2), got {y_i.shape}"
        )
    full = training_matrix(design.psi)
    return full.conj().T @ y_i / n


def estimate_channels(frame: ReceivedFrame, design: PilotDesign) -> ChannelEstimates:
    """Run the per-subblock LS projection over a whole frame."""
    n = design.psi.shape[0]
    if frame.y.shape[2] != n:
        raise DimensionError(
            f"frame carries {frame.y.shape[2]} pilots per subblock, "
            f"design expects {n}"
        )
    full = training_matrix(design.psi)
    proj = np.einsum("np,kin->pki", full.conj(), frame.y) / n
    return ChannelEstimates(g_hat=proj[0], h_hat=proj[1])


def _inner(v0: np.ndarray, v1: np.ndarray) -> complex:
    v0 = np.asarray(v0, dtype=np.complex128)
    v1 = np.asarray(v1, dtype=np.complex128)
    if v0.shape != v1.shape or v0.ndim != 1:
        raise DimensionError(
            f"block estimates must be equal-length vectors, got "
            f"{v0.shape} and {v1.shape}"
        )
    return complex(np.vdot(v0, v1))


def estimate_xi_normalized(v0: np.ndarray, v1: np.ndarray) -> complex:
    """Unit-modulus inter-block phase ratio ``<v0, v1> / |<v0, v1>|``.

    Raises
    ------
    DegenerateInnerProductError
        If the blocks are orthogonal, which leaves the phase undefined.
    """
    num = _inner(v0, v1)
    mag = abs(num)
    if mag == 0.0:
        raise DegenerateInnerProductError(
            "inter-block inner product vanished; phase ratio is undefined"
        )
    return num / mag


def estimate_xi_nonnormalized(v0: np.ndarray, v1: np.ndarray) -> complex:
    """Raw LS ratio ``<v0, v1> / ||v0||^2``, kept as a baseline.

    Unlike :func:`estimate_xi_normalized` the result is not constrained to
    the unit circle, so noise in the reference block leaks into the modulus.
    """
    num = _inner(v0, v1)
    denom = float(np.vdot(v0, v0).real)
    if denom == 0.0:
        raise DegenerateInnerProductError(
            "reference block has zero energy; LS ratio is undefined"
        )
    return num / denom


def doppler_from_xi(xi_hat: complex, config: SystemConfig) -> float:
    """Map a unit phase ratio back to a Doppler shift in Hz."""
    span = 2.0 * math.pi * config.n_subblocks * config.subblock_duration
    return principal_angle(complex(xi_hat)) / span


def estimate_beta1(
    g0_hat: np.ndarray, f_d1_hat: float, config: SystemConfig
) -> complex:
    """De-rotate the first-block direct estimates and average them."""
    g0_hat = np.asarray(g0_hat, dtype=np.complex128)
    if g0_hat.shape != (config.n_subblocks,):
        raise DimensionError(
            f"expected {config.n_subblocks} subblock estimates, "
            f"got shape {g0_hat.shape}"
        )
    grid = config.subblock_duration * np.arange(config.n_subblocks)
    d1 = np.exp(1j * 2.0 * math.pi * f_d1_hat * grid)
    return complex(np.vdot(d1, g0_hat) / config.n_subblocks)


def build_omega(geom: ArrayGeometry) -> np.ndarray:
    """Linear map from ``(gain phase, phi_y, phi_z)`` to element phases.

    Row ``m`` is ``[1, m // m_z, m % m_z]``; the integer pair indexes the
    element position along the two surface axes.
    """
    m = np.arange(geom.m_total)
    return np.column_stack(
        [np.ones(geom.m_total), m // geom.m_z, m % geom.m_z]
    ).astype(float)


def estimate_c(
    h_stacked: np.ndarray,
    f_d2_hat: float,
    design: PilotDesign,
    config: SystemConfig,
) -> np.ndarray:
    """Recover the per-element cascaded gains from both blocks.

    The two blocks of cascaded estimates are de-rotated by the recovered
    Doppler, the second additionally by the inter-block ratio, and the sum
    is projected onto the refraction design.
    """
    h_stacked = np.asarray(h_stacked, dtype=np.complex128)
    n_sub = design.phi_bar.shape[0]
    if n_sub != config.n_subblocks:
        raise DesignError(
            f"refraction design covers {n_sub} subblocks, "
            f"config declares {config.n_subblocks}"
        )
    if h_stacked.shape != (2 * n_sub,):
        raise DimensionError(
            f"expected {2 * n_sub} stacked cascaded estimates, "
            f"got shape {h_stacked.shape}"
        )
    grid = config.subblock_duration * np.arange(n_sub)
    d2_conj = np.exp(-1j * 2.0 * math.pi * f_d2_hat * grid)
    xi2_conj = cmath.exp(
        -1j * 2.0 * math.pi * f_d2_hat * n_sub * config.subblock_duration
    )
    combined = d2_conj * (h_stacked[:n_sub] + xi2_conj * h_stacked[n_sub:])
    return design.phi_bar.conj().T @ combined / (2.0 * n_sub)


def estimate_beta2_and_z(
    c_hat: np.ndarray, omega: np.ndarray
) -> tuple[float, np.ndarray]:
    """Split the gain vector into a magnitude and a linear phase profile.

    Returns the mean absolute gain and the LS fit of the element phases
    against ``omega``, i.e. ``(|beta2|, [gain phase, phi_y, phi_z])``.
    """
    c_hat = np.asarray(c_hat, dtype=np.complex128)
    if c_hat.ndim != 1 or c_hat.shape[0] != omega.shape[0]:
        raise DimensionError(
            f"gain vector of length {c_hat.shape} does not match "
            f"{omega.shape[0]} design rows"
        )
    mag = float(np.abs(c_hat).sum() / omega.shape[0])
    z_hat, *_ = np.linalg.lstsq(omega, principal_angle(c_hat), rcond=None)
    return mag, z_hat


def run_pipeline(
    frame: ReceivedFrame, design: PilotDesign, config: SystemConfig
) -> EstimationResult:
    """Run every recovery stage on one frame and collect the estimates."""
    est = estimate_channels(frame, design)

    xi1_hat = estimate_xi_normalized(est.g_hat[0], est.g_hat[1])
    f_d1_hat = doppler_from_xi(xi1_hat, config)
    beta1_hat = estimate_beta1(est.g_hat[0], f_d1_hat, config)

    xi2_hat = estimate_xi_normalized(est.h_hat[0], est.h_hat[1])
    f_d2_hat = doppler_from_xi(xi2_hat, config)
    h_stacked = np.concatenate([est.h_hat[0], est.h_hat[1]])
    c_hat = estimate_c(h_stacked, f_d2_hat, design, config)
    beta2_mag_hat, z_hat = estimate_beta2_and_z(c_hat, build_omega(config.geom))

    return EstimationResult(
        xi1_hat=xi1_hat,
        xi2_hat=xi2_hat,
        f_d1_hat=f_d1_hat,
        f_d2_hat=f_d2_hat,
        beta1_hat=beta1_hat,
        c_hat=c_hat,
        beta2_mag_hat=beta2_mag_hat,
        z_hat=z_hat,
    )
