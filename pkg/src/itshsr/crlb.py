"""Closed-form estimation error bounds for every pipeline output.

The two Doppler links admit scalar bounds; the surface gain magnitude and
the two phase differences are coupled, so their bounds come from inverting
a 4x4 information matrix over the parameters
``(Re beta2, Im beta2, phi_y, phi_z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ArrayGeometry, ChannelParams
from .errors import PhysicsError, SingularMatrixError
from .estimators import build_omega
from .pilots import SystemConfig

__all__ = [
    "CrlbReport",
    "crlb_fd1",
    "crlb_fd2",
    "crlb_report",
    "crlb_xi1",
    "crlb_xi2",
    "fim_zbar",
]


@dataclass(frozen=True, eq=False)
class CrlbReport:
    """All bounds evaluated at one noise level.

    Doppler bounds are in Hz^2, phase bounds in rad^2, the rest are
    dimensionless variances.
    """

    crlb_xi1: float
    crlb_xi2: float
    crlb_fd1: float
    crlb_fd2: float
    crlb_beta1: float
    fim_zbar: np.ndarray
    crlb_zbar: np.ndarray
    crlb_beta2: float
    crlb_phi_y: float
    crlb_phi_z: float


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise PhysicsError(f"{name} must be positive, got {value!r}")


def crlb_xi1(sigma2: float, n_pilots: int, n_subblocks: int) -> float:
    """Bound on the direct-link phase ratio; also bounds the direct gain."""
    _require_positive(sigma2=sigma2, n_pilots=n_pilots, n_subblocks=n_subblocks)
    return sigma2 / (n_pilots * n_subblocks)


def crlb_fd1(sigma2: float, n_pilots: int, n_subblocks: int, t: float) -> float:
    """Bound on the direct-link Doppler shift in Hz^2."""
    _require_positive(
        sigma2=sigma2, n_pilots=n_pilots, n_subblocks=n_subblocks, t=t
    )
    return sigma2 / (8.0 * math.pi**2 * n_pilots * n_subblocks**3 * t**2)


def crlb_xi2(sigma2: float, n_pilots: int, n_subblocks: int, m_total: int) -> float:
    """Bound on the cascaded-link phase ratio; the surface gain divides it."""
    _require_positive(m_total=m_total)
    return crlb_xi1(sigma2, n_pilots, n_subblocks) / m_total


def crlb_fd2(
    sigma2: float, n_pilots: int, n_subblocks: int, m_total: int, t: float
) -> float:
    """Bound on the cascaded-link Doppler shift in Hz^2."""
    _require_positive(m_total=m_total)
    return crlb_fd1(sigma2, n_pilots, n_subblocks, t) / m_total


def fim_zbar(
    sigma2: float,
    n_pilots: int,
    n_subblocks: int,
    geom: ArrayGeometry,
    beta2: complex,
) -> np.ndarray:
    """Fisher information for ``(Re beta2, Im beta2, phi_y, phi_z)``.

    The couplings are driven by the first moments of the element index
    columns, the phase curvatures by their second moments.
    """
    _require_positive(sigma2=sigma2, n_pilots=n_pilots, n_subblocks=n_subblocks)
    omega = build_omega(geom)
    wy, wz = omega[:, 1], omega[:, 2]
    sy, sz = wy.sum(), wz.sum()
    br, bi = beta2.real, beta2.imag
    mat = np.array(
        [
            [geom.m_total, 0.0, -bi * sy, -bi * sz],
            [0.0, geom.m_total, br * sy, br * sz],
            [-bi * sy, br * sy, wy @ wy, wy @ wz],
            [-bi * sz, br * sz, wy @ wz, wz @ wz],
        ]
    )
    return 4.0 * n_pilots * n_subblocks / sigma2 * mat


def _spd_inverse(mat: np.ndarray) -> np.ndarray:
    """Invert a symmetric positive-definite matrix via its Cholesky factor."""
    try:
        lower = np.linalg.cholesky(mat)
        lower_inv = np.linalg.inv(lower)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(
            "information matrix is not positive definite"
        ) from exc
    return lower_inv.T @ lower_inv


def crlb_report(
    sigma2: float, config: SystemConfig, params: ChannelParams
) -> CrlbReport:
    """Evaluate every bound for one configuration and noise level."""
    n, i = config.n_pilots, config.n_subblocks
    m = config.geom.m_total
    xi1 = crlb_xi1(sigma2, n, i)
    fd1 = crlb_fd1(sigma2, n, i, config.subblock_duration)
    fim = fim_zbar(sigma2, n, i, config.geom, params.beta2)
    zbar = _spd_inverse(fim)
    return CrlbReport(
        crlb_xi1=xi1,
        crlb_xi2=xi1 / m,
        crlb_fd1=fd1,
        crlb_fd2=fd1 / m,
        crlb_beta1=xi1,
        fim_zbar=fim,
        crlb_zbar=zbar,
        crlb_beta2=zbar[0, 0] + zbar[1, 1],
        crlb_phi_y=zbar[2, 2],
        crlb_phi_z=zbar[3, 3],
    )
