"""Vectorized trial kernel used when the compiled extension is absent.

Processes a chunk of Monte Carlo trials at once with array operations.
Every trial occupies one row throughout, so results do not depend on how
the harness slices trials into chunks.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

NAME = "python"


def _principal(ang: np.ndarray) -> np.ndarray:
    ang[ang == -math.pi] = math.pi
    return ang


def trial_error_block(
    noise: np.ndarray,
    v_clean: np.ndarray,
    psi: np.ndarray,
    phi_bar: np.ndarray,
    pinv_omega: np.ndarray,
    subblock_duration: float,
    f_d1: float,
    f_d2: float,
    beta1: complex,
    beta2: complex,
    phi_y: float,
    phi_z: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Squared pipeline errors for a chunk of pre-drawn noise realizations.

    Parameters
    ----------
    noise : numpy.ndarray
        Scaled noise, shape ``(chunk, 2, n_subblocks, n_pilots)``.
    v_clean : numpy.ndarray
        Noiseless LS projections, shape ``(2, 2, n_subblocks)`` indexed by
        training row (direct, cascaded), block, subblock.
    psi, phi_bar, pinv_omega : numpy.ndarray
        Training column, refraction design and the pseudo-inverse of the
        phase coefficient matrix.
    subblock_duration, f_d1, f_d2, beta1, beta2, phi_y, phi_z
        True scenario values the errors are measured against.

    Returns
    -------
    errors : numpy.ndarray
        Shape ``(chunk, 12)``; columns are squared errors for xi1, xi1_nn,
        xi2, xi2_nn, fd1, fd2, beta1, beta1_ideal, beta2, beta2_ideal,
        phi_y, phi_z.
    aborted : numpy.ndarray
        Boolean row mask for trials whose phase ratio was undefined; their
        error rows are zeroed and must be excluded from averages.
    """
    chunk = noise.shape[0]
    n_sub = noise.shape[2]
    n_pil = noise.shape[3]
    m_total = phi_bar.shape[1]
    span = 2.0 * math.pi * n_sub * subblock_duration
    t_grid = subblock_duration * np.arange(n_sub)

    # LS projections: the clean part is shared, only noise varies per trial.
    # Contractions use einsum rather than matmul throughout: BLAS may pick a
    # different blocking per chunk height, and results must not depend on
    # how trials are chunked.
    proj_direct = noise.mean(axis=3)
    proj_cascaded = np.einsum("ckin,n->cki", noise, psi.conj()) / n_pil
    g = v_clean[0][None, :, :] + proj_direct
    h = v_clean[1][None, :, :] + proj_cascaded

    num1 = np.einsum("ci,ci->c", g[:, 0].conj(), g[:, 1])
    den1 = np.einsum("ci,ci->c", g[:, 0].conj(), g[:, 0]).real
    num2 = np.einsum("ci,ci->c", h[:, 0].conj(), h[:, 1])
    den2 = np.einsum("ci,ci->c", h[:, 0].conj(), h[:, 0]).real
    mag1 = np.abs(num1)
    mag2 = np.abs(num2)
    aborted = (mag1 == 0.0) | (den1 == 0.0) | (mag2 == 0.0) | (den2 == 0.0)
    mag1 = np.where(mag1 == 0.0, 1.0, mag1)
    den1 = np.where(den1 == 0.0, 1.0, den1)
    mag2 = np.where(mag2 == 0.0, 1.0, mag2)
    den2 = np.where(den2 == 0.0, 1.0, den2)

    xi1 = num1 / mag1
    xi1_nn = num1 / den1
    xi2 = num2 / mag2
    xi2_nn = num2 / den2
    fd1_hat = _principal(np.angle(num1)) / span
    fd2_hat = _principal(np.angle(num2)) / span

    derot1 = np.exp(-2j * math.pi * np.outer(fd1_hat, t_grid))
    beta1_hat = np.einsum("ci,ci->c", derot1, g[:, 0]) / n_sub
    beta1_ideal = (
        np.einsum("ci,i->c", g[:, 0], np.exp(-2j * math.pi * f_d1 * t_grid)) / n_sub
    )

    derot2 = np.exp(-2j * math.pi * np.outer(fd2_hat, t_grid))
    combined = derot2 * (h[:, 0] + xi2.conj()[:, None] * h[:, 1])
    c_hat = np.einsum("ci,im->cm", combined, phi_bar.conj()) / (2.0 * n_sub)

    xi2_true = cmath.exp(1j * span * f_d2)
    combined_ideal = np.exp(-2j * math.pi * f_d2 * t_grid)[None, :] * (
        h[:, 0] + xi2_true.conjugate() * h[:, 1]
    )
    c_ideal = np.einsum("ci,im->cm", combined_ideal, phi_bar.conj()) / (2.0 * n_sub)

    beta2_mag = np.abs(c_hat).sum(axis=1) / m_total
    z = np.einsum("cm,zm->cz", _principal(np.angle(c_hat)), pinv_omega)
    beta2_hat = beta2_mag * np.exp(1j * z[:, 0])
    beta2_mag_ideal = np.abs(c_ideal).sum(axis=1) / m_total
    z0_ideal = np.einsum("cm,m->c", _principal(np.angle(c_ideal)), pinv_omega[0])
    beta2_ideal = beta2_mag_ideal * np.exp(1j * z0_ideal)

    xi1_true = cmath.exp(1j * span * f_d1)

    errors = np.empty((chunk, 12))
    errors[:, 0] = np.abs(xi1 - xi1_true) ** 2
    errors[:, 1] = np.abs(xi1_nn - xi1_true) ** 2
    errors[:, 2] = np.abs(xi2 - xi2_true) ** 2
    errors[:, 3] = np.abs(xi2_nn - xi2_true) ** 2
    errors[:, 4] = (fd1_hat - f_d1) ** 2
    errors[:, 5] = (fd2_hat - f_d2) ** 2
    errors[:, 6] = np.abs(beta1_hat - beta1) ** 2
    errors[:, 7] = np.abs(beta1_ideal - beta1) ** 2
    errors[:, 8] = np.abs(beta2_hat - beta2) ** 2
    errors[:, 9] = np.abs(beta2_ideal - beta2) ** 2
    errors[:, 10] = (z[:, 1] - phi_y) ** 2
    errors[:, 11] = (z[:, 2] - phi_z) ** 2
    errors[aborted] = 0.0
    return errors, aborted
