"""Noisy received-frame synthesis with reproducible per-trial noise streams."""

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, direct_channel, initial_cascaded_channel
from .errors import DesignError, DimensionError, PhysicsError
from .pilots import PilotDesign, SystemConfig

__all__ = [
    "ReceivedFrame",
    "sigma_from_snr",
    "trial_stream",
    "draw_noise",
    "clean_frame",
    "synthesize_frame",
]


@dataclass(frozen=True, eq=False)
class ReceivedFrame:
    """Received pilot symbols of one frame, indexed (block, subblock, pilot)."""

    y: np.ndarray
    noise_variance: float

    def __post_init__(self):
        y = np.ascontiguousarray(self.y, dtype=complex)
        object.__setattr__(self, "y", y)
        if y.ndim != 3 or y.shape[0] != 2:
            raise DimensionError(
                f"received tensor must have shape (2, I, N), got {y.shape}"
            )
        if not self.noise_variance >= 0.0:
            raise PhysicsError("noise_variance must be nonnegative and finite")


def sigma_from_snr(snr_db: float) -> float:
    """Linear noise power for a transmit SNR in dB at unit symbol power."""
    return 10.0 ** (-snr_db / 10.0)


def trial_stream(seed: int, snr_index: int, trial_index: int) -> np.random.Generator:
    """Independent counter-keyed RNG stream for one Monte Carlo trial.

    The Philox key packs the master seed into the high word and
    (snr_index, trial_index) into the low word, so any trial's noise can be
    regenerated without touching neighbouring trials; execution order and
    chunking cannot change results.
    """
    if not 0 <= snr_index < 2**32:
        raise DimensionError(f"snr_index must fit in 32 bits, got {snr_index}")
    if not 0 <= trial_index < 2**32:
        raise DimensionError(f"trial_index must fit in 32 bits, got {trial_index}")
    key = np.array([seed, (snr_index << 32) | trial_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def draw_noise(rng: np.random.Generator, config: SystemConfig, sigma2: float):
    """One frame of circularly-symmetric complex noise with total power sigma2.

    Real and imaginary parts are drawn interleaved in (block, subblock,
    pilot) order and each carries sigma2/2.
    """
    count = 2 * config.n_subblocks * config.n_pilots
    raw = rng.standard_normal(2 * count)
    w = raw.view(np.complex128).reshape(2, config.n_subblocks, config.n_pilots)
    w *= math.sqrt(sigma2 / 2.0)
    return w


def _check_design(design: PilotDesign, config: SystemConfig) -> None:
    if design.psi.shape != (config.n_pilots,):
        raise DesignError(
            f"training vector length {design.psi.shape[0]} does not match "
            f"n_pilots = {config.n_pilots}"
        )
    expected = (config.n_subblocks, config.geom.m_total)
    if design.phi_bar.shape != expected:
        raise DesignError(
            f"refraction schedule shape {design.phi_bar.shape} does not match "
            f"configured {expected}"
        )


def clean_frame(
    params: ChannelParams, design: PilotDesign, config: SystemConfig
) -> np.ndarray:
    """Noise-free received tensor (2, I, N) built from the ground-truth links."""
    _check_design(design, config)
    n_sub = config.n_subblocks
    g = np.empty((2, n_sub), dtype=complex)
    h = np.empty((2, n_sub), dtype=complex)
    for k in (0, 1):
        for i in range(n_sub):
            g[k, i] = direct_channel(params, k, i, config)
            h[k, i] = initial_cascaded_channel(
                params, config.geom, design.phi_bar[i], k, i, config
            )
    return g[:, :, None] + design.psi[None, None, :] * h[:, :, None]


def synthesize_frame(
    params: ChannelParams,
    design: PilotDesign,
    config: SystemConfig,
    snr_db: float,
    rng_stream: np.random.Generator,
) -> ReceivedFrame:
    """Superimpose both links plus noise over two pilot blocks.

    With infinite snr_db the result is exactly noiseless.
    """
    sigma2 = sigma_from_snr(snr_db)
    y = clean_frame(params, design, config) + draw_noise(rng_stream, config, sigma2)
    return ReceivedFrame(y=y, noise_variance=sigma2)
