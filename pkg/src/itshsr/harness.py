"""Monte Carlo sweep engine: MSE-vs-SNR curves with CRLB companions.

One sweep runs ``config.trials`` independent pipeline trials per SNR point,
each on its own counter-keyed noise stream, and reduces squared errors in
trial order with compensated summation. The result is therefore bit-stable
across chunk sizes and thread counts for a fixed seed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields

import numpy as np

from . import backend as backend_mod
from .channel import ArrayGeometry, ChannelParams
from .crlb import crlb_report
from .errors import ConfigError, CsvFormatError, DegenerateInnerProductError
from .estimators import build_omega, estimate_channels
from .linksim import ReceivedFrame, clean_frame, draw_noise, sigma_from_snr, trial_stream
from .pilots import SystemConfig, make_pilot_design, validate_config

__all__ = [
    "CSV_COLUMNS",
    "MseCurve",
    "demo_scenario",
    "emit_csv",
    "read_csv",
    "run_sweep",
]

_MSE_NAMES = (
    "mse_xi1",
    "mse_xi1_nn",
    "mse_xi2",
    "mse_xi2_nn",
    "mse_fd1",
    "mse_fd2",
    "mse_beta1",
    "mse_beta1_ideal",
    "mse_beta2",
    "mse_beta2_ideal",
    "mse_phi_y",
    "mse_phi_z",
)
_CRLB_NAMES = (
    "crlb_xi1",
    "crlb_xi2",
    "crlb_fd1",
    "crlb_fd2",
    "crlb_beta1",
    "crlb_beta2",
    "crlb_phi_y",
    "crlb_phi_z",
)
CSV_COLUMNS = ("snr_db",) + _MSE_NAMES + _CRLB_NAMES + (
    "trials_completed",
    "trials_aborted",
)


@dataclass(frozen=True)
class MseCurve:
    """Aligned per-SNR series of empirical MSEs, bounds and trial counts."""

    snr_db: tuple
    mse_xi1: tuple
    mse_xi1_nn: tuple
    mse_xi2: tuple
    mse_xi2_nn: tuple
    mse_fd1: tuple
    mse_fd2: tuple
    mse_beta1: tuple
    mse_beta1_ideal: tuple
    mse_beta2: tuple
    mse_beta2_ideal: tuple
    mse_phi_y: tuple
    mse_phi_z: tuple
    crlb_xi1: tuple
    crlb_xi2: tuple
    crlb_fd1: tuple
    crlb_fd2: tuple
    crlb_beta1: tuple
    crlb_beta2: tuple
    crlb_phi_y: tuple
    crlb_phi_z: tuple
    trials_completed: tuple
    trials_aborted: tuple

    def __post_init__(self) -> None:
        for field in fields(self):
            if field.name in ("trials_completed", "trials_aborted"):
                coerced = tuple(int(v) for v in getattr(self, field.name))
            else:
                coerced = tuple(float(v) for v in getattr(self, field.name))
            object.__setattr__(self, field.name, coerced)
        n_points = len(self.snr_db)
        if n_points == 0:
            raise ConfigError("a sweep curve needs at least one SNR point")
        for field in fields(self):
            if len(getattr(self, field.name)) != n_points:
                raise ConfigError(
                    f"series {field.name} does not match the SNR grid length"
                )
        for name in _MSE_NAMES:
            for value in getattr(self, name):
                if not (math.isfinite(value) and value >= 0.0):
                    raise ConfigError(f"{name} contains a non-finite or negative MSE")


def demo_scenario() -> tuple[SystemConfig, ChannelParams]:
    """The built-in showcase scenario used by the ``demo`` subcommand."""
    config = SystemConfig(
        n_pilots=25,
        n_subblocks=40,
        geom=ArrayGeometry(5, 6),
        subblock_duration=1e-5,
        snr_grid=(0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0),
        trials=100000,
        seed=0x00C0FFEE,
    )
    params = ChannelParams(
        f_d1=901.0,
        f_d2=900.0,
        beta1=cmath.exp(1j * math.pi / 4),
        beta2=cmath.exp(1j * math.pi / 5),
        phi_y=0.08 * math.pi,
        phi_z=0.06 * math.pi,
    )
    return config, params


def run_sweep(
    config: SystemConfig,
    params: ChannelParams,
    *,
    backend: str | None = None,
    chunk_size: int = 256,
    progress=None,
) -> MseCurve:
    """Sweep the SNR grid, running ``config.trials`` pipelines per point.

    Parameters
    ----------
    config, params
        Scenario under test; ``validate_config`` must pass.
    backend : str, optional
        Kernel override (``auto``, ``native``, ``python``); default is the
        backend chosen at import.
    chunk_size : int, optional
        Trials drawn and processed per kernel call. Has no effect on the
        result, only on peak memory.
    progress : callable, optional
        Called as ``progress(snr_index, snr_db, trials_done, trials)`` after
        every chunk.

    Returns
    -------
    MseCurve
    """
    report = validate_config(config, params)
    if not report.ok:
        raise ConfigError(f"configuration is infeasible:\n{report}")
    if chunk_size < 1:
        raise ConfigError(f"chunk_size must be positive, got {chunk_size}")
    kernel = backend_mod.select_backend(backend)

    design = make_pilot_design(config)
    clean = clean_frame(params, design, config)
    base = estimate_channels(ReceivedFrame(y=clean, noise_variance=0.0), design)
    v_clean = np.stack([base.g_hat, base.h_hat])
    pinv_omega = np.linalg.pinv(build_omega(config.geom))

    n_sub, n_pil = config.n_subblocks, config.n_pilots
    columns: dict[str, list] = {name: [] for name in CSV_COLUMNS}
    for snr_index, snr_db in enumerate(config.snr_grid):
        sigma2 = sigma_from_snr(snr_db)
        error_chunks = []
        abort_chunks = []
        for start in range(0, config.trials, chunk_size):
            count = min(chunk_size, config.trials - start)
            noise = np.empty((count, 2, n_sub, n_pil), dtype=np.complex128)
            for j in range(count):
                rng = trial_stream(config.seed, snr_index, start + j)
                noise[j] = draw_noise(rng, config, sigma2)
            errors, aborted = kernel.trial_error_block(
                noise,
                v_clean,
                design.psi,
                design.phi_bar,
                pinv_omega,
                config.subblock_duration,
                params.f_d1,
                params.f_d2,
                params.beta1,
                params.beta2,
                params.phi_y,
                params.phi_z,
            )
            error_chunks.append(errors)
            abort_chunks.append(aborted)
            if progress is not None:
                progress(snr_index, snr_db, start + count, config.trials)
        errors = np.concatenate(error_chunks)
        aborted = np.concatenate(abort_chunks)
        kept = errors[~aborted]
        completed = kept.shape[0]
        if completed == 0:
            raise DegenerateInnerProductError(
                f"every trial aborted at {snr_db} dB; the scenario is degenerate"
            )
        columns["snr_db"].append(float(snr_db))
        for col, name in enumerate(_MSE_NAMES):
            columns[name].append(math.fsum(kept[:, col]) / completed)
        if sigma2 > 0.0:
            bounds = crlb_report(sigma2, config, params)
            for name in _CRLB_NAMES:
                columns[name].append(getattr(bounds, name))
        else:
            # noiseless diagnostic point: every bound collapses to zero
            for name in _CRLB_NAMES:
                columns[name].append(0.0)
        columns["trials_completed"].append(completed)
        columns["trials_aborted"].append(config.trials - completed)
    return MseCurve(**{name: tuple(columns[name]) for name in CSV_COLUMNS})


def emit_csv(curve: MseCurve, path) -> None:
    """Write one header line plus one line per SNR point.

    Floats are rendered in full double precision so parsing the file
    reproduces the curve bit for bit.
    """
    lines = [",".join(CSV_COLUMNS)]
    for row in range(len(curve.snr_db)):
        cells = []
        for name in CSV_COLUMNS:
            value = getattr(curve, name)[row]
            cells.append(str(value) if isinstance(value, int) else f"{value:.17e}")
        lines.append(",".join(cells))
    try:
        with open(path, "w", encoding="ascii", newline="") as stream:
            stream.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise CsvFormatError(f"cannot write sweep CSV to {path}: {exc}") from exc


def read_csv(path) -> MseCurve:
    """Parse a file produced by :func:`emit_csv` back into a curve."""
    try:
        with open(path, "r", encoding="ascii") as stream:
            lines = stream.read().splitlines()
    except OSError as exc:
        raise CsvFormatError(f"cannot read sweep CSV from {path}: {exc}") from exc
    if not lines or tuple(lines[0].split(",")) != CSV_COLUMNS:
        raise CsvFormatError(f"{path} does not carry the sweep CSV header")
    columns: dict[str, list] = {name: [] for name in CSV_COLUMNS}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(CSV_COLUMNS):
            raise CsvFormatError(
                f"{path}:{lineno}: expected {len(CSV_COLUMNS)} cells, "
                f"got {len(cells)}"
            )
        for name, cell in zip(CSV_COLUMNS, cells):
            try:
                if name in ("trials_completed", "trials_aborted"):
                    columns[name].append(int(cell))
                else:
                    columns[name].append(float(cell))
            except ValueError as exc:
                raise CsvFormatError(
                    f"{path}:{lineno}: bad value for {name}: {cell!r}"
                ) from exc
    return MseCurve(**{name: tuple(columns[name]) for name in CSV_COLUMNS})
