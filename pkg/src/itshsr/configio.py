"""Flat key-value scenario files.

One ``key = value`` assignment per line, ``#`` starts a comment, blank
lines are ignored. Keys mirror the configuration and channel-parameter
field names; complex gains are written ``magnitude@phase_radians`` and the
SNR grid is a comma-separated list. Example::

    # showcase scenario
    n_pilots = 25
    n_subblocks = 40
    m_y = 5
    m_z = 6
    subblock_duration = 1e-5
    snr_grid = 0, 5, 10, 15, 20, 25, 30
    trials = 100000
    seed = 12648430
    f_d1 = 901.0
    f_d2 = 900.0
    beta1 = 1@0.7853981633974483
    beta2 = 1@0.6283185307179586
    phi_y = 0.25132741228718347
    phi_z = 0.18849555921538758
"""

from __future__ import annotations

import cmath

from .channel import ArrayGeometry, ChannelParams
from .errors import ConfigError
from .pilots import SystemConfig

__all__ = [
    "format_complex",
    "format_config",
    "load_config",
    "parse_complex",
    "parse_config_text",
]

_INT_KEYS = ("n_pilots", "n_subblocks", "m_y", "m_z", "trials", "seed")
_FLOAT_KEYS = ("subblock_duration", "f_d1", "f_d2", "phi_y", "phi_z")
_COMPLEX_KEYS = ("beta1", "beta2")
_ALL_KEYS = _INT_KEYS + _FLOAT_KEYS + _COMPLEX_KEYS + ("snr_grid",)


def parse_complex(text: str) -> complex:
    """Read a ``magnitude@phase_radians`` pair."""
    parts = text.split("@")
    if len(parts) != 2:
        raise ConfigError(
            f"complex values use magnitude@phase_radians, got {text!r}"
        )
    try:
        magnitude, phase = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad complex value {text!r}") from exc
    return cmath.rect(magnitude, phase)


def format_complex(value: complex) -> str:
    return f"{abs(value)!r}@{cmath.phase(value)!r}"


def _parse_assignments(text: str) -> dict[str, str]:
    seen: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        seen[key] = value
    missing = [key for key in _ALL_KEYS if key not in seen]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    return seen


def parse_config_text(text: str) -> tuple[SystemConfig, ChannelParams]:
    """Build the scenario objects from file content.

    Raises
    ------
    ConfigError
        On syntax problems, unknown or missing keys, or unparseable values.
        Semantic violations surface from the constructed objects instead.
    """
    raw = _parse_assignments(text)
    values: dict[str, object] = {}
    for key in _INT_KEYS:
        try:
            values[key] = int(raw[key], 0)
        except ValueError as exc:
            raise ConfigError(f"key {key!r}: bad integer {raw[key]!r}") from exc
    for key in _FLOAT_KEYS:
        try:
            values[key] = float(raw[key])
        except ValueError as exc:
            raise ConfigError(f"key {key!r}: bad number {raw[key]!r}") from exc
    for key in _COMPLEX_KEYS:
        values[key] = parse_complex(raw[key])
    try:
        grid = tuple(float(cell) for cell in raw["snr_grid"].split(","))
    except ValueError as exc:
        raise ConfigError(f"key 'snr_grid': bad list {raw['snr_grid']!r}") from exc

    config = SystemConfig(
        n_pilots=values["n_pilots"],
        n_subblocks=values["n_subblocks"],
        geom=ArrayGeometry(values["m_y"], values["m_z"]),
        subblock_duration=values["subblock_duration"],
        snr_grid=grid,
        trials=values["trials"],
        seed=values["seed"],
    )
    params = ChannelParams(
        f_d1=values["f_d1"],
        f_d2=values["f_d2"],
        beta1=values["beta1"],
        beta2=values["beta2"],
        phi_y=values["phi_y"],
        phi_z=values["phi_z"],
    )
    return config, params


def load_config(path) -> tuple[SystemConfig, ChannelParams]:
    """Parse a scenario file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as stream:
            text = stream.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def format_config(config: SystemConfig, params: ChannelParams) -> str:
    """Render a scenario back into the file format."""
    lines = [
        f"n_pilots = {config.n_pilots}",
        f"n_subblocks = {config.n_subblocks}",
        f"m_y = {config.geom.m_y}",
        f"m_z = {config.geom.m_z}",
        f"subblock_duration = {config.subblock_duration!r}",
        "snr_grid = " + ", ".join(repr(v) for v in config.snr_grid),
        f"trials = {config.trials}",
        f"seed = {config.seed}",
        f"f_d1 = {params.f_d1!r}",
        f"f_d2 = {params.f_d2!r}",
        f"beta1 = {format_complex(params.beta1)}",
        f"beta2 = {format_complex(params.beta2)}",
        f"phi_y = {params.phi_y!r}",
        f"phi_z = {params.phi_z!r}",
    ]
    return "\n".join(lines) + "\n"
