"""Shared fixtures: the reference scenario used across the test suite."""

import cmath
import math

import pytest

from itshsr.channel import ArrayGeometry, ChannelParams
from itshsr.pilots import SystemConfig


def make_ref_params(**overrides):
    """Ground-truth parameter set for the documented reference scenario."""
    values = dict(
        f_d1=901.0,
        f_d2=900.0,
        beta1=cmath.exp(1j * math.pi / 4),
        beta2=cmath.exp(1j * math.pi / 5),
        phi_y=0.08 * math.pi,
        phi_z=0.06 * math.pi,
    )
    values.update(overrides)
    return ChannelParams(**values)


def make_ref_config(**overrides):
    values = dict(
        n_pilots=25,
        n_subblocks=40,
        geom=ArrayGeometry(5, 6),
        subblock_duration=1e-5,
        snr_grid=(0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0),
        trials=100000,
        seed=12648430,
    )
    values.update(overrides)
    return SystemConfig(**values)


@pytest.fixture
def ref_params():
    return make_ref_params()


@pytest.fixture
def ref_config():
    return make_ref_config()
