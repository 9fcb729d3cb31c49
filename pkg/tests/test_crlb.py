"""Closed-form bound oracles.

Scalar bounds are checked against hand arithmetic and exact proportionality
laws; the 4x4 information matrix is checked against a brute-force summation
over the element index grid, assembled here with plain Python loops.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_ref_config, make_ref_params
from itshsr.channel import ArrayGeometry
from itshsr.crlb import (
    _spd_inverse,
    crlb_fd1,
    crlb_fd2,
    crlb_report,
    crlb_xi1,
    crlb_xi2,
    fim_zbar,
)
from itshsr.errors import PhysicsError, SingularMatrixError


class TestScalarBounds:
    def test_unit_inputs(self):
        assert crlb_xi1(1.0, 1, 1) == 1.0
        assert crlb_fd1(8.0 * math.pi**2, 1, 1, 1.0) == 1.0

    def test_reference_values(self):
        assert crlb_xi1(0.01, 25, 40) == pytest.approx(1e-5, rel=1e-15)
        assert crlb_xi2(0.01, 25, 40, 30) == pytest.approx(1e-5 / 30, rel=1e-15)
        # tangent projection of the unit-circle bound: half the complex
        # variance maps to the angle, scaled by the block separation
        span = 2 * math.pi * 40 * 1e-5
        expected_fd1 = crlb_xi1(0.01, 25, 40) / (2 * span**2)
        assert crlb_fd1(0.01, 25, 40, 1e-5) == pytest.approx(expected_fd1, rel=1e-12)
        assert crlb_fd1(0.01, 25, 40, 1e-5) == pytest.approx(0.79, rel=0.01)

    def test_proportionality_laws(self):
        assert crlb_xi1(1.0, 2, 1) == 0.5
        assert crlb_fd1(1.0, 1, 2, 1.0) * 8 == pytest.approx(
            crlb_fd1(1.0, 1, 1, 1.0), rel=1e-15
        )

    def test_surface_reduces_to_direct_at_single_element(self):
        assert crlb_xi2(0.37, 7, 11, 1) == crlb_xi1(0.37, 7, 11)
        assert crlb_fd2(0.37, 7, 11, 1, 2e-5) == crlb_fd1(0.37, 7, 11, 2e-5)

    def test_division_identities_exact(self):
        assert crlb_xi2(0.01, 25, 40, 30) == crlb_xi1(0.01, 25, 40) / 30
        assert crlb_fd2(0.01, 25, 40, 30, 1e-5) == crlb_fd1(0.01, 25, 40, 1e-5) / 30
        ratio = crlb_fd2(0.01, 25, 40, 30, 1e-5) * 30 / crlb_fd1(0.01, 25, 40, 1e-5)
        assert abs(ratio - 1.0) < 1e-15

    @given(
        n=st.integers(min_value=1, max_value=500),
        i=st.integers(min_value=1, max_value=500),
    )
    def test_doubling_noise_doubles_bounds(self, n, i):
        s = 0.173
        assert crlb_xi1(2 * s, n, i) == 2 * crlb_xi1(s, n, i)
        assert crlb_fd1(2 * s, n, i, 1e-5) == 2 * crlb_fd1(s, n, i, 1e-5)

    def test_nonpositive_inputs_rejected(self):
        with pytest.raises(PhysicsError):
            crlb_xi1(0.0, 25, 40)
        with pytest.raises(PhysicsError):
            crlb_xi1(-1.0, 25, 40)
        with pytest.raises(PhysicsError):
            crlb_fd1(1.0, 0, 40, 1e-5)
        with pytest.raises(PhysicsError):
            crlb_fd2(1.0, 25, 40, 0, 1e-5)
        with pytest.raises(PhysicsError):
            crlb_fd1(1.0, 25, 40, 0.0)


def brute_force_fim(sigma2, n, i, m_y, m_z, beta2):
    """Assemble the 4x4 matrix entry by entry with scalar loops."""
    wy = [m // m_z for m in range(m_y * m_z)]
    wz = [m % m_z for m in range(m_y * m_z)]
    sy, sz = sum(wy), sum(wz)
    qy = sum(v * v for v in wy)
    qz = sum(v * v for v in wz)
    p = sum(a * b for a, b in zip(wy, wz))
    br, bi = beta2.real, beta2.imag
    mat = np.array(
        [
            [m_y * m_z, 0.0, -bi * sy, -bi * sz],
            [0.0, m_y * m_z, br * sy, br * sz],
            [-bi * sy, br * sy, qy, p],
            [-bi * sz, br * sz, p, qz],
        ]
    )
    return 4.0 * n * i / sigma2 * mat


class TestFimZbar:
    def test_reference_aggregates_exact(self):
        # sigma2 = 4NI makes the leading scale exactly one, so the
        # integer-valued entries must come out as exact integers
        geom = ArrayGeometry(5, 6)
        fim = fim_zbar(4.0 * 25 * 40, 25, 40, geom, cmath.exp(1j * math.pi / 5))
        assert fim[0, 0] == 30.0
        assert fim[1, 1] == 30.0
        assert fim[2, 2] == 180.0
        assert fim[3, 3] == 275.0
        assert fim[2, 3] == 150.0
        assert fim[0, 2] / (-math.sin(math.pi / 5)) == pytest.approx(60.0, rel=1e-14)
        assert fim[0, 3] / (-math.sin(math.pi / 5)) == pytest.approx(75.0, rel=1e-14)
        assert fim[1, 2] / math.cos(math.pi / 5) == pytest.approx(60.0, rel=1e-14)

    def test_matches_brute_force_summation(self):
        for m_y, m_z, beta2 in [
            (5, 6, cmath.exp(1j * math.pi / 5)),
            (2, 2, 0.8 - 0.3j),
            (4, 3, 1.0 + 0.0j),
        ]:
            got = fim_zbar(0.01, 25, 40, ArrayGeometry(m_y, m_z), beta2)
            np.testing.assert_allclose(
                got, brute_force_fim(0.01, 25, 40, m_y, m_z, beta2), rtol=1e-13
            )

    def test_real_gain_decouples_imaginary_row(self):
        fim = fim_zbar(1.0, 25, 40, ArrayGeometry(3, 4), 1.0 + 0.0j)
        assert fim[0, 2] == 0.0
        assert fim[0, 3] == 0.0
        assert fim[2, 0] == 0.0
        assert fim[3, 0] == 0.0

    def test_symmetric_for_arbitrary_gain(self):
        fim = fim_zbar(0.3, 10, 20, ArrayGeometry(4, 5), 0.6 + 0.7j)
        assert np.array_equal(fim, fim.T)

    def test_positive_definite_across_geometries(self):
        rng = np.random.Generator(np.random.Philox(key=np.array([11, 0], dtype=np.uint64)))
        for m_y in range(2, 7):
            for m_z in range(2, 7):
                beta2 = cmath.exp(1j * rng.uniform(-math.pi, math.pi))
                fim = fim_zbar(0.01, 25, 40, ArrayGeometry(m_y, m_z), beta2)
                np.linalg.cholesky(fim)

    def test_nonpositive_noise_rejected(self):
        with pytest.raises(PhysicsError):
            fim_zbar(0.0, 25, 40, ArrayGeometry(5, 6), 1.0 + 0.0j)


class TestCrlbReport:
    def test_reference_scalars(self, ref_params, ref_config):
        report = crlb_report(0.01, ref_config, ref_params)
        assert report.crlb_xi1 == pytest.approx(1e-5, rel=1e-15)
        assert report.crlb_beta1 == report.crlb_xi1
        assert report.crlb_xi2 == pytest.approx(1e-5 / 30, rel=1e-15)
        assert report.crlb_fd2 == report.crlb_fd1 / 30

    def test_inverse_consistency(self, ref_params, ref_config):
        report = crlb_report(0.01, ref_config, ref_params)
        np.testing.assert_allclose(
            report.crlb_zbar @ report.fim_zbar, np.eye(4), atol=1e-10
        )
        assert report.crlb_beta2 == report.crlb_zbar[0, 0] + report.crlb_zbar[1, 1]
        assert report.crlb_phi_y == report.crlb_zbar[2, 2]
        assert report.crlb_phi_z == report.crlb_zbar[3, 3]

    def test_every_field_scales_linearly(self, ref_params, ref_config):
        low = crlb_report(0.01, ref_config, ref_params)
        high = crlb_report(0.02, ref_config, ref_params)
        for name in (
            "crlb_xi1",
            "crlb_xi2",
            "crlb_fd1",
            "crlb_fd2",
            "crlb_beta1",
            "crlb_beta2",
            "crlb_phi_y",
            "crlb_phi_z",
        ):
            assert getattr(high, name) == pytest.approx(
                2 * getattr(low, name), rel=1e-12
            )
        # entries that are analytically zero sit at inversion noise level,
        # so give the comparison an absolute floor tied to the matrix scale
        np.testing.assert_allclose(
            high.crlb_zbar,
            2 * low.crlb_zbar,
            rtol=1e-12,
            atol=1e-15 * np.abs(low.crlb_zbar).max(),
        )

    def test_all_bounds_positive(self, ref_params, ref_config):
        report = crlb_report(1.0, ref_config, ref_params)
        for name in (
            "crlb_xi1",
            "crlb_xi2",
            "crlb_fd1",
            "crlb_fd2",
            "crlb_beta1",
            "crlb_beta2",
            "crlb_phi_y",
            "crlb_phi_z",
        ):
            assert getattr(report, name) > 0.0

    def test_surface_bound_ordering(self, ref_params, ref_config):
        # the off-diagonal couplings cost the phase estimates accuracy,
        # and the z axis has more centred index spread than the y axis
        report = crlb_report(0.01, ref_config, ref_params)
        assert report.crlb_phi_z < report.crlb_phi_y

    def test_invalid_noise_rejected(self, ref_params, ref_config):
        with pytest.raises(PhysicsError):
            crlb_report(0.0, ref_config, ref_params)


class TestSpdInverse:
    def test_identity_round_trip(self):
        rng = np.random.Generator(np.random.Philox(key=np.array([12, 0], dtype=np.uint64)))
        a = rng.standard_normal((4, 4))
        spd = a @ a.T + 4 * np.eye(4)
        inv = _spd_inverse(spd)
        np.testing.assert_allclose(inv @ spd, np.eye(4), atol=1e-12)
        assert np.array_equal(inv, inv.T)

    def test_singular_matrix_reported(self):
        with pytest.raises(SingularMatrixError):
            _spd_inverse(np.zeros((3, 3)))
