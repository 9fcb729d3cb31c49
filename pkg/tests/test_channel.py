"""Channel-model oracles: steering vectors, array responses, per-block gains.

Expected values are computed with scalar cmath arithmetic, independent of the
vectorized implementation under test.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_ref_config, make_ref_params
from itshsr.channel import (
    ArrayGeometry,
    ChannelParams,
    direct_channel,
    doppler_from_geometry,
    equivalent_array_response,
    initial_cascaded_channel,
    phase_diffs_from_geometry,
    steering_vector_1d,
)
from itshsr.errors import (
    DesignError,
    DimensionError,
    GeometryError,
    PhysicsError,
)
from itshsr.estimators import build_omega
from itshsr.pilots import design_refraction_matrix

angles = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestSteeringVector:
    def test_zero_phase_is_all_ones(self):
        assert np.array_equal(steering_vector_1d(0.0, 3), np.ones(3, dtype=complex))

    def test_half_turn(self):
        np.testing.assert_allclose(
            steering_vector_1d(math.pi, 2), [1.0, -1.0], atol=1e-12
        )

    def test_frozen_reference_phase(self):
        # independent scalar oracle for phase 0.08*pi, length 5
        expected = [cmath.exp(1j * 0.08 * math.pi * m) for m in range(5)]
        np.testing.assert_allclose(steering_vector_1d(0.08 * math.pi, 5), expected, rtol=1e-13)

    def test_first_entry_exactly_one(self):
        assert steering_vector_1d(1.2345, 7)[0] == 1.0 + 0.0j

    def test_zero_length_rejected(self):
        with pytest.raises(DimensionError):
            steering_vector_1d(0.1, 0)

    @given(phase=angles, length=st.integers(min_value=1, max_value=64))
    def test_unit_modulus(self, phase, length):
        v = steering_vector_1d(phase, length)
        assert np.max(np.abs(np.abs(v) - 1.0)) <= 1e-12


class TestArrayResponse:
    def test_zero_phases_all_ones(self):
        params = make_ref_params(phi_y=0.0, phi_z=0.0)
        a = equivalent_array_response(params, ArrayGeometry(3, 4))
        assert np.array_equal(a, np.ones(12, dtype=complex))

    def test_two_by_two_kronecker(self):
        params = make_ref_params(phi_y=math.pi, phi_z=0.0)
        a = equivalent_array_response(params, ArrayGeometry(2, 2))
        np.testing.assert_allclose(a, [1.0, 1.0, -1.0, -1.0], atol=1e-12)

    def test_reference_entries_against_index_formula(self):
        # entry m must equal exp(j(floor(m/Mz)*phi_y + (m mod Mz)*phi_z))
        params = make_ref_params()
        geom = ArrayGeometry(5, 6)
        a = equivalent_array_response(params, geom)
        expected = [
            cmath.exp(1j * ((m // 6) * params.phi_y + (m % 6) * params.phi_z))
            for m in range(30)
        ]
        np.testing.assert_allclose(a, expected, rtol=1e-13)

    @given(
        phi_y=angles,
        phi_z=angles,
        ry=angles,
        rz=angles,
        m_y=st.integers(min_value=2, max_value=6),
        m_z=st.integers(min_value=2, max_value=6),
    )
    @settings(deadline=None)
    def test_kronecker_hadamard_split(self, phi_y, phi_z, ry, rz, m_y, m_z):
        # splitting each phase difference in two and taking the elementwise
        # product of the partial responses must reproduce the full response
        full = np.kron(steering_vector_1d(phi_y, m_y), steering_vector_1d(phi_z, m_z))
        part_r = np.kron(steering_vector_1d(ry, m_y), steering_vector_1d(rz, m_z))
        part_t = np.kron(
            steering_vector_1d(phi_y - ry, m_y), steering_vector_1d(phi_z - rz, m_z)
        )
        np.testing.assert_allclose(part_r * part_t, full, atol=1e-12)

    def test_matches_exponent_of_omega_columns(self, ref_params, ref_config):
        a = equivalent_array_response(ref_params, ref_config.geom)
        omega = build_omega(ref_config.geom)
        z_geom = np.array([0.0, ref_params.phi_y, ref_params.phi_z])
        np.testing.assert_allclose(a, np.exp(1j * omega @ z_geom), atol=1e-12)


class TestDirectChannel:
    def test_static_unity(self, ref_config):
        params = make_ref_params(f_d1=0.0, beta1=1.0 + 0.0j)
        assert direct_channel(params, 1, 17, ref_config) == 1.0 + 0.0j

    def test_reference_first_symbol_is_gain(self, ref_params, ref_config):
        assert direct_channel(ref_params, 0, 0, ref_config) == ref_params.beta1

    def test_reference_second_block_phase(self, ref_params, ref_config):
        # independent oracle: exponent 2*pi*901*40*1e-5 = 2*pi*0.3604
        expected = cmath.exp(1j * math.pi / 4) * cmath.exp(1j * 2 * math.pi * 0.3604)
        got = direct_channel(ref_params, 1, 0, ref_config)
        assert abs(got - expected) < 1e-12

    def test_block_ratio_is_constant(self, ref_params, ref_config):
        cfg = ref_config
        xi1 = cmath.exp(
            1j * 2 * math.pi * ref_params.f_d1 * cfg.n_subblocks * cfg.subblock_duration
        )
        for i in (0, 3, 39):
            ratio = direct_channel(ref_params, 1, i, cfg) / direct_channel(
                ref_params, 0, i, cfg
            )
            assert abs(ratio - xi1) < 1e-12

    def test_index_range_enforced(self, ref_params, ref_config):
        with pytest.raises(DimensionError):
            direct_channel(ref_params, 2, 0, ref_config)
        with pytest.raises(DimensionError):
            direct_channel(ref_params, 0, 40, ref_config)
        with pytest.raises(DimensionError):
            direct_channel(ref_params, 0, -1, ref_config)


class TestCascadedChannel:
    def test_matched_refraction_gives_element_count(self, ref_config):
        params = make_ref_params(f_d2=0.0, beta2=1.0 + 0.0j)
        geom = ref_config.geom
        a = equivalent_array_response(params, geom)
        got = initial_cascaded_channel(params, geom, a.conj(), 0, 0, ref_config)
        assert abs(got - geom.m_total) < 1e-10

    def test_flat_channel_all_ones_refraction(self, ref_config):
        params = make_ref_params(f_d2=0.0, phi_y=0.0, phi_z=0.0)
        ones = np.ones(30, dtype=complex)
        got = initial_cascaded_channel(params, ref_config.geom, ones, 1, 5, ref_config)
        assert abs(got - params.beta2 * 30) < 1e-10

    def test_reference_row_against_brute_force_sum(self, ref_params, ref_config):
        # per-element oracle: sum_m exp(j*2pi*f_d2*(k*I+i)*T) * beta2 * a_m * phi_m
        phi_bar = design_refraction_matrix(ref_config)
        k, i = 0, 0
        acc = 0.0 + 0.0j
        rot = cmath.exp(
            1j
            * 2
            * math.pi
            * ref_params.f_d2
            * (k * ref_config.n_subblocks + i)
            * ref_config.subblock_duration
        )
        for m in range(30):
            a_m = cmath.exp(
                1j * ((m // 6) * ref_params.phi_y + (m % 6) * ref_params.phi_z)
            )
            acc += rot * ref_params.beta2 * a_m * phi_bar[i, m]
        got = initial_cascaded_channel(
            ref_params, ref_config.geom, phi_bar[i], k, i, ref_config
        )
        assert abs(got - acc) < 1e-10

    def test_block_ratio_matches_cascade_gap(self, ref_params, ref_config):
        phi_bar = design_refraction_matrix(ref_config)
        xi2 = cmath.exp(
            1j
            * 2
            * math.pi
            * ref_params.f_d2
            * ref_config.n_subblocks
            * ref_config.subblock_duration
        )
        for i in (0, 11, 39):
            num = initial_cascaded_channel(
                ref_params, ref_config.geom, phi_bar[i], 1, i, ref_config
            )
            den = initial_cascaded_channel(
                ref_params, ref_config.geom, phi_bar[i], 0, i, ref_config
            )
            assert abs(num / den - xi2) < 1e-12

    def test_non_unit_refraction_rejected(self, ref_params, ref_config):
        bad = np.ones(30, dtype=complex)
        bad[4] = 0.5
        with pytest.raises(DesignError):
            initial_cascaded_channel(ref_params, ref_config.geom, bad, 0, 0, ref_config)

    def test_wrong_length_rejected(self, ref_params, ref_config):
        with pytest.raises(DimensionError):
            initial_cascaded_channel(
                ref_params, ref_config.geom, np.ones(29, dtype=complex), 0, 0, ref_config
            )


class TestGeometryHelpers:
    def test_maximal_doppler(self):
        assert abs(doppler_from_geometry(100.0, 0.1, math.pi / 2, math.pi / 2) - 1000.0) < 1e-9

    def test_broadside_is_zero(self):
        assert doppler_from_geometry(123.0, 0.2, 0.0, 1.1) == 0.0

    def test_reference_doppler_from_angles(self):
        # choose angles whose sine product is 0.901 -> 901 Hz at v/lambda = 1000
        azimuth = math.asin(0.901)
        got = doppler_from_geometry(100.0, 0.1, azimuth, math.pi / 2)
        assert abs(got - 901.0) < 1e-9

    def test_nonpositive_wavelength_rejected(self):
        with pytest.raises(PhysicsError):
            doppler_from_geometry(100.0, 0.0, 1.0, 1.0)

    def test_phase_diff_z_vanishes_at_grazing_elevation(self):
        _, pz = phase_diffs_from_geometry(0.1, None, 0.7, math.pi / 2)
        assert abs(pz) < 1e-12

    def test_phase_diff_y_half_wavelength_limit(self):
        py, _ = phase_diffs_from_geometry(0.1, None, math.pi / 2, math.pi / 2)
        assert abs(py - math.pi) < 1e-12

    def test_reference_numeric_pair(self):
        py, pz = phase_diffs_from_geometry(0.1, 0.05, 0.3, 1.0)
        scale = 2 * math.pi / 0.1 * 0.05
        assert abs(py - scale * math.sin(0.3) * math.sin(1.0)) < 1e-12
        assert abs(pz - scale * math.cos(1.0)) < 1e-12

    def test_nonpositive_spacing_rejected(self):
        with pytest.raises(PhysicsError):
            phase_diffs_from_geometry(0.1, -0.05, 0.3, 1.0)


class TestTypes:
    def test_geometry_total(self):
        assert ArrayGeometry(5, 6).m_total == 30

    def test_degenerate_geometry_rejected(self):
        with pytest.raises(GeometryError):
            ArrayGeometry(1, 4)
        with pytest.raises(GeometryError):
            ArrayGeometry(4, 1)

    def test_phase_range_enforced(self):
        with pytest.raises(PhysicsError):
            make_ref_params(phi_y=3.5)
        with pytest.raises(PhysicsError):
            make_ref_params(phi_z=-math.pi)

    def test_doppler_must_be_finite(self):
        with pytest.raises(PhysicsError):
            make_ref_params(f_d1=math.nan)

    def test_boundary_phase_allowed(self):
        params = make_ref_params(phi_y=math.pi)
        assert params.phi_y == math.pi
