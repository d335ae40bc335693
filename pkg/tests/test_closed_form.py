import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqrm import closed_form as cf
from aqrm.errors import DegenerateState
from aqrm.params import (
    CanonicalFlags,
    ModelParams,
    VariationalParams,
    canonicalize,
)

SQRT_HALF = math.sqrt(0.5)


def vp(alpha=0.5, theta=2.0, p=0.8, gamma=0.0):
    return VariationalParams(alpha, theta, p, gamma)


class TestNormalization:
    def test_opposite_phase_symmetric_weight(self):
        # cos(theta) = -1 and 2 p sqrt(1-p^2) = 1 push N to its maximum
        assert cf.normalization(vp(0.0, math.pi, SQRT_HALF)) == pytest.approx(2.0, abs=1e-15)

    def test_orthogonal_qubit_states_kill_cross_term(self):
        assert cf.normalization(vp(2.0, math.pi / 2, 0.3)) == pytest.approx(1.0, abs=1e-15)

    def test_generic_point(self):
        expected = 1.0 + 0.48 * math.exp(-0.5)
        assert cf.normalization(vp(0.5, 2 * math.pi / 3, 0.8)) == pytest.approx(expected, rel=1e-14)

    def test_degenerate_corner_raises(self):
        with pytest.raises(DegenerateState):
            cf.normalization(vp(0.0, 0.0, SQRT_HALF))


class TestAtomicPopulation:
    def test_spin_down_limit(self):
        for p in (0.0, 0.4, 1.0):
            assert cf.atomic_population(vp(0.0, math.pi, p)) == pytest.approx(-1.0, abs=1e-15)

    def test_orthogonal_line_stays_finite(self):
        got = cf.atomic_population(vp(2.0, math.pi / 2, SQRT_HALF))
        assert got == pytest.approx(-math.exp(-8.0), rel=1e-12)

    def test_matches_literal_formula(self):
        v = vp(0.5, 2 * math.pi / 3, 0.8)
        nrm = cf.normalization(v)
        literal = (nrm - math.sin(v.theta) ** 2) / (nrm * math.cos(v.theta))
        assert cf.atomic_population(v) == pytest.approx(literal, rel=1e-12)


class TestPhotonNumber:
    def test_single_branch_is_displacement_squared(self):
        assert cf.photon_number(vp(1.5, math.pi / 2, 1.0)) == pytest.approx(2.25, abs=1e-14)

    def test_squeezed_vacuum(self):
        got = cf.photon_number(vp(0.0, 1.0, 0.3, gamma=0.3))
        assert got == pytest.approx(math.sinh(0.3) ** 2, rel=1e-14)

    def test_gamma_zero_reduction_is_exact(self):
        v0 = vp(0.7, 1.3, 0.6, gamma=0.0)
        assert cf.photon_number(v0) == v0.alpha ** 2 * (2.0 / cf.normalization(v0) - 1.0)


class TestCorrelation:
    def test_vanishes_without_rotation(self):
        assert cf.correlation(vp(1.0, 0.0, 0.3)) == 0.0

    def test_single_branch(self):
        assert cf.correlation(vp(2.0, math.pi / 2, 1.0)) == pytest.approx(-4.0, abs=1e-14)

    def test_never_positive(self):
        for a in (0.0, 0.5, 2.0):
            for th in (0.3, 1.6, 3.0):
                assert cf.correlation(vp(a, th, 0.5, gamma=0.1)) <= 0.0


class TestQubitOrientation:
    def test_symmetric_weight_vanishes(self):
        assert cf.qubit_orientation(vp(1.0, 1.3, SQRT_HALF)) == pytest.approx(0.0, abs=1e-15)

    def test_single_branch_pins_to_minus_x(self):
        assert cf.qubit_orientation(vp(4.0, math.pi / 2, 1.0)) == pytest.approx(-1.0, abs=1e-12)


class TestEnergy:
    def test_zero_coupling_ground_state(self):
        m = ModelParams(1.0, 1.0, 0.0, 0.0)
        assert cf.energy(m, vp(0.0, math.pi, 1.0)) == pytest.approx(-0.5, abs=1e-15)

    def test_displaced_oscillator_limit(self):
        m = ModelParams(0.0, 1.0, 0.7, 0.4)
        got = cf.energy(m, vp(0.7, math.pi / 2, 1.0))
        assert got == pytest.approx(-0.69, abs=1e-14)

    def test_pieces_sum(self):
        m = ModelParams(1.3, 0.9, 0.8, 0.6)
        v = vp(0.6, 2.1, 0.75, gamma=0.15)
        expected = (
            0.5 * m.delta * cf.atomic_population(v)
            + m.omega * cf.photon_number(v)
            + m.g * cf.correlation(v)
            + 0.5 * m.epsilon * cf.qubit_orientation(v)
        )
        assert cf.energy(m, v) == pytest.approx(expected, rel=1e-14)


class TestLimits:
    @pytest.mark.parametrize(
        "delta,eps,expected",
        [(1.0, 0.0, -0.5), (0.0, 1.0, -0.5), (3.0, 4.0, -2.5)],
    )
    def test_zero_coupling(self, delta, eps, expected):
        m = ModelParams(delta, 1.0, 0.0, eps)
        assert cf.limit_energy_zero_coupling(m) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize(
        "g,eps,expected",
        [(1.0, 0.0, -1.0), (0.0, 2.0, -1.0), (0.7, 0.4, -0.69)],
    )
    def test_zero_delta(self, g, eps, expected):
        m = ModelParams(0.0, 1.0, g, eps)
        assert cf.limit_energy_zero_delta(m) == pytest.approx(expected, abs=1e-14)


class TestPolaronCoefficients:
    def test_symmetric_point(self):
        got = cf.polaron_coefficients(VariationalParams(1.0, math.pi / 2, SQRT_HALF))
        assert got == pytest.approx((0.5, -0.5, -0.5, -0.5), abs=1e-15)

    def test_spin_down_limit(self):
        p = 0.6
        got = cf.polaron_coefficients(VariationalParams(1.0, math.pi, p))
        assert got == pytest.approx((0.0, 0.0, -0.6, -0.8), abs=1e-15)

    def test_generic_point_and_norm_consistency(self):
        v = VariationalParams(0.5, 2 * math.pi / 3, 0.8)
        cpp, cpn, cmp_, cmn = cf.polaron_coefficients(v)
        s3 = math.sin(math.pi / 3)
        assert (cpp, cpn) == pytest.approx((0.4, -0.3), abs=1e-15)
        assert (cmp_, cmn) == pytest.approx((-0.8 * s3, -0.6 * s3), abs=1e-15)
        w = math.exp(-2.0 * v.alpha ** 2)
        nrm = (
            cpp ** 2 + cpn ** 2 + cmp_ ** 2 + cmn ** 2
            + 2.0 * w * (cpp * cpn + cmp_ * cmn)
        )
        assert nrm == pytest.approx(cf.normalization(v), rel=1e-14)


class TestCanonicalize:
    def test_flips_negative_coupling(self):
        m, flags = canonicalize(ModelParams(1.0, 1.0, -0.5, 0.3))
        assert (m.g, m.epsilon) == (0.5, 0.3)
        assert flags == CanonicalFlags(g_flipped=True)

    def test_flips_negative_bias(self):
        m, flags = canonicalize(ModelParams(1.0, 1.0, 0.5, -0.3))
        assert (m.g, m.epsilon) == (0.5, 0.3)
        assert flags == CanonicalFlags(epsilon_flipped=True)

    def test_identity(self):
        m0 = ModelParams(1.0, 1.0, 0.5, 0.3)
        m, flags = canonicalize(m0)
        assert m == m0 and flags == CanonicalFlags()


class TestValidation:
    def test_omega_must_be_positive(self):
        with pytest.raises(ValueError):
            ModelParams(1.0, 0.0, 0.5, 0.0)

    def test_parameter_domains(self):
        with pytest.raises(ValueError):
            VariationalParams(-0.1, 1.0, 0.5)
        with pytest.raises(ValueError):
            VariationalParams(0.1, 3.5, 0.5)
        with pytest.raises(ValueError):
            VariationalParams(0.1, 1.0, 1.5)
        with pytest.raises(ValueError):
            ModelParams(math.nan, 1.0, 0.0, 0.0)


valid_params = st.builds(
    VariationalParams,
    alpha=st.floats(0.0, 3.0),
    theta=st.floats(0.0, math.pi),
    p=st.floats(0.0, 1.0),
    gamma=st.floats(-0.5, 0.5),
)


@given(valid_params)
@settings(max_examples=300, deadline=None)
def test_observable_bounds_property(v):
    try:
        nrm = cf.normalization(v)
    except DegenerateState:
        return
    assert 0.0 < nrm <= 2.0 + 1e-12
    assert cf.photon_number(v) >= -1e-12
    assert abs(cf.atomic_population(v)) <= 1.0 + 1e-12
    assert abs(cf.qubit_orientation(v)) <= 1.0 + 1e-12
    assert cf.correlation(v) <= 1e-12


@given(valid_params)
@settings(max_examples=200, deadline=None)
def test_regularized_population_matches_literal_property(v):
    if abs(math.cos(v.theta)) <= 1e-6:
        return
    try:
        nrm = cf.normalization(v)
    except DegenerateState:
        return
    literal = (nrm - math.sin(v.theta) ** 2) / (nrm * math.cos(v.theta))
    assert cf.atomic_population(v) == pytest.approx(literal, rel=1e-12, abs=1e-12)


@given(
    st.floats(0.0, 3.0), st.floats(0.0, math.pi),
    st.floats(0.001, 0.999), st.floats(0.1, 3.0), st.floats(0.0, 2.0),
)
@settings(max_examples=200, deadline=None)
def test_weight_mirror_symmetry_property(alpha, theta, p, delta, g):
    m = ModelParams(delta, 1.0, g, 0.0)
    v = VariationalParams(alpha, theta, p)
    mirrored = VariationalParams(alpha, theta, math.sqrt(1.0 - p * p))
    try:
        e1, e2 = cf.energy(m, v), cf.energy(m, mirrored)
    except DegenerateState:
        return
    assert e1 == pytest.approx(e2, rel=1e-10, abs=1e-10)
