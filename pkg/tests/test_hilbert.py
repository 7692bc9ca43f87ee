import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qdist import hilbert, simplex
from qdist.errors import DimensionMismatchError, UnsupportedDimensionError, ValidationError
from qdist.hilbert import (
    MeasurementBasis,
    PureState,
    RotatedBasis2D,
    bhattacharyya_hilbert_max,
    fubini_study_angle,
    hellinger_hilbert_max_sq,
    induced_distance,
    maximize_induced_distance,
    measurement_probabilities,
    overlap,
    random_pure_state,
    rotated_jsd_2d,
    rotated_probabilities_2d,
    wootters_hilbert_max,
)


def pair_with_overlap(c, phase=0.0):
    """Qubit pair with |<a|b>| = c: a = (1, 0), b = (c e^{i phase}, sqrt(1-c^2))."""
    return PureState([1.0, 0.0]), PureState([c * complex(math.cos(phase), math.sin(phase)), math.sqrt(1 - c * c)])


class TestPureState:
    def test_normalization_enforced(self):
        with pytest.raises(ValidationError):
            PureState([1.0, 1.0])

    def test_ray_equality(self):
        a = PureState([0.6, 0.8j])
        assert a == PureState(np.exp(0.7j) * np.array([0.6, 0.8j]))
        assert a != PureState([0.8, 0.6j])

    def test_from_vector(self):
        s = PureState.from_vector([3, 4j])
        assert np.allclose(s.amplitudes, [0.6, 0.8j])


class TestBasis:
    def test_rejects_non_orthonormal(self):
        with pytest.raises(ValidationError):
            MeasurementBasis([[1, 0], [1, 1]])

    def test_random_basis_valid(self):
        b = MeasurementBasis.random(5, seed=3)
        assert b.dim == 5

    @pytest.mark.parametrize("theta", np.linspace(0, 2 * math.pi, 9))
    def test_rotated_basis_orthonormal(self, theta):
        b = RotatedBasis2D(theta).basis()
        np.testing.assert_allclose(b.vectors.conj() @ b.vectors.T, np.eye(2), atol=1e-15)

    def test_rotated_theta_domain(self):
        with pytest.raises(ValidationError):
            RotatedBasis2D(7.0)


class TestMeasurement:
    def test_eigenstate(self):
        b = MeasurementBasis.standard(3)
        assert list(measurement_probabilities(b.state(0), b)) == [1.0, 0.0, 0.0]

    def test_equal_superposition(self):
        b = MeasurementBasis.standard(3)
        s = PureState(np.array([1, 1, 0]) / math.sqrt(2))
        np.testing.assert_allclose(measurement_probabilities(s, b).values, [0.5, 0.5, 0.0], atol=1e-15)

    def test_against_inner_product_oracle(self, rng):
        for n in (2, 4, 6):
            b = MeasurementBasis.random(n, seed=int(rng.integers(1 << 30)))
            s = random_pure_state(n, seed=int(rng.integers(1 << 30)))
            p = measurement_probabilities(s, b).values
            for i in range(n):
                assert p[i] == pytest.approx(float(oracles.abs_inner(b.vectors[i], s.amplitudes) ** 2), abs=1e-14)
            assert abs(p.sum() - 1.0) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            measurement_probabilities(PureState([1, 0]), MeasurementBasis.standard(3))


class TestMaxima:
    def test_overlap_cases(self):
        a = PureState([0.6, 0.8])
        assert overlap(a, PureState(1j * np.array([0.6, 0.8]))) == pytest.approx(1.0, abs=1e-15)
        assert overlap(PureState([1, 0]), PureState([0, 1])) == 0.0
        phi = 0.37
        assert overlap(PureState([1, 0]), PureState([math.cos(phi), math.sin(phi)])) == pytest.approx(math.cos(phi))

    def test_wootters(self):
        a = PureState([0.6, 0.8])
        assert wootters_hilbert_max(a, a) == 0.0
        assert wootters_hilbert_max(PureState([1, 0]), PureState([0, 1])) == pytest.approx(math.pi / 2)
        assert wootters_hilbert_max(*pair_with_overlap(math.cos(0.8), 0.3)) == pytest.approx(0.8, abs=1e-14)

    def test_hellinger(self):
        a = PureState([0.6, 0.8])
        assert hellinger_hilbert_max_sq(a, a) == pytest.approx(0.0, abs=1e-15)
        assert hellinger_hilbert_max_sq(PureState([1, 0]), PureState([0, 1])) == 1.0
        assert hellinger_hilbert_max_sq(*pair_with_overlap(0.6)) == pytest.approx(0.4, abs=1e-15)

    def test_bhattacharyya(self):
        a = PureState([0.6, 0.8])
        assert bhattacharyya_hilbert_max(a, a) == pytest.approx(0.0, abs=1e-15)
        assert bhattacharyya_hilbert_max(PureState([1, 0]), PureState([0, 1])).is_infinite
        assert bhattacharyya_hilbert_max(*pair_with_overlap(0.5)) == pytest.approx(math.log(2), abs=1e-15)


class TestInducedDistance:
    @pytest.mark.parametrize("kind", sorted(simplex.DISTANCES))
    def test_identical_states(self, kind):
        s = random_pure_state(3, seed=1)
        assert induced_distance(kind, MeasurementBasis.random(3, seed=2), s, s) <= 1e-12

    def test_orthogonal_in_own_basis(self):
        b = MeasurementBasis.random(4, seed=5)
        assert induced_distance("wootters", b, b.state(0), b.state(2)) == pytest.approx(math.pi / 2)

    def test_jsd_in_rotated_basis_matches_rotated_jsd(self):
        for phi in (0.1, 0.5, 0.8, 1.3):
            for theta in (0.0, 0.4, 2.0, 5.5):
                s2 = PureState([math.cos(phi), math.sin(phi)])
                v = induced_distance("jsd", RotatedBasis2D(theta).basis(), PureState([1, 0]), s2)
                assert float(v) == pytest.approx(float(rotated_jsd_2d(phi, theta)), abs=1e-14)

    def test_desig_inequality_small_sample(self, rng):
        for n in range(2, 7):
            for _ in range(50):
                b = MeasurementBasis.random(n, seed=int(rng.integers(1 << 30)))
                s1 = random_pure_state(n, seed=int(rng.integers(1 << 30)))
                s2 = random_pure_state(n, seed=int(rng.integers(1 << 30)))
                lhs = np.sum(np.abs(b.vectors.conj() @ s1.amplitudes) * np.abs(b.vectors.conj() @ s2.amplitudes))
                assert lhs >= overlap(s1, s2) - 1e-12
                assert induced_distance("wootters", b, s1, s2) <= wootters_hilbert_max(s1, s2) + 1e-12


class TestMaximize:
    @pytest.mark.parametrize("seed", range(4))
    def test_analytic_maxima_recovered(self, seed):
        s1 = random_pure_state(2, seed=seed)
        s2 = random_pure_state(2, seed=100 + seed)
        for kind, fn in hilbert.ANALYTIC_MAXIMA.items():
            v, basis = maximize_induced_distance(kind, s1, s2)
            assert float(v) == pytest.approx(float(fn(s1, s2)), abs=1e-6)
            assert float(induced_distance(kind, basis, s1, s2)) == pytest.approx(float(v), abs=1e-9)

    def test_prescribed_angle(self):
        phi = 1.1
        s1, s2 = PureState([1, 0]), PureState([math.cos(phi), math.sin(phi)])
        v, _ = maximize_induced_distance("wootters", s1, s2)
        assert float(v) == pytest.approx(phi, abs=1e-6)

    def test_rotated_family_misses_wootters_maximum_beyond_quarter_pi(self):
        # the unbiased family tops out at pi/2 - phi when phi > pi/4
        phi = 1.1
        s1, s2 = PureState([1, 0]), PureState([math.cos(phi), math.sin(phi)])
        v, _ = maximize_induced_distance("wootters", s1, s2, family="rotated")
        assert float(v) == pytest.approx(math.pi / 2 - phi, abs=1e-9)

    def test_jsd_small_angle_scaling(self):
        for phi in (0.05, 0.01):
            s1, s2 = PureState([1, 0]), PureState([math.cos(phi), math.sin(phi)])
            v, _ = maximize_induced_distance("jsd", s1, s2)
            assert float(v) <= phi**2 / 2 + 1e-15
            assert float(v) == pytest.approx(phi**2 / 2, rel=2 * phi**2)

    def test_jsd_full_search_dominates_rotated_family(self):
        s1, s2 = random_pure_state(2, seed=0), random_pure_state(2, seed=100)
        full, _ = maximize_induced_distance("jsd", s1, s2)
        fam, _ = maximize_induced_distance("jsd", s1, s2, family="rotated")
        assert full >= fam - 1e-12

    def test_unsupported_dimension(self):
        with pytest.raises(UnsupportedDimensionError):
            maximize_induced_distance("jsd", random_pure_state(3, 0), random_pure_state(3, 1))


class TestFubiniStudy:
    def test_equivalent_rays(self):
        v = np.array([0.3, 0.4 + 0.1j, -0.2])
        assert fubini_study_angle(v, (2.5 - 1j) * v) == pytest.approx(0.0, abs=1e-15)

    def test_orthogonal(self):
        assert fubini_study_angle([1, 0], [0, 3j]) == pytest.approx(math.pi, abs=1e-15)

    def test_twice_wootters(self, rng):
        for n in (2, 3, 5):
            a, b = random_pure_state(n, int(rng.integers(1 << 30))), random_pure_state(n, int(rng.integers(1 << 30)))
            assert fubini_study_angle(a, b) == pytest.approx(2 * float(wootters_hilbert_max(a, b)), abs=1e-12)
            assert fubini_study_angle(a, b) == pytest.approx(2 * float(mp_acos(oracles.abs_inner(a.amplitudes, b.amplitudes))), abs=1e-12)

    @settings(max_examples=50)
    @given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
           st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
           st.integers(0, 1000))
    def test_scale_invariance(self, lam, mu, seed):
        a, b = random_pure_state(3, seed), random_pure_state(3, seed + 1)
        ref = fubini_study_angle(a, b)
        assert abs(fubini_study_angle(lam * a.amplitudes, mu * b.amplitudes) - ref) <= 1e-10


def mp_acos(x):
    return oracles.mp.acos(min(x, 1))


class TestRotated:
    def test_basis_state_gives_half(self):
        for theta in (0.0, 1.0, 3.0):
            np.testing.assert_allclose(rotated_probabilities_2d(PureState([1, 0]), theta).values, [0.5, 0.5], atol=1e-15)

    def test_real_state_theta_zero(self):
        phi = 0.6
        p = rotated_probabilities_2d(PureState([math.cos(phi), math.sin(phi)]), 0.0)
        assert p.values[0] == pytest.approx((1 + 2 * math.sin(phi) * math.cos(phi)) / 2, abs=1e-15)

    def test_pi_periodic(self):
        s = random_pure_state(2, 9)
        np.testing.assert_allclose(rotated_probabilities_2d(s, 0.7).values,
                                   rotated_probabilities_2d(s, 0.7 + math.pi).values, atol=1e-14)

    def test_closed_form_matches_inner_products_with_phases(self, rng):
        # checks the phase order alpha_2 - alpha_1 against the direct route
        for _ in range(200):
            s = random_pure_state(2, int(rng.integers(1 << 30)))
            theta = float(rng.uniform(0, 2 * math.pi))
            direct = measurement_probabilities(s, RotatedBasis2D(theta).basis()).values
            closed = rotated_probabilities_2d(s, theta).values
            np.testing.assert_allclose(closed, direct, atol=1e-12)

    def test_qubit_only(self):
        with pytest.raises(UnsupportedDimensionError):
            rotated_probabilities_2d(random_pure_state(3, 0), 0.1)

    def test_rotated_jsd_cases(self):
        assert rotated_jsd_2d(0.0, 1.3) == 0.0
        for phi in np.linspace(0, math.pi / 2, 7):
            for theta in np.linspace(0, 2 * math.pi, 11):
                assert math.sqrt(2 * rotated_jsd_2d(phi, theta)) <= phi + 1e-10

    def test_domain(self):
        with pytest.raises(ValidationError):
            rotated_jsd_2d(2.0, 0.1)


class TestRandomState:
    def test_deterministic(self):
        np.testing.assert_array_equal(random_pure_state(4, 11).amplitudes, random_pure_state(4, 11).amplitudes)

    def test_dimension(self):
        with pytest.raises(ValidationError):
            random_pure_state(1, 0)

    def test_haar_first_moment(self):
        rng = np.random.default_rng(5)
        states = hilbert.random_states(rng, 2, 10_000)
        b = MeasurementBasis.random(2, seed=17)
        p1 = np.abs(states @ b.vectors[0].conj()) ** 2
        assert abs(p1.mean() - 0.5) <= 0.02
