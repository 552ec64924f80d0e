import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import eval_genlaguerre, gammaln

from qweyl.errors import DimensionError, SingularScalingError
from qweyl.weyl import (
    ScaledWeylLabel,
    TruncationWarning,
    WeylLabel,
    composition_check,
    composition_convergence,
    displacement,
    scale_label,
    scaled_composition_check,
    scaled_weyl_W,
    symplectic_area,
    symplectic_invariance_check,
    weyl_relation_checks,
    weyl_U,
    weyl_V,
    weyl_W,
)


def exact_displacement(gamma: complex, size: int) -> np.ndarray:
    """<m|exp(gamma c_dag - conj(gamma) c)|n> from the Laguerre closed form."""
    x = abs(gamma) ** 2
    out = np.zeros((size, size), dtype=complex)
    for m in range(size):
        for n in range(size):
            lo, hi = min(m, n), max(m, n)
            base = gamma if m >= n else -gamma.conjugate()
            mag = math.exp(0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) - x / 2)
            out[m, n] = mag * base ** (hi - lo) * eval_genlaguerre(lo, hi - lo, x)
    return out


def arr(m):
    return np.asarray(m)


finite = dict(allow_nan=False, allow_infinity=False)
small_z = st.complex_numbers(max_magnitude=1.0, **finite)


class TestLabels:
    def test_label(self):
        lab = WeylLabel(0.3, -0.2)
        assert lab.z == complex(0.3, -0.2)
        assert WeylLabel.from_complex(1 - 2j) == WeylLabel(1, -2)

    def test_scaling_examples(self):
        assert scale_label(1 + 1j, 1.0).scaled_z == 1 + 1j
        assert scale_label(1 + 1j, 2.0).scaled_z == 2 + 0.5j
        assert scale_label(0.3 - 0.7j, -1.0).scaled_z == -(0.3 - 0.7j)
        with pytest.raises(SingularScalingError):
            scale_label(1j, 0.0)
        with pytest.raises(SingularScalingError):
            ScaledWeylLabel(WeylLabel(1, 1), float("inf"))

    def test_area(self):
        assert symplectic_area(1, 1j) == 1.0
        assert symplectic_area(0.4 + 0.2j, 0.4 + 0.2j) == 0.0


class TestWeylSystem:
    def test_zero_is_identity(self):
        for m in (weyl_U(8, 0.0), weyl_V(8, 0.0), weyl_W(8, 0j)):
            np.testing.assert_allclose(arr(m), np.eye(8), atol=1e-15)

    def test_unitary(self):
        for m in (weyl_U(64, 1.0), weyl_V(64, -1.3), weyl_W(128, 0.8 - 1.1j)):
            a = arr(m)
            assert np.abs(a.conj().T @ a - np.eye(a.shape[0])).max() <= 1e-10

    @pytest.mark.parametrize("z", [0.5, 1j, -0.6 + 0.8j, 1.2 - 0.4j])
    def test_W_matches_exact_displacement(self, z):
        # W(z) = D(i z); the oracle is free of truncation
        n, b = 128, 48
        ref = exact_displacement(1j * z, b)
        np.testing.assert_allclose(arr(weyl_W(n, z))[:b, :b], ref, atol=1e-10)

    def test_single_exponential_diagnostic(self):
        w = arr(weyl_W(128, 0.7 + 0.3j))[:64, :64]
        d = arr(displacement(128, 0.7 + 0.3j))[:64, :64]
        assert np.abs(w - d).max() < 1e-10

    def test_inverse(self):
        z = 0.9 - 0.4j
        prod = arr(weyl_W(128, z)) @ arr(weyl_W(128, -z))
        np.testing.assert_allclose(prod[:64, :64], np.eye(64), atol=1e-10)

    def test_square(self):
        z = 0.5 + 0.25j
        sq = arr(weyl_W(128, z)) @ arr(weyl_W(128, z))
        np.testing.assert_allclose(sq[:64, :64], arr(weyl_W(128, 2 * z))[:64, :64], atol=1e-10)

    def test_relations(self):
        for r in weyl_relation_checks(128, 0.7, -0.4, 0.9, 0.3, 1e-10):
            assert r.passed, r

    def test_relations_converge(self):
        devs = [max(r.deviation for r in weyl_relation_checks(n, 1.0, 0.8, -1.0, 0.9, np.inf))
                for n in (16, 32, 64, 128)]
        assert all(b < a or b < 1e-13 for a, b in zip(devs, devs[1:])), devs

    def test_dimension(self):
        with pytest.raises(DimensionError):
            weyl_W(1, 0.1)

    def test_large_displacement_warns(self):
        with pytest.warns(TruncationWarning):
            weyl_W(32, 2.5)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            weyl_W(128, 2.0)


class TestComposition:
    def test_phase_example(self):
        # Im(conj(1) * i) = 1 so the phase is exp(-i)
        n, b = 128, 64
        lhs = arr(weyl_W(n, 1)) @ arr(weyl_W(n, 1j))
        rhs = cmath.exp(-1j) * arr(weyl_W(n, 1 + 1j))
        assert np.abs(lhs[:b, :b] - rhs[:b, :b]).max() < 1e-6
        assert composition_check(n, 1, 1j, 1e-6).passed

    def test_equal_arguments(self):
        assert composition_check(128, 0.5, 0.5, 1e-10).passed

    def test_tiny_tolerance_fails(self):
        assert not composition_check(64, 0.5, 0.5j, 1e-30).passed

    def test_convergence(self):
        pts = [0.0, 1.0, 1j, -0.6 + 0.8j, 0.5 - 0.5j]
        devs = [d for _, d in composition_convergence(pts, (16, 32, 64, 128))]
        assert all(b < a for a, b in zip(devs, devs[1:])), devs
        assert devs[-1] < 1e-6

    @given(small_z, small_z)
    def test_random_pairs(self, z1, z2):
        assert composition_check(128, z1, z2, 1e-8).passed


class TestScaledFamily:
    def test_reduces_to_W(self):
        z = 0.4 - 0.9j
        np.testing.assert_array_equal(arr(scaled_weyl_W(32, scale_label(z, 1.0))), arr(weyl_W(32, z)))

    def test_example(self):
        r = scaled_composition_check(128, 0.5, 0.5j, 2.0, 1e-6)
        assert r.passed, r

    def test_scaled_phase_is_unscaled_phase(self):
        z1, z2, rho = 0.5, 0.5j, 2.0
        s1, s2 = scale_label(z1, rho), scale_label(z2, rho)
        lhs = arr(scaled_weyl_W(128, s1)) @ arr(scaled_weyl_W(128, s2))
        rhs = arr(scaled_weyl_W(128, scale_label(z1 + z2, rho)))
        ratio = lhs[:8, :8][np.abs(rhs[:8, :8]) > 1e-3] / rhs[:8, :8][np.abs(rhs[:8, :8]) > 1e-3]
        np.testing.assert_allclose(ratio, cmath.exp(-0.25j), atol=1e-10)

    @pytest.mark.filterwarnings("ignore::qweyl.weyl.TruncationWarning")
    def test_labels_are_distinct(self):
        a = arr(scaled_weyl_W(64, scale_label(1.0, 2.0)))
        b = arr(scaled_weyl_W(64, scale_label(1.0, 0.5)))
        assert np.abs(a - b).max() > 1e-2

    @pytest.mark.parametrize("rho", [0.5, 2.0, -1.5])
    def test_convergence(self, rho):
        pts = [0.0, 1.0, 1j, -0.6 + 0.8j, 0.5 - 0.5j]
        devs = [d for _, d in composition_convergence(pts, (32, 64, 128), rho=rho)]
        assert all(b < a for a, b in zip(devs, devs[1:])), devs
        assert devs[-1] < 1e-6


class TestSymplecticInvariance:
    def test_example(self):
        r = symplectic_invariance_check(1, 1j, 3.0)
        assert r.passed and r.deviation == 0.0

    def test_degenerate(self):
        for rho in (0.1, 1.0, 7.0):
            assert symplectic_invariance_check(0.3 + 0.4j, 0.3 + 0.4j, rho).passed

    @given(small_z, small_z, st.floats(0.1, 10.0))
    def test_random(self, z1, z2, rho):
        assert symplectic_invariance_check(z1, z2, rho).passed
