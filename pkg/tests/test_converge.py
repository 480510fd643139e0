import math

import numpy as np
import pytest

from amoebatrop import (FamilySample, PointCloud, Window, corner_locus_2d,
                        directed_hausdorff, hausdorff, hausdorff_to_complex,
                        kuratowski_lsc_check, kuratowski_usc_check, rate_fit,
                        sample_amoeba)
from amoebatrop.amoeba import CloudMeta
from amoebatrop.converge import (directed_cloud_to_complex,
                                 directed_complex_to_cloud)

from helpers import brute_force_hausdorff


def _cloud(points, source="unit"):
    return PointCloud(2, points, CloudMeta(source=source))


class TestHausdorff:
    def test_identical_clouds(self):
        c = _cloud([(0.0, 0.0), (1.0, 2.0)])
        assert hausdorff(c, c) == 0

    def test_three_four_five(self):
        assert hausdorff(_cloud([(0.0, 0.0)]), _cloud([(3.0, 4.0)])) == 5

    def test_asymmetric_envelope(self):
        a = _cloud([(0.0, 0.0), (1.0, 0.0)])
        b = _cloud([(0.0, 0.0)])
        assert directed_hausdorff(a, b) == 1
        assert directed_hausdorff(b, a) == 0
        assert hausdorff(a, b) == 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hausdorff(_cloud(np.empty((0, 2))), _cloud([(0.0, 0.0)]))

    def test_matches_brute_force(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a = rng.uniform(-5, 5, (rng.integers(1, 12), 2))
            b = rng.uniform(-5, 5, (rng.integers(1, 12), 2))
            assert hausdorff(a, b) == pytest.approx(brute_force_hausdorff(a, b), abs=1e-12)

    def test_pseudometric_properties(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            a = rng.uniform(-3, 3, (5, 2))
            b = rng.uniform(-3, 3, (6, 2))
            c = rng.uniform(-3, 3, (4, 2))
            assert hausdorff(a, b) == hausdorff(b, a)
            assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12

    def test_scaling_compatibility(self):
        rng = np.random.default_rng(3)
        for rho in (0.25, 1.5, 3.0):
            a = rng.uniform(-3, 3, (7, 2))
            b = rng.uniform(-3, 3, (5, 2))
            assert hausdorff(a * rho, b * rho) == pytest.approx(rho * hausdorff(a, b), abs=1e-12)


class TestHausdorffToComplex:
    @pytest.fixture
    def line_complex(self, line):
        return corner_locus_2d(line.trivial_tropicalization())

    def test_dense_cloud_on_complex(self, line_complex):
        window = Window.square(-5, 5)
        samples = line_complex.sample_points(window.box(), 0.01)
        cloud = _cloud(samples)
        assert hausdorff_to_complex(cloud, line_complex, window) <= 0.02

    def test_singleton_cloud(self, line_complex):
        # Forward part: distance from (1,1) to the complex is 1.  Backward
        # part: the clipped diagonal ray ends at (-5,-5), at distance 6*sqrt(2).
        window = Window.square(-5, 5)
        cloud = _cloud([(1.0, 1.0)])
        assert directed_cloud_to_complex(cloud, line_complex, window) == pytest.approx(1.0, abs=1e-12)
        back = directed_complex_to_cloud(cloud, line_complex, window)
        assert back == pytest.approx(6 * math.sqrt(2), abs=1e-2)
        assert hausdorff_to_complex(cloud, line_complex, window) == pytest.approx(back, abs=1e-12)

    def test_grid_refinement_bound(self, line_complex, line):
        window = Window.square(-2, 2)
        cloud = sample_amoeba(line, 2000, [(-2, 2)], seed=5)
        coarse = hausdorff_to_complex(cloud, line_complex, window, grid=256)
        fine = hausdorff_to_complex(cloud, line_complex, window, grid=512)
        assert abs(coarse - fine) <= window.diagonal() / 256

    def test_complex_outside_window(self, line_complex):
        with pytest.raises(ValueError, match="window"):
            hausdorff_to_complex(_cloud([(8.0, 8.0)]), line_complex,
                                 Window((7.5, 7.5), (8.5, 8.5)))


class TestWindow:
    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            Window((0.0,), (0.0,))

    def test_contains_and_mask(self):
        w = Window.square(-1, 1)
        assert w.contains((0, 0.5)) and not w.contains((0, 2))
        mask = w.mask(np.array([[0.0, 0.0], [3.0, 0.0]]))
        assert mask.tolist() == [True, False]


class TestKuratowski:
    def _family(self, clouds):
        return FamilySample(list(clouds))

    def test_constant_family_passes_both(self):
        cloud = _cloud([(0.0, 0.0), (1.0, 1.0)])
        fam = self._family((b, cloud) for b in (0.0, 0.1, 0.2, 0.3))
        for eps in (0.01, 0.5):
            for delta in (0.05, 1.0):
                assert kuratowski_usc_check(fam, 0, eps, delta)
                assert kuratowski_lsc_check(fam, 0, eps, delta)

    def test_lipschitz_motion(self):
        fam = self._family((b, _cloud([(b, 0.0)])) for b in np.linspace(0, 1, 11))
        # Fibers within delta of b0 move at most delta < eps/2.
        assert kuratowski_usc_check(fam, 5, eps=0.25, delta=0.1)
        assert kuratowski_lsc_check(fam, 5, eps=0.25, delta=0.1)

    def test_sudden_far_point_breaks_usc(self):
        clouds = [(0.0, _cloud([(0.0, 0.0)])),
                  (0.01, _cloud([(0.0, 0.0), (5.0, 5.0)])),
                  (0.02, _cloud([(0.0, 0.0)]))]
        fam = self._family(clouds)
        assert not kuratowski_usc_check(fam, 0, eps=0.5, delta=0.05)
        assert kuratowski_lsc_check(fam, 0, eps=0.5, delta=0.05)

    def test_lost_component_breaks_lsc(self):
        clouds = [(0.0, _cloud([(0.0, 0.0), (4.0, 4.0)])),
                  (0.01, _cloud([(0.0, 0.0)])),
                  (0.02, _cloud([(0.0, 0.0)]))]
        fam = self._family(clouds)
        assert not kuratowski_lsc_check(fam, 0, eps=0.5, delta=0.05)
        assert kuratowski_usc_check(fam, 0, eps=0.5, delta=0.05)

    def test_lsc_monotone_in_eps(self):
        rng = np.random.default_rng(9)
        clouds = [(b, _cloud(rng.uniform(-1, 1, (8, 2)))) for b in (0.0, 0.02, 0.04)]
        fam = self._family(clouds)
        granted = None
        for eps in (0.05, 0.1, 0.5, 1.0, 4.0):
            ok = kuratowski_lsc_check(fam, 0, eps, delta=0.05)
            if granted is not None and granted:
                assert ok
            granted = ok

    def test_parameters_must_be_monotone(self):
        cloud = _cloud([(0.0, 0.0)])
        with pytest.raises(ValueError):
            FamilySample([(0.0, cloud), (0.2, cloud), (0.1, cloud)])


class TestRateFit:
    def test_identity_rate(self):
        rhos = (0.2, 0.1, 0.05, 0.025)
        slope, intercept = rate_fit(rhos, rhos)
        assert slope == pytest.approx(1.0, abs=1e-12)
        assert intercept == pytest.approx(0.0, abs=1e-12)

    def test_prefactor_lands_in_intercept(self):
        rhos = (0.4, 0.2, 0.1)
        slope, intercept = rate_fit(rhos, tuple(2 * r for r in rhos))
        assert slope == pytest.approx(1.0, abs=1e-12)
        assert intercept == pytest.approx(math.log(2), abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            rate_fit((0.2, 0.1, 0.05), (1.0, -1.0, 0.5))

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            rate_fit((0.2, 0.1), (1.0, 0.5))
