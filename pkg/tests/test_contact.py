import math

import numpy as np
import pytest

from tacbench.contact import (
    ContactState,
    SensorConfig,
    calibrate_epsilon,
    check_slip,
    correspondences,
    deviation_stats,
    rest_layout,
    sense,
)
from tacbench.geom import Pose, rotation_about_axis

from helpers import rot_x


def make_state(ids, positions, rest=None):
    ids = np.asarray(ids)
    positions = np.asarray(positions, dtype=float)
    rest = positions.copy() if rest is None else np.asarray(rest, dtype=float)
    return ContactState(ids, positions, rest)


class TestSensorConfig:
    def test_invariants(self):
        with pytest.raises(ValueError):
            SensorConfig(epsilon=2e-3, d0=1e-3)  # d0 < epsilon
        with pytest.raises(ValueError):
            SensorConfig(gamma=0.0)
        with pytest.raises(ValueError):
            SensorConfig(grid_rows=1, grid_cols=2)
        with pytest.raises(ValueError):
            SensorConfig(pads=3)


class TestSense:
    def test_identity_full_grid(self):
        cfg = SensorConfig()  # d0 = 1 mm, epsilon = 0.5 mm
        state = sense(Pose.identity(), cfg, 0)
        assert len(state) == 64
        assert np.allclose(state.positions, state.rest_positions)

    def test_uniform_translation(self):
        cfg = SensorConfig()
        rel = Pose.from_translation([0.0, 3e-4, 0.0])
        state = sense(rel, cfg, 0)
        assert len(state) == 64
        dev = state.positions - state.rest_positions
        assert np.allclose(dev, [0.0, 3e-4, 0.0], atol=1e-15)

    def test_small_rotation_field(self):
        # Rigid attachment: measured position is exactly rel applied to rest.
        cfg = SensorConfig()
        rel = Pose(rot_x(math.radians(1.0)), np.zeros(3))
        state = sense(rel, cfg, 0)
        expected = rest_layout(cfg) @ rel.rotation.T
        active = np.abs(expected[:, 0]) >= cfg.epsilon
        assert np.array_equal(state.marker_ids, np.flatnonzero(active))
        assert np.allclose(state.positions, expected[active], atol=1e-15)

    def test_epsilon_filter(self):
        # All reported points satisfy |x| >= epsilon, all excluded ones fail it.
        cfg = SensorConfig(noise_sigma=2e-4)
        rel = Pose(rotation_about_axis(np.array([0.0, 0.0, 1.0]), 0.3), np.zeros(3))
        state = sense(rel, cfg, 42)
        assert np.all(np.abs(state.positions[:, 0]) >= cfg.epsilon)
        measured = rest_layout(cfg) @ rel.rotation.T
        rng = np.random.default_rng(42)
        measured = measured + rng.normal(0.0, cfg.noise_sigma, measured.shape)
        excluded = np.setdiff1d(np.arange(64), state.marker_ids)
        assert np.all(np.abs(measured[excluded, 0]) < cfg.epsilon)

    def test_determinism(self):
        cfg = SensorConfig(noise_sigma=1e-4)
        rel = Pose.from_translation([1e-4, -2e-4, 5e-5])
        a = sense(rel, cfg, 123)
        b = sense(rel, cfg, 123)
        assert np.array_equal(a.marker_ids, b.marker_ids)
        assert a.positions.tobytes() == b.positions.tobytes()

    def test_noise_statistics(self):
        # >= 1e5 scalar samples: mean within 3 sigma/sqrt(N), sd within 5%.
        cfg = SensorConfig(noise_sigma=1e-4)
        devs = []
        k = 0
        while len(devs) * 64 < 1e5:
            state = sense(Pose.identity(), cfg, [99, k])
            devs.append(state.positions - state.rest_positions)
            k += 1
        d = np.concatenate(devs).ravel()
        assert abs(d.mean()) < 3.0 * cfg.noise_sigma / math.sqrt(len(d))
        assert abs(d.std() - cfg.noise_sigma) / cfg.noise_sigma < 0.05

    def test_two_pads(self):
        cfg = SensorConfig(pads=2)
        state = sense(Pose.identity(), cfg, 0)
        assert len(state) == 128
        assert np.allclose(np.abs(state.rest_positions[:, 0]), cfg.d0)

    def test_empty_state_is_legal(self):
        cfg = SensorConfig()
        rel = Pose.from_translation([0.1, 0.0, 0.0])  # pulled far off along normal?
        # pushing all markers to x ~ 0.101 keeps them "active"; instead pull to x=0
        rel = Pose.from_translation([-cfg.d0, 0.0, 0.0])
        state = sense(rel, cfg, 0)
        assert len(state) == 0


class TestDeviationStats:
    def test_zero(self):
        cfg = SensorConfig()
        a = sense(Pose.identity(), cfg, 0)
        assert deviation_stats(a, a) == (0.0, 0.0)

    def test_uniform_translation(self):
        cfg = SensorConfig()
        a = sense(Pose.identity(), cfg, 0)
        b = sense(Pose.from_translation([0.0, 3e-4, 0.0]), cfg, 0)
        mean, mx = deviation_stats(a, b)
        assert abs(mean - 3e-4) < 1e-15
        assert abs(mx - 3e-4) < 1e-15

    def test_half_shifted(self):
        ids = np.arange(10)
        rest = np.zeros((10, 3))
        rest[:, 0] = 1.0
        moved = rest.copy()
        moved[5:, 1] += 1e-3
        a = make_state(ids, rest)
        b = make_state(ids, moved, rest)
        mean, mx = deviation_stats(a, b)
        assert abs(mean - 0.5e-3) < 1e-15
        assert abs(mx - 1e-3) < 1e-15

    def test_no_correspondences(self):
        a = make_state([0, 1, 2], np.ones((3, 3)))
        b = make_state([3, 4, 5], np.ones((3, 3)))
        with pytest.raises(ValueError, match="no correspondences"):
            deviation_stats(a, b)


class TestCheckSlip:
    def test_threshold_strict(self):
        cfg = SensorConfig()
        a = sense(Pose.identity(), cfg, 0)
        below = sense(Pose.from_translation([0.0, 0.99 * cfg.gamma, 0.0]), cfg, 0)
        above = sense(Pose.from_translation([0.0, 1.01 * cfg.gamma, 0.0]), cfg, 0)
        assert not check_slip(a, a, cfg)
        assert not check_slip(a, below, cfg)
        assert check_slip(a, above, cfg)


class TestCorrespondences:
    def test_identical(self):
        cfg = SensorConfig()
        a = sense(Pose.identity(), cfg, 0)
        k = correspondences(a, a)
        assert len(k) == len(a)

    def test_disjoint(self):
        a = make_state([0, 1], np.zeros((2, 3)))
        b = make_state([2, 3], np.zeros((2, 3)))
        assert len(correspondences(a, b)) == 0

    def test_partial_overlap(self):
        cfg = SensorConfig()
        a = sense(Pose.identity(), cfg, 0)
        keep = np.ones(64, dtype=bool)
        keep[[3, 17, 21, 40, 63]] = False
        b = ContactState(a.marker_ids[keep], a.positions[keep], a.rest_positions[keep])
        k = correspondences(a, b)
        assert len(k) == 59
        assert np.all(np.diff(k.marker_ids) > 0)


class TestCalibrateEpsilon:
    def test_uniform_field(self):
        eps = calibrate_epsilon(np.full(64, 7e-4), 64)
        assert eps == 7e-4

    def test_decreasing_field(self):
        field = np.linspace(1e-3, 1e-5, 64)
        eps = calibrate_epsilon(field, 9)
        assert eps == np.sort(field)[::-1][8]
        assert np.sum(field >= eps) == 9

    def test_tie_error_lists_counts(self):
        field = np.concatenate([np.full(7, 1e-3), np.full(4, 5e-4), np.full(53, 1e-5)])
        with pytest.raises(ValueError, match="achievable"):
            calibrate_epsilon(field, 9)

    def test_minimum_target(self):
        with pytest.raises(ValueError):
            calibrate_epsilon(np.ones(64), 2)
