"""Shared builders for tests: elementary rotations and random rigid data."""

import math

import numpy as np

from tacbench.geom import Pose, Twist, rotation_about_axis


def rot_x(angle: float) -> np.ndarray:
    return rotation_about_axis(np.array([1.0, 0.0, 0.0]), angle)


def rot_y(angle: float) -> np.ndarray:
    return rotation_about_axis(np.array([0.0, 1.0, 0.0]), angle)


def rot_z(angle: float) -> np.ndarray:
    return rotation_about_axis(np.array([0.0, 0.0, 1.0]), angle)


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_rotation(rng) -> np.ndarray:
    return rotation_about_axis(random_unit(rng), rng.uniform(0.0, math.pi))


def random_pose(rng, translation_scale: float = 1.0) -> Pose:
    return Pose(random_rotation(rng), rng.normal(scale=translation_scale, size=3))


def random_twist(rng, v_scale: float = 1.0, w_scale: float = 1.0) -> Twist:
    return Twist(rng.normal(scale=v_scale, size=3), rng.normal(scale=w_scale, size=3))


def pose_allclose(a: Pose, b: Pose, tol: float = 1e-9) -> bool:
    return (
        np.max(np.abs(a.rotation - b.rotation)) <= tol
        and np.max(np.abs(a.translation - b.translation)) <= tol
    )
