"""Minimal rigid-body math: rotations, poses, twists, exp/log maps, Bezier curves.

All rotations are 3x3 proper orthonormal matrices, translations are meters,
twists are (linear m/s, angular rad/s) pairs. Functions are pure and never
mutate their inputs, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Below this rotation angle the axis is ill-conditioned; default to (1,0,0).
ANGLE_EPS = 1e-7
# Above pi - NEAR_PI_EPS the (R - R^T) axis formula degrades; switch to the
# largest-diagonal extraction.
_NEAR_PI_EPS = 1e-4
# Orthonormality drift tolerance before compose() re-projects the rotation.
_ORTHO_DRIFT = 1e-9
# Taylor-series switch point for the sin/cos coefficient functions.
_SMALL_ANGLE = 1e-4


@dataclass(frozen=True)
class Pose:
    """Rigid transform: rotation (3x3, det +1) plus translation (3,)."""

    rotation: np.ndarray
    translation: np.ndarray

    @staticmethod
    def identity() -> "Pose":
        return Pose(np.eye(3), np.zeros(3))

    @staticmethod
    def from_translation(t) -> "Pose":
        return Pose(np.eye(3), np.asarray(t, dtype=float))

    @staticmethod
    def from_rt(rotation, translation) -> "Pose":
        return Pose(np.asarray(rotation, dtype=float), np.asarray(translation, dtype=float))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Transform one point (3,) or a stack of points (n, 3)."""
        p = np.asarray(points, dtype=float)
        return p @ self.rotation.T + self.translation

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m


@dataclass(frozen=True)
class Twist:
    """Spatial velocity: linear (m/s) and angular (rad/s) 3-vectors."""

    linear: np.ndarray
    angular: np.ndarray

    @staticmethod
    def zero() -> "Twist":
        return Twist(np.zeros(3), np.zeros(3))

    @staticmethod
    def from_array(u) -> "Twist":
        u = np.asarray(u, dtype=float)
        return Twist(u[:3].copy(), u[3:6].copy())

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.linear, self.angular])

    def scaled(self, factor: float) -> "Twist":
        return Twist(self.linear * factor, self.angular * factor)

    def plus(self, other: "Twist") -> "Twist":
        return Twist(self.linear + other.linear, self.angular + other.angular)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.linear, self.linear) + np.dot(self.angular, self.angular)))


@dataclass(frozen=True)
class AxisAngle:
    """Unit rotation axis and angle in [0, pi]."""

    axis: np.ndarray
    angle: float

    def as_rotvec(self) -> np.ndarray:
        return self.axis * self.angle


@dataclass(frozen=True)
class BezierCurve:
    """Planar Bezier curve of order n with n+1 control points (meters)."""

    control_points: np.ndarray  # (n+1, 2)

    def __post_init__(self):
        pts = np.asarray(self.control_points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("control_points must be (n+1, 2) with n >= 1")
        object.__setattr__(self, "control_points", pts)

    @property
    def order(self) -> int:
        return self.control_points.shape[0] - 1


def skew(v: np.ndarray) -> np.ndarray:
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def rotation_is_valid(r: np.ndarray, tol: float = 1e-9) -> bool:
    return (
        np.max(np.abs(r.T @ r - np.eye(3))) <= tol
        and abs(np.linalg.det(r) - 1.0) <= tol
    )


def _project_rotation(r: np.ndarray) -> np.ndarray:
    # Polar factor via SVD; sign fix keeps det +1.
    u, _, vt = np.linalg.svd(r)
    d = np.sign(np.linalg.det(u @ vt))
    return u @ np.diag([1.0, 1.0, d]) @ vt


def compose(a: Pose, b: Pose) -> Pose:
    """Pose product a*b (apply b first, then a)."""
    r = a.rotation @ b.rotation
    if np.max(np.abs(r.T @ r - np.eye(3))) > _ORTHO_DRIFT:
        r = _project_rotation(r)
    return Pose(r, a.rotation @ b.translation + a.translation)


def inverse(p: Pose) -> Pose:
    rt = p.rotation.T
    return Pose(rt, -(rt @ p.translation))


def rotation_about_axis(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues rotation about a unit axis."""
    k = skew(np.asarray(axis, dtype=float))
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


def _exp_coeffs(theta: float) -> tuple[float, float, float]:
    # a = sin(t)/t, b = (1-cos(t))/t^2, c = (t-sin(t))/t^3, series for small t.
    if theta < _SMALL_ANGLE:
        t2 = theta * theta
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0
        c = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / (theta * theta)
        c = (theta - math.sin(theta)) / (theta ** 3)
    return a, b, c


def exp_twist(t: Twist, dt: float) -> Pose:
    """Exact screw displacement of twist t held for dt seconds.

    The rotation is the Rodrigues exponential of omega*dt and the translation
    is V(omega*dt) @ (v*dt), so the result depends only on the product
    twist*dt: exp_twist(a*w, dt/a) equals exp_twist(w, dt).
    """
    if dt < 0:
        raise ValueError("dt must be >= 0")
    phi = t.angular * dt
    rho = t.linear * dt
    theta = float(np.linalg.norm(phi))
    k = skew(phi)
    k2 = k @ k
    a, b, c = _exp_coeffs(theta)
    r = np.eye(3) + a * k + b * k2
    v_mat = np.eye(3) + b * k + c * k2
    return Pose(r, v_mat @ rho)


def log_rotation(r: np.ndarray) -> AxisAngle:
    """Axis-angle of a rotation matrix, angle in [0, pi].

    Angle comes from atan2(|R - R^T|/2, (tr(R)-1)/2), equal to
    acos((tr(R)-1)/2) but stable at both ends of the range. Near pi the axis
    is rebuilt from the column of R + I with the largest diagonal entry; below
    ANGLE_EPS the axis defaults to (1,0,0).
    """
    s_vec = 0.5 * np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    sin_theta = float(np.linalg.norm(s_vec))
    cos_theta = 0.5 * (float(np.trace(r)) - 1.0)
    theta = math.atan2(sin_theta, cos_theta)

    if theta < ANGLE_EPS:
        return AxisAngle(np.array([1.0, 0.0, 0.0]), theta)

    if theta > math.pi - _NEAR_PI_EPS:
        # R ~ 2*ww^T - I: recover |w_i| from the dominant diagonal entry and
        # the remaining components from the symmetric off-diagonals.
        one_minus_cos = 1.0 - cos_theta
        i = int(np.argmax(np.diag(r)))
        j, k = (i + 1) % 3, (i + 2) % 3
        w = np.empty(3)
        w[i] = math.sqrt(max((r[i, i] - cos_theta) / one_minus_cos, 0.0))
        w[j] = (r[i, j] + r[j, i]) / (2.0 * one_minus_cos * w[i])
        w[k] = (r[i, k] + r[k, i]) / (2.0 * one_minus_cos * w[i])
        w /= np.linalg.norm(w)
        if sin_theta > 1e-12 and float(np.dot(w, s_vec)) < 0.0:
            w = -w
        return AxisAngle(w, theta)

    return AxisAngle(s_vec / sin_theta, theta)


def _rotation_vector(r: np.ndarray) -> np.ndarray:
    """Sign-correct rotation vector; unlike the AxisAngle convention this
    keeps the true (tiny) axis direction at small angles."""
    s_vec = 0.5 * np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    sin_theta = float(np.linalg.norm(s_vec))
    cos_theta = 0.5 * (float(np.trace(r)) - 1.0)
    theta = math.atan2(sin_theta, cos_theta)
    if theta > math.pi - _NEAR_PI_EPS:
        return log_rotation(r).as_rotvec()
    if theta < _SMALL_ANGLE:
        # theta/sin(theta) expanded around zero
        t2 = theta * theta
        return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * s_vec
    return (theta / sin_theta) * s_vec


def log_twist(p: Pose) -> Twist:
    """Unit-time twist whose screw displacement reproduces p.

    Inverse of exp_twist(., 1.0): the angular part is the rotation log and
    the linear part is V(phi)^-1 applied to the translation.
    """
    phi = _rotation_vector(p.rotation)
    theta = float(np.linalg.norm(phi))
    k = skew(phi)
    k2 = k @ k
    if theta < _SMALL_ANGLE:
        t2 = theta * theta
        coeff = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    else:
        coeff = 1.0 / (theta * theta) - (1.0 + math.cos(theta)) / (
            2.0 * theta * math.sin(theta)
        )
    v_inv = np.eye(3) - 0.5 * k + coeff * k2
    return Twist(v_inv @ p.translation, phi)


def bezier_eval(c: BezierCurve, s: float) -> np.ndarray:
    """Evaluate B(s) = sum_i b_i C(n,i) s^i (1-s)^(n-i) for s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"bezier parameter {s} outside [0, 1]")
    n = c.order
    u = 1.0 - s
    out = np.zeros(2)
    for i in range(n + 1):
        out += math.comb(n, i) * (s ** i) * (u ** (n - i)) * c.control_points[i]
    return out


def bezier_derivative(c: BezierCurve, s: float) -> np.ndarray:
    """dB/ds via the order-reduction formula: n * sum (b_{i+1}-b_i) * B_{n-1,i}."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"bezier parameter {s} outside [0, 1]")
    n = c.order
    diffs = np.diff(c.control_points, axis=0)
    u = 1.0 - s
    out = np.zeros(2)
    for i in range(n):
        out += math.comb(n - 1, i) * (s ** i) * (u ** (n - 1 - i)) * diffs[i]
    return n * out


def bezier_second_derivative(c: BezierCurve, s: float) -> np.ndarray:
    """d2B/ds2 via double order reduction; zero for linear curves."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"bezier parameter {s} outside [0, 1]")
    n = c.order
    if n < 2:
        return np.zeros(2)
    dd = np.diff(c.control_points, n=2, axis=0)
    u = 1.0 - s
    out = np.zeros(2)
    for i in range(n - 1):
        out += math.comb(n - 2, i) * (s ** i) * (u ** (n - 2 - i)) * dd[i]
    return n * (n - 1) * out


def bezier_sample(c: BezierCurve, resolution: int) -> np.ndarray:
    """Polyline of `resolution` points at uniform parameter spacing."""
    s = np.linspace(0.0, 1.0, resolution)
    n = c.order
    # Bernstein basis, vectorized over samples.
    basis = np.stack(
        [math.comb(n, i) * (s ** i) * ((1.0 - s) ** (n - i)) for i in range(n + 1)],
        axis=1,
    )
    return basis @ c.control_points


def _segments_intersect(p0, p1, q0, q1) -> np.ndarray:
    """Vectorized proper/improper intersection test for segment batches."""

    def orient(a, b, c):
        return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (
            c[:, 0] - a[:, 0]
        )

    d1 = orient(q0, q1, p0)
    d2 = orient(q0, q1, p1)
    d3 = orient(p0, p1, q0)
    d4 = orient(p0, p1, q1)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0)) & (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)

    def on_seg(a, b, c):
        return (
            (np.minimum(a[:, 0], b[:, 0]) <= c[:, 0])
            & (c[:, 0] <= np.maximum(a[:, 0], b[:, 0]))
            & (np.minimum(a[:, 1], b[:, 1]) <= c[:, 1])
            & (c[:, 1] <= np.maximum(a[:, 1], b[:, 1]))
        )

    touch = (
        ((d1 == 0) & on_seg(q0, q1, p0))
        | ((d2 == 0) & on_seg(q0, q1, p1))
        | ((d3 == 0) & on_seg(p0, p1, q0))
        | ((d4 == 0) & on_seg(p0, p1, q1))
    )
    return proper | touch


def bezier_self_intersects(c: BezierCurve, resolution: int = 512) -> bool:
    """True iff the polyline sampled at `resolution` points self-intersects.

    Only non-adjacent segment pairs are tested; shared endpoints between
    neighbors do not count.
    """
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    pts = bezier_sample(c, resolution)
    a0 = pts[:-1]
    a1 = pts[1:]
    m = len(a0)
    idx_i, idx_j = np.triu_indices(m, k=2)
    if len(idx_i) == 0:
        return False
    hits = _segments_intersect(a0[idx_i], a1[idx_i], a0[idx_j], a1[idx_j])
    return bool(np.any(hits))
