"""1-DOF articulated-object paths, quasi-static projection, suite generation.

A model maps a scalar path parameter to the handle pose: prismatic paths use
meters, revolute and helical use radians about the joint axis, Bezier tracks
use the curve parameter in [0, 1]. The handle responds to the gripper quasi-
statically: each step it moves to the parameter value (within a bounded
window) that minimizes the contact spring energy of the attached markers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import (
    BezierCurve,
    Pose,
    bezier_derivative,
    bezier_sample,
    bezier_self_intersects,
    compose,
    rotation_about_axis,
    skew,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
PROJECTION_TOL = 1e-9  # absolute tolerance on the projected parameter

SUCCESS_REVOLUTE = math.radians(60.0)   # rad
SUCCESS_PRISMATIC = 0.250               # m
SUCCESS_BEZIER = 1.0 - 1e-3             # curve parameter


def _frame_from_tangent(tangent: np.ndarray, normal: np.ndarray) -> np.ndarray:
    """Right-handed frame with x along the path tangent and z along `normal`."""
    x = tangent / np.linalg.norm(tangent)
    z = normal / np.linalg.norm(normal)
    y = np.cross(z, x)
    return np.column_stack([x, y, z])


@dataclass(frozen=True)
class PathState:
    s: float


@dataclass(frozen=True)
class ArticulationModel:
    """Base for the four path kinds; subclasses fill in the geometry."""

    object_id: str
    orientation_mode: str = "path_tangent"  # or "fixed"

    kind = "abstract"

    @property
    def domain(self) -> tuple[float, float]:
        raise NotImplementedError

    def pose_at(self, s: float) -> Pose:
        raise NotImplementedError

    def position_derivative(self, s: float) -> np.ndarray:
        """d(handle position)/ds in world coordinates."""
        raise NotImplementedError

    def min_path_speed(self) -> float:
        """Lower bound of |d position / ds| over the domain."""
        raise NotImplementedError

    def success_s(self) -> float:
        raise NotImplementedError

    def efficiency_scale(self) -> float:
        """Progress normalization: 250 mm, 60 deg, or the full parameter."""
        raise NotImplementedError

    @property
    def category(self) -> str:
        return self.kind

    def start_tangent(self) -> np.ndarray:
        d = self.position_derivative(self.domain[0])
        return d / np.linalg.norm(d)

    def check_domain(self, s: float) -> None:
        lo, hi = self.domain
        if not lo <= s <= hi:
            raise ValueError(f"path parameter {s} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class PrismaticPath(ArticulationModel):
    origin: np.ndarray = field(default_factory=lambda: np.zeros(3))
    axis: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    travel: float = 0.35
    orientation_mode: str = "fixed"

    kind = "prismatic"

    def __post_init__(self):
        a = np.asarray(self.axis, dtype=float)
        object.__setattr__(self, "axis", a / np.linalg.norm(a))
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(
            self, "_rot", _frame_from_tangent(self.axis, np.array([0.0, 0.0, 1.0]))
            if abs(self.axis[2]) < 0.99
            else np.eye(3),
        )

    @property
    def domain(self):
        return (0.0, self.travel)

    def pose_at(self, s: float) -> Pose:
        self.check_domain(s)
        return Pose(self._rot, self.origin + s * self.axis)

    def position_derivative(self, s: float) -> np.ndarray:
        return self.axis.copy()

    def min_path_speed(self) -> float:
        return 1.0

    def success_s(self) -> float:
        return SUCCESS_PRISMATIC

    def efficiency_scale(self) -> float:
        return SUCCESS_PRISMATIC


@dataclass(frozen=True)
class RevolutePath(ArticulationModel):
    center: np.ndarray = field(default_factory=lambda: np.array([0.0, -0.3, 0.0]))
    axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    radius: float = 0.3
    start_angle: float = math.pi / 2.0  # polar angle of the handle around axis
    sweep: float = 2.0
    orientation_mode: str = "path_tangent"

    kind = "revolute"

    def __post_init__(self):
        a = np.asarray(self.axis, dtype=float)
        object.__setattr__(self, "axis", a / np.linalg.norm(a))
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        # In-plane basis for the circle.
        ref = np.array([0.0, 0.0, 1.0]) if abs(self.axis[2]) < 0.99 else np.array([1.0, 0.0, 0.0])
        e1 = np.cross(ref, self.axis)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(self.axis, e1)
        radial = math.cos(self.start_angle) * e1 + math.sin(self.start_angle) * e2
        p0 = self.center + self.radius * radial
        tangent = np.cross(self.axis, radial)
        r0 = _frame_from_tangent(tangent, self.axis)
        object.__setattr__(self, "_p0", p0)
        object.__setattr__(self, "_r0", r0)

    @property
    def domain(self):
        return (0.0, self.sweep)

    def pose_at(self, s: float) -> Pose:
        self.check_domain(s)
        rot = rotation_about_axis(self.axis, s)
        pos = self.center + rot @ (self._p0 - self.center)
        if self.orientation_mode == "path_tangent":
            return Pose(rot @ self._r0, pos)
        return Pose(self._r0, pos)

    def position_derivative(self, s: float) -> np.ndarray:
        rot = rotation_about_axis(self.axis, s)
        return np.cross(self.axis, rot @ (self._p0 - self.center))

    def min_path_speed(self) -> float:
        return self.radius

    def success_s(self) -> float:
        return SUCCESS_REVOLUTE

    def efficiency_scale(self) -> float:
        return SUCCESS_REVOLUTE


@dataclass(frozen=True)
class HelicalPath(RevolutePath):
    """Circle plus axial advance of pitch meters per revolution."""

    pitch: float = 0.03

    kind = "helical"

    def pose_at(self, s: float) -> Pose:
        base = super().pose_at(s)
        return Pose(base.rotation, base.translation + (s / (2.0 * math.pi)) * self.pitch * self.axis)

    def position_derivative(self, s: float) -> np.ndarray:
        return super().position_derivative(s) + (self.pitch / (2.0 * math.pi)) * self.axis

    def min_path_speed(self) -> float:
        return math.hypot(self.radius, self.pitch / (2.0 * math.pi))


@dataclass(frozen=True)
class BezierPath(ArticulationModel):
    """Planar Bezier track lifted onto a board; the handle turns with it."""

    curve: BezierCurve = None
    board_pose: Pose = field(default_factory=Pose.identity)
    orientation_mode: str = "path_tangent"

    kind = "bezier"

    def __post_init__(self):
        if self.curve is None:
            raise ValueError("curve required")
        # Power-basis coefficients (exact expansion of the Bernstein form) let
        # the projection search evaluate the curve with two Horner passes.
        from numpy.polynomial import polynomial as npoly

        n = self.curve.order
        coeffs = np.zeros((n + 1, 2))
        for i in range(n + 1):
            basis = math.comb(n, i) * npoly.polymul(
                npoly.polypow([0.0, 1.0], i), npoly.polypow([1.0, -1.0], n - i)
            )
            coeffs[: len(basis)] += np.outer(basis, self.curve.control_points[i])
        object.__setattr__(self, "_px", tuple(coeffs[:, 0]))
        object.__setattr__(self, "_py", tuple(coeffs[:, 1]))
        object.__setattr__(
            self, "_dpx", tuple((k + 1) * coeffs[k + 1, 0] for k in range(n))
        )
        object.__setattr__(
            self, "_dpy", tuple((k + 1) * coeffs[k + 1, 1] for k in range(n))
        )
        grid = np.linspace(0.0, 1.0, 512)
        speeds = np.array(
            [np.linalg.norm(bezier_derivative(self.curve, float(s))) for s in grid]
        )
        object.__setattr__(self, "_min_speed", float(speeds.min()))
        object.__setattr__(self, "_psi0", self._tangent_angle(0.0))

    def _point(self, s: float) -> tuple[float, float]:
        x = 0.0
        y = 0.0
        for cx, cy in zip(reversed(self._px), reversed(self._py)):
            x = x * s + cx
            y = y * s + cy
        return x, y

    def _velocity(self, s: float) -> tuple[float, float]:
        x = 0.0
        y = 0.0
        for cx, cy in zip(reversed(self._dpx), reversed(self._dpy)):
            x = x * s + cx
            y = y * s + cy
        return x, y

    def _tangent_angle(self, s: float) -> float:
        dx, dy = self._velocity(s)
        return math.atan2(dy, dx)

    @property
    def domain(self):
        return (0.0, 1.0)

    @property
    def category(self) -> str:
        return f"bezier{self.curve.order}"

    def pose_at(self, s: float) -> Pose:
        self.check_domain(s)
        bx, by = self._point(s)
        psi = self._tangent_angle(s) if self.orientation_mode == "path_tangent" else self._psi0
        c, sn = math.cos(psi), math.sin(psi)
        rot = np.array([[c, -sn, 0.0], [sn, c, 0.0], [0.0, 0.0, 1.0]])
        local = Pose(rot, np.array([bx, by, 0.0]))
        return compose(self.board_pose, local)

    def position_derivative(self, s: float) -> np.ndarray:
        dx, dy = self._velocity(s)
        return self.board_pose.rotation @ np.array([dx, dy, 0.0])

    def min_path_speed(self) -> float:
        return self._min_speed

    def success_s(self) -> float:
        return SUCCESS_BEZIER

    def efficiency_scale(self) -> float:
        return 1.0


def handle_pose_at(m: ArticulationModel, st: PathState) -> Pose:
    return m.pose_at(st.s)


def success_check(m: ArticulationModel, st: PathState) -> bool:
    return st.s >= m.success_s()


def contact_energy(m: ArticulationModel, gripper: Pose, s: float, markers: np.ndarray) -> float:
    """Spring energy sum ||T(s) a_k - gripper a_k||^2 over attached markers."""
    handle = m.pose_at(s)
    diff = handle.apply(markers) - gripper.apply(markers)
    return float(np.sum(diff * diff))


def _rotation_terms(w_pts: np.ndarray, e_pts: np.ndarray, k: np.ndarray):
    """Scalar coefficients of sum ||(Rot(d)-I) w_k + e_k||^2 expanded in
    sin(d) and (1-cos(d)) for a rotation generator k = skew(axis)."""
    kw = w_pts @ k.T
    k2w = kw @ k.T
    return (
        float(np.sum(kw * kw)),        # p11
        float(np.sum(k2w * k2w)),      # p22
        float(np.sum(kw * k2w)),       # p12
        float(np.sum(kw * e_pts)),     # q1
        float(np.sum(k2w * e_pts)),    # q2
        kw.sum(axis=0),                # K * sum(w)
        k2w.sum(axis=0),               # K^2 * sum(w)
    )


def _energy_reducer(m: ArticulationModel, gripper: Pose, markers: np.ndarray,
                    s_center: float):
    """Scalar reduction of the contact energy, recentered at s_center.

    Rewrites sum ||T(s) a_k - g_k||^2 in the offset d = s - s_center with all
    constant terms at deviation scale, so evaluations stay numerically sharp
    near the minimum (the raw big-constant form loses ~7 digits to
    cancellation there). Falls back to the generic evaluator for unknown
    kinds.
    """
    g = gripper.apply(markers)
    n = len(markers)
    e_pts = m.pose_at(s_center).apply(markers) - g  # deviation scale
    c0 = float(np.sum(e_pts * e_pts))

    if isinstance(m, PrismaticPath):
        a1 = 2.0 * float(np.sum(e_pts @ m.axis))

        def energy_prismatic(s: float) -> float:
            d = s - s_center
            return c0 + a1 * d + n * d * d

        return energy_prismatic

    if isinstance(m, RevolutePath):
        k = skew(m.axis)
        if m.orientation_mode == "path_tangent":
            w_pts = (markers @ m._r0.T + m._p0) - m.center
        else:
            w_pts = np.tile(m._p0 - m.center, (n, 1))
        rot_c = rotation_about_axis(m.axis, s_center)
        w_pts = w_pts @ rot_c.T
        p11, p22, p12, q1, q2, w1, w2 = _rotation_terms(w_pts, e_pts, k)
        rate = m.pitch / (2.0 * math.pi) if isinstance(m, HelicalPath) else 0.0
        axis = m.axis
        e_sum_axis = float(e_pts.sum(axis=0) @ axis)
        w1_axis = float(w1 @ axis)
        w2_axis = float(w2 @ axis)

        def energy_circular(s: float) -> float:
            d = s - s_center
            sn, vc = math.sin(d), 1.0 - math.cos(d)
            e = (
                c0
                + sn * sn * p11 + vc * vc * p22 + 2.0 * sn * vc * p12
                + 2.0 * sn * q1 + 2.0 * vc * q2
            )
            if rate != 0.0:
                dd = rate * d
                e += n * dd * dd + 2.0 * dd * (e_sum_axis + sn * w1_axis + vc * w2_axis)
            return e

        return energy_circular

    if isinstance(m, BezierPath):
        # Work in the board frame; rotations are about the board normal.
        board_rot_t = m.board_pose.rotation.T
        e_b = e_pts @ board_rot_t.T
        tangent_mode = m.orientation_mode == "path_tangent"
        psi_c = m._tangent_angle(s_center) if tangent_mode else m._psi0
        cc, sc_ = math.cos(psi_c), math.sin(psi_c)
        rot_c = np.array([[cc, -sc_, 0.0], [sc_, cc, 0.0], [0.0, 0.0, 1.0]])
        m_pts = markers @ rot_c.T
        k = skew(np.array([0.0, 0.0, 1.0]))
        p11, p22, p12, q1, q2, w1, w2 = _rotation_terms(m_pts, e_b, k)
        e_sum = e_b.sum(axis=0)
        bx_c, by_c = m._point(s_center)
        ex, ey = float(e_sum[0]), float(e_sum[1])
        w1x, w1y = float(w1[0]), float(w1[1])
        w2x, w2y = float(w2[0]), float(w2[1])
        point, velocity = m._point, m._velocity
        atan2, sin, cos, pi = math.atan2, math.sin, math.cos, math.pi

        def energy_bezier(s: float) -> float:
            bx, by = point(s)
            dbx, dby = bx - bx_c, by - by_c
            if tangent_mode:
                dx, dy = velocity(s)
                dpsi = atan2(dy, dx) - psi_c
                if dpsi > pi:
                    dpsi -= 2.0 * pi
                elif dpsi < -pi:
                    dpsi += 2.0 * pi
                sn, vc = sin(dpsi), 1.0 - cos(dpsi)
            else:
                sn = vc = 0.0
            return (
                c0
                + sn * sn * p11 + vc * vc * p22 + 2.0 * sn * vc * p12
                + 2.0 * sn * q1 + 2.0 * vc * q2
                + n * (dbx * dbx + dby * dby)
                + 2.0 * (dbx * ex + dby * ey)
                + 2.0 * (dbx * (sn * w1x + vc * w2x) + dby * (sn * w1y + vc * w2y))
            )

        return energy_bezier

    return lambda s: contact_energy(m, gripper, s, markers)


def project_to_path(
    m: ArticulationModel,
    gripper: Pose,
    current: PathState,
    window: float,
    markers: np.ndarray,
) -> PathState:
    """Quasi-static handle response: energy-minimizing parameter near `current`.

    Golden-section search over [s - window, s + window] clipped to the domain,
    bracketed by the three probe points {lo, current, hi}, to PROJECTION_TOL
    on the parameter. The returned state never has higher energy than the
    current one.
    """
    if window <= 0:
        raise ValueError("window must be positive")
    lo_dom, hi_dom = m.domain
    lo = max(lo_dom, current.s - window)
    hi = min(hi_dom, current.s + window)
    energy = _energy_reducer(m, gripper, markers, current.s)

    best_s, best_e = current.s, energy(current.s)
    e_lo, e_hi = energy(lo), energy(hi)
    for s_cand, e_cand in ((lo, e_lo), (hi, e_hi)):
        if e_cand < best_e:
            best_s, best_e = s_cand, e_cand

    # Bracket around the current point when it already beats both ends.
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = energy(x1), energy(x2)
    while (b - a) > PROJECTION_TOL:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = energy(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = energy(x2)
    s_star = 0.5 * (a + b)
    # Parabolic polish inside the final bracket: exact for the locally
    # quadratic energies this search sees, removing the bracket-width jitter.
    h = max(1e-6 * (hi - lo), 1e-10)
    if lo <= s_star - h and s_star + h <= hi:
        e_m, e_c, e_p = energy(s_star - h), energy(s_star), energy(s_star + h)
        denom = e_p - 2.0 * e_c + e_m
        if denom > 0.0:
            refined = s_star - 0.5 * h * (e_p - e_m) / denom
            if lo <= refined <= hi:
                e_r = energy(refined)
                if e_r < e_c:
                    s_star, e_c = refined, e_r
        e_star = e_c
    else:
        e_star = energy(s_star)
    if e_star < best_e:
        best_s, best_e = s_star, e_star
    return PathState(best_s)


@dataclass(frozen=True)
class SuiteSpec:
    """Counts, seed, and geometric ranges for a generated object suite.

    min_radius bounds the osculating radius of accepted Bezier tracks so a
    tracking controller's per-step orientation change stays safely inside the
    slip budget at the default speed; the default derives from
    5 * (base speed * dt) * pad radius / (gamma / 2) at the shipped defaults.
    """

    n_prismatic: int = 50
    n_revolute: int = 50
    n_helical: int = 0
    bezier_counts: tuple[tuple[int, int], ...] = ((2, 25), (3, 25), (4, 25), (5, 25))
    seed: int = 0
    prismatic_travel: tuple[float, float] = (0.30, 0.40)
    revolute_radius: tuple[float, float] = (0.20, 0.40)
    revolute_sweep: tuple[float, float] = (1.4, 2.4)
    helical_pitch: tuple[float, float] = (0.01, 0.05)
    board_size: float = 0.35
    min_curve_length: float = 0.12
    min_param_speed: float = 0.05
    min_radius: float = 0.04
    max_attempts_per_curve: int = 10000

    def __post_init__(self):
        counts = [self.n_prismatic, self.n_revolute, self.n_helical]
        counts += [c for _, c in self.bezier_counts]
        if any(c < 0 for c in counts):
            raise ValueError("counts must be >= 0")
        for rng in (self.prismatic_travel, self.revolute_radius, self.revolute_sweep,
                    self.helical_pitch):
            if not 0 < rng[0] <= rng[1]:
                raise ValueError("ranges must be positive and ordered")


def _bernstein_matrix(order: int, s: np.ndarray) -> np.ndarray:
    return np.stack(
        [
            math.comb(order, i) * (s ** i) * ((1.0 - s) ** (order - i))
            for i in range(order + 1)
        ],
        axis=1,
    )


def _curve_metrics(curve: BezierCurve) -> tuple[float, float, float]:
    """(polyline length, min parametric speed, max curvature) on a dense grid."""
    pts = bezier_sample(curve, 256)
    length = float(np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1)))
    n = curve.order
    grid = np.linspace(0.0, 1.0, 512)
    d1 = n * (_bernstein_matrix(n - 1, grid) @ np.diff(curve.control_points, axis=0))
    speeds = np.hypot(d1[:, 0], d1[:, 1])
    min_speed = float(speeds.min())
    if n < 2:
        return length, min_speed, 0.0
    if min_speed <= 1e-12:
        return length, min_speed, math.inf
    dd = np.diff(curve.control_points, n=2, axis=0)
    d2 = n * (n - 1) * (_bernstein_matrix(n - 2, grid) @ dd)
    kappa = np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speeds ** 3
    return length, min_speed, float(kappa.max())


def _sample_bezier(rng: np.random.Generator, order: int, spec: SuiteSpec,
                   object_id: str) -> BezierPath:
    half = spec.board_size / 2.0
    for _ in range(spec.max_attempts_per_curve):
        pts = rng.uniform(-half, half, size=(order + 1, 2))
        curve = BezierCurve(pts)
        length, min_speed, max_curv = _curve_metrics(curve)
        if length < spec.min_curve_length:
            continue
        if min_speed < spec.min_param_speed:
            continue
        if max_curv > 1.0 / spec.min_radius:
            continue
        if bezier_self_intersects(curve, 1024):
            continue
        return BezierPath(object_id=object_id, curve=curve)
    raise ValueError(
        f"infeasible spec: no acceptable order-{order} curve in "
        f"{spec.max_attempts_per_curve} attempts"
    )


def generate_suite(spec: SuiteSpec) -> list[ArticulationModel]:
    """Deterministic object suite for a fixed seed.

    Categories generate in a fixed order (prismatic, revolute, helical, then
    Bezier orders ascending); Bezier candidates are rejected and resampled
    until they are self-intersection free at resolution 1024, long enough,
    and within the curvature feasibility bound.
    """
    rng = np.random.default_rng(spec.seed)
    models: list[ArticulationModel] = []

    for i in range(spec.n_prismatic):
        phi = rng.uniform(0.0, 2.0 * math.pi)
        travel = rng.uniform(*spec.prismatic_travel)
        models.append(
            PrismaticPath(
                object_id=f"prismatic-{i:03d}",
                axis=np.array([math.cos(phi), math.sin(phi), 0.0]),
                travel=float(travel),
            )
        )

    def _revolute_args():
        radius = float(rng.uniform(*spec.revolute_radius))
        start_angle = float(rng.uniform(0.0, 2.0 * math.pi))
        sweep = float(rng.uniform(*spec.revolute_sweep))
        sign = 1.0 if rng.integers(0, 2) == 1 else -1.0
        axis = np.array([0.0, 0.0, sign])
        ref = np.array([1.0, 0.0, 0.0])
        e1 = np.cross(ref, axis)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(axis, e1)
        radial = math.cos(start_angle) * e1 + math.sin(start_angle) * e2
        center = -radius * radial  # puts the handle start at the origin
        return center, axis, radius, start_angle, sweep

    for i in range(spec.n_revolute):
        center, axis, radius, start_angle, sweep = _revolute_args()
        models.append(
            RevolutePath(
                object_id=f"revolute-{i:03d}",
                center=center, axis=axis, radius=radius,
                start_angle=start_angle, sweep=sweep,
            )
        )

    for i in range(spec.n_helical):
        center, axis, radius, start_angle, sweep = _revolute_args()
        pitch = float(rng.uniform(*spec.helical_pitch))
        models.append(
            HelicalPath(
                object_id=f"helical-{i:03d}",
                center=center, axis=axis, radius=radius,
                start_angle=start_angle, sweep=sweep, pitch=pitch,
            )
        )

    for order, count in spec.bezier_counts:
        for i in range(count):
            models.append(_sample_bezier(rng, order, spec, f"bezier{order}-{i:03d}"))

    return models


def model_to_dict(m: ArticulationModel) -> dict:
    d = {"id": m.object_id, "kind": m.kind, "orientation_mode": m.orientation_mode}
    if isinstance(m, PrismaticPath):
        d.update(origin=m.origin.tolist(), axis=m.axis.tolist(), travel=m.travel)
    elif isinstance(m, HelicalPath):
        d.update(center=m.center.tolist(), axis=m.axis.tolist(), radius=m.radius,
                 start_angle=m.start_angle, sweep=m.sweep, pitch=m.pitch)
    elif isinstance(m, RevolutePath):
        d.update(center=m.center.tolist(), axis=m.axis.tolist(), radius=m.radius,
                 start_angle=m.start_angle, sweep=m.sweep)
    elif isinstance(m, BezierPath):
        d.update(
            control_points=[list(p) for p in m.curve.control_points],
            board_rotation=[list(r) for r in m.board_pose.rotation],
            board_translation=m.board_pose.translation.tolist(),
        )
    else:
        raise ValueError(f"unknown model kind {m.kind}")
    return d


def model_from_dict(d: dict) -> ArticulationModel:
    kind = d["kind"]
    mode = d.get("orientation_mode", "path_tangent")
    oid = d["id"]
    if kind == "prismatic":
        return PrismaticPath(object_id=oid, orientation_mode=mode,
                             origin=np.array(d["origin"]), axis=np.array(d["axis"]),
                             travel=d["travel"])
    if kind == "revolute":
        return RevolutePath(object_id=oid, orientation_mode=mode,
                            center=np.array(d["center"]), axis=np.array(d["axis"]),
                            radius=d["radius"], start_angle=d["start_angle"],
                            sweep=d["sweep"])
    if kind == "helical":
        return HelicalPath(object_id=oid, orientation_mode=mode,
                           center=np.array(d["center"]), axis=np.array(d["axis"]),
                           radius=d["radius"], start_angle=d["start_angle"],
                           sweep=d["sweep"], pitch=d["pitch"])
    if kind == "bezier":
        return BezierPath(
            object_id=oid, orientation_mode=mode,
            curve=BezierCurve(np.array(d["control_points"])),
            board_pose=Pose(np.array(d["board_rotation"]), np.array(d["board_translation"])),
        )
    raise ValueError(f"unknown model kind {kind}")
