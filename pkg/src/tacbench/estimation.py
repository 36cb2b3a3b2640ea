"""In-hand pose estimation from contact correspondences and pose prediction.

The relative gripper-to-handle transform is the closed-form least-squares
rigid fit (Kabsch) between the grasp-time reference contact and the current
one; the next handle pose is a constant-velocity extrapolation from the two
most recent estimates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .contact import ContactState, CorrespondenceSet
from .geom import Pose, compose, inverse

AREA_EPS = 1e-12  # m^2; collinearity cut for triangle areas


class DegenerateContactError(ValueError):
    """Contact set violates the >=3 non-collinear points requirement."""


@dataclass(frozen=True)
class ValidityReport:
    count_ok: bool
    collinearity_ok: bool
    min_triangle_area: float  # smallest non-degenerate triangle, m^2


@dataclass
class HandleHistory:
    """The two most recent handle pose estimates, strictly increasing index."""

    estimates: list[tuple[int, Pose]] = field(default_factory=list)
    capacity: int = 2

    def append(self, step: int, pose: Pose) -> None:
        if self.estimates and step <= self.estimates[-1][0]:
            raise ValueError("step indices must be strictly increasing")
        self.estimates.append((step, pose))
        if len(self.estimates) > self.capacity:
            self.estimates.pop(0)

    def __len__(self) -> int:
        return len(self.estimates)


def _triangle_areas(points: np.ndarray, triples: np.ndarray) -> np.ndarray:
    a = points[triples[:, 0]]
    b = points[triples[:, 1]]
    c = points[triples[:, 2]]
    cross = np.cross(b - a, c - a)
    return 0.5 * np.linalg.norm(cross, axis=1)


def validate_contact(c: ContactState, area_eps: float = AREA_EPS) -> ValidityReport:
    """Exhaustive count/collinearity check over all point triples."""
    pts = c.positions
    n = len(pts)
    count_ok = n >= 3
    if not count_ok:
        return ValidityReport(False, False, 0.0)
    triples = np.array(list(combinations(range(n), 3)))
    areas = _triangle_areas(pts, triples)
    nondegenerate = areas[areas > area_eps]
    collinear_ok = nondegenerate.size > 0
    min_area = float(nondegenerate.min()) if collinear_ok else 0.0
    return ValidityReport(count_ok, collinear_ok, min_area)


def contact_is_usable(points: np.ndarray, area_eps: float = AREA_EPS) -> bool:
    """Same predicate as validate_contact, short-circuiting on the first
    non-collinear triple (the per-step hot path)."""
    n = len(points)
    if n < 3:
        return False
    p0 = points[0]
    # First point at distance from p0, then scan for any off-line third point.
    d = points[1:] - p0
    norms2 = np.einsum("ij,ij->i", d, d)
    base = int(np.argmax(norms2 > 0))
    if norms2[base] == 0:
        return False
    bx, by, bz = d[base]
    cx = by * d[:, 2] - bz * d[:, 1]
    cy = bz * d[:, 0] - bx * d[:, 2]
    cz = bx * d[:, 1] - by * d[:, 0]
    areas2 = cx * cx + cy * cy + cz * cz
    return bool(np.any(areas2 > (2.0 * area_eps) ** 2))


def kabsch(k: CorrespondenceSet, area_eps: float = AREA_EPS) -> tuple[Pose, float]:
    """Least-squares rigid transform mapping reference points onto current.

    Returns (pose, residual RMS in meters). Centroids accumulate in extended
    precision to keep residuals near 1e-10 on full 64-point grids. A negative
    determinant in the rotation factor is corrected by a sign flip, so the
    result is always a proper rotation.
    """
    if not (contact_is_usable(k.reference, area_eps) and contact_is_usable(k.current, area_eps)):
        raise DegenerateContactError("degenerate contact")
    ref = k.reference
    cur = k.current
    c_ref = np.asarray(np.mean(ref, axis=0, dtype=np.longdouble), dtype=float)
    c_cur = np.asarray(np.mean(cur, axis=0, dtype=np.longdouble), dtype=float)
    a = ref - c_ref
    b = cur - c_cur
    h = a.T @ b
    u, _, vt = np.linalg.svd(h)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    rot = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    t = c_cur - rot @ c_ref
    residual = ref @ rot.T + t - cur
    rms = float(np.sqrt(np.mean(np.sum(residual * residual, axis=1))))
    return Pose(rot, t), rms


def estimate_handle_pose(gripper: Pose, rel: Pose) -> Pose:
    """World handle pose from the gripper pose and the relative estimate."""
    return compose(gripper, rel)


def compute_motion_delta(h: HandleHistory) -> Pose:
    """Body-frame delta between the two most recent estimates."""
    if len(h) < 2:
        raise ValueError("insufficient history")
    (_, prev), (_, cur) = h.estimates[-2], h.estimates[-1]
    return compose(inverse(prev), cur)


def predict_next(cur: Pose, t_u: Pose) -> Pose:
    """Constant-velocity prediction: advance the current pose by the delta."""
    return compose(cur, t_u)
