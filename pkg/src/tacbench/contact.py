"""Simulated marker-grid tactile sensor.

Markers are rigidly attached to the handle at grasp time; a reading is the
gripper-to-handle relative pose applied to each attachment point plus
per-axis Gaussian read noise. A marker is reported only while its normal
deformation (x component) stays at or above the activation threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .geom import Pose


@dataclass(frozen=True)
class SensorConfig:
    grid_rows: int = 8
    grid_cols: int = 8
    pitch: float = 0.002            # meters between markers
    epsilon: float = 5e-4           # activation threshold, meters
    d0: float = 1e-3                # baseline indentation along x, meters
    gamma: float = 2e-3             # slip threshold, meters
    noise_sigma: float = 0.0        # per-axis read noise, meters
    pads: int = 1

    def __post_init__(self):
        if not (self.d0 >= self.epsilon > 0.0):
            raise ValueError("require d0 >= epsilon > 0")
        if self.gamma <= 0.0 or self.pitch <= 0.0:
            raise ValueError("gamma and pitch must be positive")
        if self.grid_rows * self.grid_cols < 3:
            raise ValueError("need at least 3 markers")
        if self.pads not in (1, 2):
            raise ValueError("pads must be 1 or 2")

    def marker_count(self) -> int:
        return self.grid_rows * self.grid_cols * self.pads


@dataclass(frozen=True)
class ContactPoint:
    marker_id: int
    position: np.ndarray       # measured, gripper frame
    rest_position: np.ndarray  # grasp-time attachment point, gripper frame


@dataclass(frozen=True)
class ContactState:
    """Activated markers at one time step, stored as id-sorted arrays."""

    marker_ids: np.ndarray      # (n,) int
    positions: np.ndarray       # (n, 3)
    rest_positions: np.ndarray  # (n, 3)
    index: int = 0

    @property
    def points(self) -> tuple[ContactPoint, ...]:
        return tuple(
            ContactPoint(int(m), p, r)
            for m, p, r in zip(self.marker_ids, self.positions, self.rest_positions)
        )

    def __len__(self) -> int:
        return len(self.marker_ids)


@dataclass(frozen=True)
class CorrespondenceSet:
    """Reference/current point pairs matched by marker id, ascending."""

    marker_ids: np.ndarray
    reference: np.ndarray  # (n, 3)
    current: np.ndarray    # (n, 3)

    def __len__(self) -> int:
        return len(self.marker_ids)

    @property
    def pairs(self) -> tuple[tuple[ContactPoint, ContactPoint], ...]:
        return tuple(
            (ContactPoint(int(m), r, r), ContactPoint(int(m), c, r))
            for m, r, c in zip(self.marker_ids, self.reference, self.current)
        )


@lru_cache(maxsize=16)
def _rest_layout_cached(cfg: SensorConfig) -> np.ndarray:
    rows, cols = cfg.grid_rows, cfg.grid_cols
    y = (np.arange(cols) - (cols - 1) / 2.0) * cfg.pitch
    z = (np.arange(rows) - (rows - 1) / 2.0) * cfg.pitch
    zz, yy = np.meshgrid(z, y, indexing="ij")
    pad = np.column_stack([np.full(rows * cols, cfg.d0), yy.ravel(), zz.ravel()])
    if cfg.pads == 2:
        mirrored = pad.copy()
        mirrored[:, 0] = -cfg.d0
        pad = np.vstack([pad, mirrored])
    pad.setflags(write=False)
    return pad


def rest_layout(cfg: SensorConfig) -> np.ndarray:
    """Grasp-time marker positions in the gripper frame, id order.

    One pad is a rows x cols grid centered in the y-z plane, indented to
    x = d0. A second pad mirrors it to x = -d0 with ids offset by rows*cols.
    """
    return _rest_layout_cached(cfg)


def sense(rel: Pose, cfg: SensorConfig, rng_seed, index: int = 0) -> ContactState:
    """Read the sensor for gripper-to-handle relative pose `rel`.

    Measured positions are rel applied to the rest layout plus Gaussian
    noise; only markers with |x| >= epsilon are reported. Identical
    (rel, cfg, seed) inputs give bit-identical states. An empty state is a
    legal reading and signals lost contact.
    """
    rest = rest_layout(cfg)
    measured = rel.apply(rest)
    if cfg.noise_sigma > 0.0:
        rng = np.random.default_rng(rng_seed)
        measured = measured + rng.normal(0.0, cfg.noise_sigma, measured.shape)
    active = np.abs(measured[:, 0]) >= cfg.epsilon
    ids = np.flatnonzero(active)
    return ContactState(
        marker_ids=ids,
        positions=measured[active],
        rest_positions=rest[active],
        index=index,
    )


def correspondences(ref: ContactState, cur: ContactState) -> CorrespondenceSet:
    """Pairs matched by marker id, ordered by ascending id (possibly empty)."""
    if len(ref.marker_ids) == len(cur.marker_ids) and np.array_equal(
        ref.marker_ids, cur.marker_ids
    ):
        return CorrespondenceSet(ref.marker_ids, ref.positions, cur.positions)
    shared, ref_idx, cur_idx = np.intersect1d(
        ref.marker_ids, cur.marker_ids, assume_unique=True, return_indices=True
    )
    return CorrespondenceSet(
        marker_ids=shared,
        reference=ref.positions[ref_idx],
        current=cur.positions[cur_idx],
    )


def deviation_stats_from(k: CorrespondenceSet) -> tuple[float, float]:
    """(mean, max) deviation norms of an already-matched pair set."""
    if len(k) == 0:
        raise ValueError("no correspondences")
    d = k.current - k.reference
    norms = np.sqrt(np.einsum("ij,ij->i", d, d))
    return float(np.mean(norms)), float(np.max(norms))


def deviation_stats(ref: ContactState, cur: ContactState) -> tuple[float, float]:
    """(mean, max) of per-marker deviation norms over matched pairs."""
    return deviation_stats_from(correspondences(ref, cur))


def check_slip(ref: ContactState, cur: ContactState, cfg: SensorConfig) -> bool:
    """True iff the max deviation norm strictly exceeds the slip threshold."""
    _, max_dev = deviation_stats(ref, cur)
    return max_dev > cfg.gamma


def calibrate_epsilon(deformations, target_count: int) -> float:
    """Threshold that activates exactly `target_count` markers.

    `deformations` is the raw |normal deformation| per marker. Returns the
    target_count-th largest value; raises if ties make the exact count
    unreachable, listing the achievable counts.
    """
    if target_count < 3:
        raise ValueError("target_count must be >= 3")
    d = np.abs(np.asarray(deformations, dtype=float))
    if target_count > len(d):
        raise ValueError(f"only {len(d)} markers available")
    d_sorted = np.sort(d)[::-1]
    eps = d_sorted[target_count - 1]
    achieved = int(np.sum(d >= eps))
    if achieved != target_count:
        counts = sorted({int(np.sum(d >= v)) for v in np.unique(d)})
        raise ValueError(
            f"ties make exactly {target_count} contacts unreachable; "
            f"achievable counts: {counts}"
        )
    return float(eps)
