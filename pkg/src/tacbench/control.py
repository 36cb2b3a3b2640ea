"""Twist-command controllers for tactile-servoed manipulation.

Two controllers share one command pipeline (joint-velocity solve, limit
scaling, duration stretch):

* ProactiveController registers the current contact against the grasp
  reference, extrapolates the handle pose one step ahead with a
  constant-velocity model, and commands the screw that lands the gripper
  exactly on the predicted pose.
* ReactiveController is the exploration/compensation baseline: drive the
  base velocity until the mean contact deviation reaches a trigger level,
  then halt progress and shrink the deviation back below a release level
  before resuming along an updated direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contact import ContactState, correspondences, deviation_stats_from
from .estimation import (
    DegenerateContactError,
    HandleHistory,
    estimate_handle_pose,
    compute_motion_delta,
    kabsch,
    predict_next,
)
from .geom import Pose, Twist, compose, inverse, log_rotation, log_twist

RANK_EPS = 1e-8  # smallest singular value accepted as full row rank
_EYE6 = np.eye(6)


class SingularConfigurationError(RuntimeError):
    """Jacobian lost row rank; velocity solve is not defined."""


class AmbiguousRotationError(RuntimeError):
    """Required rotation within 1e-6 of pi; the axis sign is undefined."""


@dataclass(frozen=True)
class BaseVelocity:
    """Constant rough-direction twist in the gripper frame."""

    twist: Twist


@dataclass(frozen=True)
class JointLimits:
    max_abs_velocity: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.max_abs_velocity, dtype=float)
        if np.any(v <= 0):
            raise ValueError("joint velocity limits must be positive")
        object.__setattr__(self, "max_abs_velocity", v)


@dataclass(frozen=True)
class Command:
    """Executable twist (gripper frame) and its stretched duration."""

    twist: Twist
    duration: float


@dataclass(frozen=True)
class BaselineConfig:
    trigger_frac: float = 0.4
    release_frac: float = 0.1
    recovery_gain: float = 0.6  # 1/s

    def __post_init__(self):
        if not 0.0 < self.release_frac < self.trigger_frac < 1.0:
            raise ValueError("require 0 < release_frac < trigger_frac < 1")
        if self.recovery_gain <= 0.0:
            raise ValueError("recovery_gain must be positive")


@dataclass(frozen=True)
class ControlConfig:
    dt: float = 1.0 / 60.0
    beta: float = 0.9
    div_eps: float = 1e-9
    mode: str = "proactive"  # proactive | reactive_baseline
    baseline: BaselineConfig = field(default_factory=BaselineConfig)

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must be in (0, 1]")
        if self.dt <= 0.0 or self.div_eps <= 0.0:
            raise ValueError("dt and div_eps must be positive")
        if self.mode not in ("proactive", "reactive_baseline"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class StepDecision:
    command: Command
    joint_velocities: np.ndarray  # limit-scaled, matches command.twist
    alpha: float
    mode: str
    estimate: Pose | None = None
    predicted: Pose | None = None


def required_transform(gripper: Pose, predicted: Pose) -> Pose:
    """Transform the gripper must execute, in its own frame."""
    return compose(inverse(gripper), predicted)


def offset_velocity(required: Pose, base: BaseVelocity, dt: float) -> Twist:
    """Corrective twist on top of the base velocity.

    Angular part: rotation axis times angle over dt, minus the base angular
    velocity. Linear part: translation over dt with the screw coupling
    inverted, so integrating (offset + base) as an exact screw for dt
    reproduces `required`. For pure translations this reduces to p/dt - v0.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    angle = log_rotation(required.rotation).angle
    if angle >= math.pi - 1e-6:
        raise AmbiguousRotationError("ambiguous rotation axis")
    total = log_twist(required).scaled(1.0 / dt)
    return Twist(total.linear - base.twist.linear, total.angular - base.twist.angular)


def solve_joint_velocities(jacobian: np.ndarray, total_twist: Twist) -> np.ndarray:
    """Minimum-norm joint velocities with J qdot = total_twist.

    Requires n >= 6 and full row rank (smallest singular value > RANK_EPS);
    a rank-deficient Jacobian raises SingularConfigurationError.
    """
    j = np.asarray(jacobian, dtype=float)
    if j.shape[0] != 6 or j.shape[1] < 6:
        raise ValueError("jacobian must be 6 x n with n >= 6")
    if j.shape == (6, 6) and np.array_equal(j, _EYE6):
        return total_twist.as_array()
    u_mat, s, vt = np.linalg.svd(j, full_matrices=False)
    if s[-1] <= RANK_EPS:
        raise SingularConfigurationError("singular configuration")
    return vt.T @ ((u_mat.T @ total_twist.as_array()) / s)


def scale_alpha(joint_vel: np.ndarray, limits: JointLimits, beta: float, div_eps: float) -> float:
    """Uniform scale keeping every |qdot_j| within beta times its limit."""
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must be in (0, 1]")
    if div_eps <= 0.0:
        raise ValueError("div_eps must be positive")
    qd = np.abs(np.asarray(joint_vel, dtype=float))
    qd = np.maximum(qd, div_eps)
    return float(min(np.min(limits.max_abs_velocity * beta / qd), 1.0))


def assemble_command(offset: Twist, base: BaseVelocity, alpha: float, dt: float) -> Command:
    """Scale both offset and base by alpha and stretch the duration to dt/alpha.

    The screw displacement over the stretched duration equals the unscaled
    displacement over dt, so limit scaling never changes where a step lands.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must be in (0, 1]")
    total = offset.plus(base.twist).scaled(alpha)
    return Command(total, dt / alpha)


def rotate_twist(rotation: np.ndarray, t: Twist) -> Twist:
    """Re-express a twist at the same origin in a rotated frame."""
    return Twist(rotation @ t.linear, rotation @ t.angular)


class _CommandPipeline:
    """Shared tail: body twist -> joint solve -> alpha scaling -> command."""

    def __init__(self, cfg: ControlConfig, limits: JointLimits):
        self.cfg = cfg
        self.limits = limits

    def finish(self, total_body: Twist, base: BaseVelocity, gripper: Pose,
               jacobian: np.ndarray) -> tuple[Command, np.ndarray, float]:
        offset = Twist(total_body.linear - base.twist.linear,
                       total_body.angular - base.twist.angular)
        world = rotate_twist(gripper.rotation, total_body)
        qd = solve_joint_velocities(jacobian, world)
        alpha = scale_alpha(qd, self.limits, self.cfg.beta, self.cfg.div_eps)
        cmd = assemble_command(offset, base, alpha, self.cfg.dt)
        return cmd, qd * alpha, alpha


class ProactiveController:
    """Predict the next handle pose and pre-compensate in one motion."""

    def __init__(self, base: BaseVelocity, cfg: ControlConfig, limits: JointLimits,
                 reference: ContactState):
        self.base = base
        self.cfg = cfg
        self.reference = reference
        self.history = HandleHistory()
        self.step_index = 0
        self._pipeline = _CommandPipeline(cfg, limits)

    def seed_history(self, handle_pose: Pose) -> None:
        """Record the grasp-time handle pose (equal to the gripper pose)."""
        self.history.append(0, handle_pose)
        self.step_index = 0

    def reanchor(self, reference: ContactState, gripper: Pose) -> None:
        """Restart registration after a slip: the re-settled contact becomes
        the new reference and the pose history begins again at the gripper."""
        self.reference = reference
        self.history = HandleHistory()
        self.history.append(self.step_index, gripper)

    def step(self, gripper: Pose, contact: ContactState, jacobian: np.ndarray) -> StepDecision:
        self.step_index += 1
        i = self.step_index

        if i == 1:
            # No deviation information yet: drive the base velocity alone.
            cmd, qd, alpha = self._pipeline.finish(self.base.twist, self.base, gripper, jacobian)
            est = self.history.estimates[-1][1] if len(self.history) else None
            return StepDecision(cmd, qd, alpha, "proactive", estimate=est, predicted=None)

        corr = correspondences(self.reference, contact)
        if len(corr) == 0:
            raise DegenerateContactError("degenerate contact")
        rel, _rms = kabsch(corr)
        est = estimate_handle_pose(gripper, rel)
        self.history.append(i, est)

        if len(self.history) >= 2:
            t_u = compute_motion_delta(self.history)
            predicted = predict_next(est, t_u)
            required = required_transform(gripper, predicted)
            offset = offset_velocity(required, self.base, self.cfg.dt)
            total = offset.plus(self.base.twist)
        else:
            predicted = None
            total = self.base.twist

        cmd, qd, alpha = self._pipeline.finish(total, self.base, gripper, jacobian)
        return StepDecision(cmd, qd, alpha, "proactive", estimate=est, predicted=predicted)


class ReactiveController:
    """Two-stage execution/recovery baseline with deviation hysteresis."""

    EXECUTION = "execution"
    RECOVERY = "recovery"

    def __init__(self, base: BaseVelocity, cfg: ControlConfig, limits: JointLimits,
                 reference: ContactState, gamma: float):
        self.base = base
        self.cfg = cfg
        self.reference = reference
        self.gamma = gamma
        self.mode = self.EXECUTION
        self.speed = float(np.linalg.norm(base.twist.linear))
        self.direction_world: np.ndarray | None = None  # unit, world frame
        self.cycle_start: np.ndarray | None = None      # world position
        self._pipeline = _CommandPipeline(cfg, limits)
        self.step_index = 0

    def _execution_twist(self, gripper: Pose) -> Twist:
        linear_body = gripper.rotation.T @ (self.direction_world * self.speed)
        return Twist(linear_body, self.base.twist.angular.copy())

    def reanchor(self, reference: ContactState, gripper: Pose) -> None:
        """Restart after a slip: fresh reference, back to execution."""
        self.reference = reference
        self.mode = self.EXECUTION
        self.cycle_start = gripper.translation.copy()

    def step(self, gripper: Pose, contact: ContactState, jacobian: np.ndarray) -> StepDecision:
        self.step_index += 1
        if self.direction_world is None:
            lin = self.base.twist.linear
            norm = np.linalg.norm(lin)
            self.direction_world = gripper.rotation @ (lin / norm) if norm > 0 else np.zeros(3)
            self.cycle_start = gripper.translation.copy()

        corr = correspondences(self.reference, contact)
        if len(corr) == 0:
            raise DegenerateContactError("degenerate contact")
        mean_dev, _ = deviation_stats_from(corr)

        b = self.cfg.baseline
        if self.mode == self.EXECUTION and mean_dev >= b.trigger_frac * self.gamma:
            self.mode = self.RECOVERY
        elif self.mode == self.RECOVERY and mean_dev < b.release_frac * self.gamma:
            # Recovery finished: point the next execution along the net
            # translation achieved over the whole execution+recovery cycle.
            net = gripper.translation - self.cycle_start
            if np.linalg.norm(net) >= 1e-6:
                self.direction_world = net / np.linalg.norm(net)
            self.cycle_start = gripper.translation.copy()
            self.mode = self.EXECUTION

        if self.mode == self.EXECUTION:
            total = self._execution_twist(gripper)
            estimate = None
        else:
            rel, _rms = kabsch(corr)
            # Pure deviation cancellation: close a fixed fraction of the
            # remaining gap per second, no base component.
            total = log_twist(rel).scaled(b.recovery_gain)
            estimate = estimate_handle_pose(gripper, rel)

        cmd, qd, alpha = self._pipeline.finish(total, self.base, gripper, jacobian)
        return StepDecision(cmd, qd, alpha, self.mode, estimate=estimate, predicted=None)
