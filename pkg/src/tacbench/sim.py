"""Fixed-step episode simulator coupling robot, controller, sensor, and object.

One episode: grasp the handle at the path start (gripper and handle frames
aligned), then loop controller -> exact screw integration -> quasi-static
handle projection -> re-sense, until success, slip, a controller failure, or
the step budget. All randomness flows from the per-episode seed, so identical
inputs give bit-identical logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contact import ContactState, SensorConfig, deviation_stats, sense
from .control import (
    BaseVelocity,
    Command,
    ControlConfig,
    JointLimits,
    ProactiveController,
    ReactiveController,
    SingularConfigurationError,
    StepDecision,
)
from .estimation import DegenerateContactError
from .geom import Pose, Twist, compose, exp_twist, inverse, log_rotation
from .objects import ArticulationModel, PathState, project_to_path, success_check

JACOBIAN_FD_STEP = 1e-6
GRASP_POSE_TOL = 1e-6


class ConfigurationError(ValueError):
    """Robot cannot realize the required start pose."""


def pose_coordinates(p: Pose) -> np.ndarray:
    """6 pose coordinates [translation, rotation vector] for logging/jerk."""
    aa = log_rotation(p.rotation)
    return np.concatenate([p.translation, aa.as_rotvec()])


@dataclass(frozen=True)
class FreeFlyingRobot:
    """Direct twist-driven gripper; the six twist components are the joints."""

    limits: JointLimits = field(
        default_factory=lambda: JointLimits(np.array([0.2, 0.2, 0.2, 2.0, 2.0, 2.0]))
    )

    kind = "free_flying"

    def jacobian(self, q: np.ndarray) -> np.ndarray:
        return np.eye(6)


@dataclass(frozen=True)
class SerialChainRobot:
    """n >= 6 revolute joints as base-frame screws plus a home pose."""

    screws: np.ndarray  # (n, 6), rows (linear, angular) at q = 0
    home: Pose
    q0: np.ndarray
    limits: JointLimits

    kind = "serial_chain"

    def __post_init__(self):
        s = np.asarray(self.screws, dtype=float)
        if s.ndim != 2 or s.shape[1] != 6 or s.shape[0] < 6:
            raise ValueError("screws must be (n, 6) with n >= 6")
        object.__setattr__(self, "screws", s)
        object.__setattr__(self, "q0", np.asarray(self.q0, dtype=float))

    def fk(self, q: np.ndarray) -> Pose:
        t = Pose.identity()
        for row, qj in zip(self.screws, q):
            sign = 1.0 if qj >= 0 else -1.0
            t = compose(t, exp_twist(Twist(sign * row[:3], sign * row[3:]), abs(float(qj))))
        return compose(t, self.home)

    def jacobian(self, q: np.ndarray) -> np.ndarray:
        return numerical_jacobian(self, q)


def revolute_screw(axis, point) -> np.ndarray:
    """Base-frame screw row (linear, angular) for a revolute joint axis
    through `point`."""
    axis = np.asarray(axis, dtype=float)
    point = np.asarray(point, dtype=float)
    return np.concatenate([-np.cross(axis, point), axis])


def example_serial_chain(limits_scale: float = 1.0) -> SerialChainRobot:
    """7R arm with alternating joint axes, full row rank at its home posture.

    Useful for exercising the joint-limit scaling path with a real Jacobian;
    the benchmark default remains the free-flying gripper.
    """
    z = np.array([0.0, 0.0, 1.0])
    y = np.array([0.0, 1.0, 0.0])
    x = np.array([1.0, 0.0, 0.0])
    axes = [z, y, z, y, z, y, x]
    points = [np.array([0.12 * j, 0.0, 0.3]) for j in range(7)]
    screws = np.array([revolute_screw(a, p) for a, p in zip(axes, points)])
    home = Pose(np.eye(3), np.array([0.84, 0.0, 0.3]))
    q0 = np.array([0.1, 0.25, -0.15, 0.3, 0.2, -0.25, 0.1])
    limits = JointLimits(np.full(7, 2.5 * limits_scale))
    return SerialChainRobot(screws=screws, home=home, q0=q0, limits=limits)


def numerical_jacobian(robot: SerialChainRobot, q: np.ndarray) -> np.ndarray:
    """Central-difference world Jacobian: columns are (d position / d q_j,
    world angular rate), step 1e-6 rad."""
    n = len(q)
    jac = np.zeros((6, n))
    h = JACOBIAN_FD_STEP
    for j in range(n):
        qp = q.copy()
        qm = q.copy()
        qp[j] += h
        qm[j] -= h
        tp = robot.fk(qp)
        tm = robot.fk(qm)
        jac[:3, j] = (tp.translation - tm.translation) / (2.0 * h)
        delta = tp.rotation @ tm.rotation.T
        aa = log_rotation(delta)
        jac[3:, j] = aa.as_rotvec() / (2.0 * h)
    return jac


@dataclass
class SimConfig:
    control_rate: float = 60.0
    max_steps: int = 20000
    rng_seed: int = 0
    # "fail" terminates on slip; "reanchor" re-attaches the markers at the
    # current relative pose (registration is lost) for robustness studies.
    slip_mode: str = "fail"

    def __post_init__(self):
        if self.control_rate <= 0 or self.max_steps <= 0:
            raise ValueError("control_rate and max_steps must be positive")
        if self.slip_mode not in ("fail", "reanchor"):
            raise ValueError(f"unknown slip_mode {self.slip_mode!r}")


@dataclass
class StepRecord:
    """Post-step snapshot plus the command that produced it."""

    step: int
    t: float
    gripper: Pose
    handle: Pose
    estimate: Pose | None
    s: float
    command: Command
    alpha: float
    q: np.ndarray
    qdot: np.ndarray
    dev_mean: float
    dev_max: float
    mode: str


@dataclass
class EpisodeLog:
    object_id: str
    category: str
    method: str
    seed: int
    control_rate: float
    efficiency_scale: float
    success_s: float
    initial_q: np.ndarray = field(default_factory=lambda: np.zeros(6))
    outcome: str = "FAILURE"
    failure_reason: str | None = "timeout"
    reanchors: int = 0
    records: list[StepRecord] = field(default_factory=list)

    @property
    def outcome_label(self) -> str:
        if self.outcome == "SUCCESS":
            return "SUCCESS"
        return f"FAILURE({self.failure_reason})"

    @property
    def final_time(self) -> float:
        return self.records[-1].t if self.records else 0.0

    def s_series(self) -> np.ndarray:
        return np.array([0.0] + [r.s for r in self.records])

    def time_series(self) -> np.ndarray:
        return np.array([0.0] + [r.t for r in self.records])


@dataclass
class SimState:
    gripper: Pose
    q: np.ndarray
    s: float
    contact: ContactState
    reference: ContactState
    markers: np.ndarray
    time: float = 0.0
    step_index: int = 0
    dev_mean: float = 0.0
    dev_max: float = 0.0


@dataclass(frozen=True)
class StepOutcome:
    gripper: Pose
    path_state: PathState
    contact: ContactState
    terminal: bool
    outcome: str | None = None       # SUCCESS / FAILURE when terminal
    failure_reason: str | None = None


def _pose_error(a: Pose, b: Pose) -> float:
    rel = compose(inverse(a), b)
    return float(np.linalg.norm(rel.translation)) + log_rotation(rel.rotation).angle


def grasp_init(obj: ArticulationModel, robot, sensor_cfg: SensorConfig, seed: int) -> SimState:
    """Align the gripper with the handle at the path start and record the
    reference contact with the full grid active."""
    start = obj.pose_at(obj.domain[0])
    if robot.kind == "serial_chain":
        fk0 = robot.fk(robot.q0)
        if _pose_error(fk0, start) > GRASP_POSE_TOL:
            raise ConfigurationError(
                f"serial chain start pose error {_pose_error(fk0, start):.2e} exceeds {GRASP_POSE_TOL}"
            )
        gripper = fk0
        q = robot.q0.copy()
    else:
        gripper = start
        q = pose_coordinates(start)
    reference = sense(Pose.identity(), sensor_cfg, [seed, 0], index=0)
    return SimState(
        gripper=gripper,
        q=q,
        s=obj.domain[0],
        contact=reference,
        reference=reference,
        markers=reference.rest_positions,
    )


def sim_step(
    state: SimState,
    decision: StepDecision,
    obj: ArticulationModel,
    robot,
    sensor_cfg: SensorConfig,
    cfg: SimConfig,
    window: float,
    seed: int,
) -> StepOutcome:
    """Integrate one command exactly, project the handle, re-sense, and check
    the terminal conditions (slip, success, step budget) in that order."""
    cmd = decision.command
    if robot.kind == "serial_chain":
        state.q = state.q + decision.joint_velocities * cmd.duration
        state.gripper = robot.fk(state.q)
    else:
        state.gripper = compose(state.gripper, exp_twist(cmd.twist, cmd.duration))
        # Twist-integrated pose coordinates: continuous by construction, unlike
        # the wrapped rotation log of the pose.
        state.q = state.q + decision.joint_velocities * cmd.duration
    state.step_index += 1
    state.time += cmd.duration

    projected = project_to_path(obj, state.gripper, PathState(state.s), window, state.markers)
    state.s = projected.s
    handle = obj.pose_at(state.s)
    rel = compose(inverse(state.gripper), handle)
    state.contact = sense(rel, sensor_cfg, [seed, state.step_index], index=state.step_index)
    if len(state.contact):
        state.dev_mean, state.dev_max = deviation_stats(state.reference, state.contact)
    else:
        state.dev_mean = state.dev_max = math.nan

    if len(state.contact) and state.dev_max > sensor_cfg.gamma:
        return StepOutcome(state.gripper, projected, state.contact, True, "FAILURE", "slip")
    if success_check(obj, projected):
        return StepOutcome(state.gripper, projected, state.contact, True, "SUCCESS", None)
    if state.step_index >= cfg.max_steps:
        return StepOutcome(state.gripper, projected, state.contact, True, "FAILURE", "timeout")
    return StepOutcome(state.gripper, projected, state.contact, False)


def make_controller(method: str, base: BaseVelocity, control_cfg: ControlConfig,
                    limits: JointLimits, reference: ContactState, gamma: float,
                    grasp_pose: Pose):
    if method == "proactive":
        ctrl = ProactiveController(base, control_cfg, limits, reference)
        ctrl.seed_history(grasp_pose)
        return ctrl
    if method == "reactive":
        return ReactiveController(base, control_cfg, limits, reference, gamma)
    raise ValueError(f"unknown method {method!r}")


def run_episode(
    method: str,
    obj: ArticulationModel,
    robot,
    sensor_cfg: SensorConfig,
    control_cfg: ControlConfig,
    sim_cfg: SimConfig,
    base: BaseVelocity,
    seed: int,
) -> EpisodeLog:
    """Run one seeded episode to its terminal outcome and return the log."""
    dt = 1.0 / sim_cfg.control_rate
    if abs(control_cfg.dt - dt) > 1e-12:
        control_cfg = ControlConfig(
            dt=dt, beta=control_cfg.beta, div_eps=control_cfg.div_eps,
            mode=control_cfg.mode, baseline=control_cfg.baseline,
        )
    state = grasp_init(obj, robot, sensor_cfg, seed)
    speed = float(np.linalg.norm(base.twist.linear))
    window = 2.0 * max(speed, 1e-6) * dt / obj.min_path_speed()
    controller = make_controller(
        method, base, control_cfg, robot.limits, state.reference, sensor_cfg.gamma, state.gripper
    )

    log = EpisodeLog(
        object_id=obj.object_id,
        category=obj.category,
        method=method,
        seed=seed,
        control_rate=sim_cfg.control_rate,
        efficiency_scale=obj.efficiency_scale(),
        success_s=obj.success_s(),
        initial_q=state.q.copy(),
    )

    while True:
        jac = robot.jacobian(state.q)
        try:
            decision = controller.step(state.gripper, state.contact, jac)
        except DegenerateContactError:
            log.outcome, log.failure_reason = "FAILURE", "degenerate"
            break
        except SingularConfigurationError:
            log.outcome, log.failure_reason = "FAILURE", "singularity"
            break

        out = sim_step(state, decision, obj, robot, sensor_cfg, sim_cfg, window, seed)
        dev_mean, dev_max = state.dev_mean, state.dev_max
        log.records.append(
            StepRecord(
                step=state.step_index,
                t=state.time,
                gripper=state.gripper,
                handle=obj.pose_at(state.s),
                estimate=decision.estimate,
                s=state.s,
                command=decision.command,
                alpha=decision.alpha,
                q=state.q.copy(),
                qdot=decision.joint_velocities.copy(),
                dev_mean=dev_mean,
                dev_max=dev_max,
                mode=decision.mode,
            )
        )
        if out.terminal:
            if out.failure_reason == "slip" and sim_cfg.slip_mode == "reanchor":
                # Gel re-settles: fresh attachment at the current relative
                # pose; the accumulated registration is lost.
                state.reference = sense(
                    Pose.identity(), sensor_cfg, [seed, state.step_index, 1],
                    index=state.step_index,
                )
                state.contact = state.reference
                controller.reanchor(state.reference, state.gripper)
                log.reanchors += 1
                if state.step_index < sim_cfg.max_steps:
                    continue
                log.outcome, log.failure_reason = "FAILURE", "timeout"
                break
            log.outcome = out.outcome
            log.failure_reason = out.failure_reason
            break

    return log
