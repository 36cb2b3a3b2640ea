"""Kinematic simulator, tactile servo controllers, and benchmark harness for
1-DOF articulated-object manipulation."""

from .geom import AxisAngle, BezierCurve, Pose, Twist
from .contact import ContactPoint, ContactState, CorrespondenceSet, SensorConfig
from .control import BaseVelocity, Command, ControlConfig, JointLimits
from .objects import (
    ArticulationModel,
    BezierPath,
    HelicalPath,
    PathState,
    PrismaticPath,
    RevolutePath,
)
from .sim import EpisodeLog, FreeFlyingRobot, SerialChainRobot, SimConfig, run_episode

__version__ = "0.1.0"
