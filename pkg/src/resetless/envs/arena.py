"""Kinematic surrogate of the hand-arm arena.

A single hand moves in a box, can attach a tabletop object when the fingers
close around it, and drops it (with lateral scatter) when they open. There is
no contact simulation: the object moves only while attached, and otherwise
rests on the floor or at a goal fixture. The pincer family reuses the same
state layout, storing drawer openness in the object-rotation slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..core import SCHEMAS, StateVec, validate_action
from ..errors import ContractViolationError

# Per-step actuation limits and the drop scatter scale, in arena units.
MAX_HAND_STEP = 0.05
MAX_WRIST_STEP = 0.1
MAX_CLOSURE_STEP = 0.1
MAX_THETA_STEP = 0.1
DROP_NOISE = 0.05

X_LO, X_HI = -0.5, 0.5
Y_LO, Y_HI = -0.5, 0.5
Z_LO, Z_HI = 0.0, 0.6
WRIST_LO, WRIST_HI = 0.0, math.pi

ACTION_DIM = 6
OBS_DIM = 13

CLOSE_TO_ATTACH = 0.7  # closure above this (while in reach) grabs the object
WRIST_GATE = 0.15  # in-hand rotation works only this close to the wrist goal

MANIP_FAMILIES = ("inhand", "pipe", "lightbulb", "basketball", "pincer")


@dataclass(frozen=True, slots=True)
class ManipState:
    """Full observable state of the surrogate arena.

    For the pincer family `obj_theta_z` holds drawer openness in [0, 1] and
    `wrist_theta_x` is inert. `prev_task` is the last executed task id (-1
    before any task ran); it feeds the task-graph predicates only and is not
    part of the policy observation.
    """

    hand_xyz: tuple[float, float, float]
    wrist_theta_x: float
    closure: float
    obj_xyz: tuple[float, float, float]
    obj_theta_z: float
    attached: bool
    prev_task: int = -1


@dataclass(frozen=True, slots=True)
class ManipAction:
    """Normalized kinematic deltas; every entry in [-1, 1]."""

    d_hand_xyz: tuple[float, float, float]
    d_wrist: float
    d_closure: float
    d_obj_theta_z: float

    def as_array(self) -> np.ndarray:
        return np.array([*self.d_hand_xyz, self.d_wrist, self.d_closure, self.d_obj_theta_z])

    @staticmethod
    def from_array(a: np.ndarray) -> "ManipAction":
        return ManipAction((float(a[0]), float(a[1]), float(a[2])), float(a[3]), float(a[4]), float(a[5]))


@dataclass(frozen=True, slots=True)
class ArenaConfig:
    """Geometry, goals, and grasp constants for one domain family."""

    lift_threshold: float = 0.1
    goal_xy: tuple[float, float] = (0.0, 0.0)
    goal_z: float = 0.3
    theta_x_goal: float = math.pi
    theta_z_goal: float = math.pi / 2
    q_goal: float = 0.8
    insert_waypoint: tuple[float, float, float] = (0.3, 0.0, 0.3)
    insert_goal: tuple[float, float, float] = (0.4, 0.0, 0.3)
    arena_center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    basket_goal: tuple[float, float, float] = (0.35, 0.35, 0.3)
    lamp_goal: tuple[float, float, float] = (0.3, 0.3, 0.4)
    grasp_radius: float = 0.05
    drop_closure: float = 0.5
    grasp_offset: tuple[float, float, float] = (0.0, 0.0, 0.0)
    drawer_xyz: tuple[float, float, float] = (0.3, 0.3, 0.0)
    drawer_handle_xyz: tuple[float, float, float] = (0.3, 0.15, 0.0)
    drawer_radius: float = 0.1

    def __post_init__(self):
        if self.lift_threshold <= 0:
            raise ContractViolationError("lift_threshold must be positive")
        for name in ("insert_waypoint", "insert_goal", "basket_goal", "lamp_goal", "drawer_xyz"):
            x, y, z = getattr(self, name)
            if not (X_LO <= x <= X_HI and Y_LO <= y <= Y_HI and Z_LO <= z <= Z_HI):
                raise ContractViolationError(f"{name} lies outside arena bounds")


def _clip(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def _dist3(a: tuple[float, float, float], b: tuple[float, float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2])


def object_in_drawer(state: ManipState, cfg: ArenaConfig) -> bool:
    """Pincer predicate: released object resting inside the drawer footprint."""
    if state.attached:
        return False
    dx = state.obj_xyz[0] - cfg.drawer_xyz[0]
    dy = state.obj_xyz[1] - cfg.drawer_xyz[1]
    return math.hypot(dx, dy) < cfg.drawer_radius


def _at_fixture(obj: tuple[float, float, float], cfg: ArenaConfig, family: str) -> bool:
    """Released objects stay put at these fixtures instead of falling."""
    if family == "pipe":
        return _dist3(obj, cfg.insert_goal) < 0.05
    if family == "lightbulb":
        return _dist3(obj, cfg.lamp_goal) < 0.05
    if family == "basketball":
        return _dist3(obj, cfg.basket_goal) < 0.05
    return False


def step_kinematics(
    state: ManipState, action: ManipAction, cfg: ArenaConfig, rng: np.random.Generator, family: str = "inhand"
) -> ManipState:
    """One kinematic step. Inputs are clipped to bounds, never rejected.

    Order: actuate hand/wrist/closure, resolve attach, track or drop the
    object, then family extras (in-hand rotation or drawer actuation). The
    rng is consumed only on drop events so action-identical streams match.
    """
    a = action.as_array()
    hx = _clip(state.hand_xyz[0] + MAX_HAND_STEP * _clip(a[0], -1, 1), X_LO, X_HI)
    hy = _clip(state.hand_xyz[1] + MAX_HAND_STEP * _clip(a[1], -1, 1), Y_LO, Y_HI)
    hz = _clip(state.hand_xyz[2] + MAX_HAND_STEP * _clip(a[2], -1, 1), Z_LO, Z_HI)
    wrist = _clip(state.wrist_theta_x + MAX_WRIST_STEP * _clip(a[3], -1, 1), WRIST_LO, WRIST_HI)
    closure = _clip(state.closure + MAX_CLOSURE_STEP * _clip(a[4], -1, 1), 0.0, 1.0)

    hand = (hx, hy, hz)
    obj = state.obj_xyz
    theta_z = state.obj_theta_z
    attached = state.attached

    if attached and closure < cfg.drop_closure:
        # Drop: the object falls straight down with lateral scatter, unless a
        # fixture at its current position holds it in place.
        attached = False
        if family == "pincer" or not _at_fixture(obj, cfg, family):
            nx, ny = rng.normal(0.0, DROP_NOISE, size=2)
            obj = (_clip(obj[0] + nx, X_LO, X_HI), _clip(obj[1] + ny, Y_LO, Y_HI), 0.0)
    elif not attached and closure > CLOSE_TO_ATTACH:
        grab = (hx - cfg.grasp_offset[0], hy - cfg.grasp_offset[1], hz - cfg.grasp_offset[2])
        blocked = family == "pincer" and object_in_drawer(state, cfg) and state.obj_theta_z < 0.5
        if not blocked and _dist3(grab, obj) < cfg.grasp_radius:
            attached = True

    if attached:
        obj = (hx + cfg.grasp_offset[0], hy + cfg.grasp_offset[1], hz + cfg.grasp_offset[2])

    if family == "pincer":
        # theta_z slot is drawer openness, driven only near the handle; a
        # released object landing in the drawer trips the lid shut.
        near_handle = math.hypot(hx - cfg.drawer_handle_xyz[0], hy - cfg.drawer_handle_xyz[1]) < 0.1
        if near_handle:
            theta_z = _clip(theta_z + MAX_THETA_STEP * _clip(a[5], -1, 1), 0.0, 1.0)
        if not attached and state.attached:
            dx = obj[0] - cfg.drawer_xyz[0]
            dy = obj[1] - cfg.drawer_xyz[1]
            if math.hypot(dx, dy) < cfg.drawer_radius:
                theta_z = 0.0
    elif attached and abs(wrist - cfg.theta_x_goal) < WRIST_GATE:
        theta_z = _clip(theta_z + MAX_THETA_STEP * _clip(a[5], -1, 1), -math.pi, math.pi)

    return ManipState(hand, wrist, closure, obj, theta_z, attached, state.prev_task)


def encode_obs(state: ManipState) -> np.ndarray:
    """13-dim observation: hand pose, closure, object pose, attach flag, and
    the object-minus-hand offset (redundant but flattens the approach task)."""
    h, o = state.hand_xyz, state.obj_xyz
    return np.array(
        [
            h[0], h[1], h[2],
            state.wrist_theta_x,
            state.closure,
            o[0], o[1], o[2],
            state.obj_theta_z,
            1.0 if state.attached else 0.0,
            o[0] - h[0], o[1] - h[1], o[2] - h[2],
        ]
    )


def decode_obs(obs: np.ndarray, prev_task: int = -1) -> ManipState:
    """Inverse of encode_obs (prev_task is not observable and must be given)."""
    return ManipState(
        (float(obs[0]), float(obs[1]), float(obs[2])),
        float(obs[3]),
        float(obs[4]),
        (float(obs[5]), float(obs[6]), float(obs[7])),
        float(obs[8]),
        bool(obs[9] > 0.5),
        prev_task,
    )


class ManipEnvironment:
    """Single-owner surrogate environment for one domain family."""

    def __init__(self, family: str, cfg: ArenaConfig, rng: np.random.Generator, state: ManipState):
        if family not in MANIP_FAMILIES:
            raise ContractViolationError(f"unknown family {family!r}")
        self.family = family
        self.cfg = cfg
        self.rng = rng
        self.state = state
        self.schema_id = f"manip.{family}"
        self.action_dim = ACTION_DIM
        self.step_count = 0
        assert SCHEMAS[self.schema_id] == OBS_DIM

    def observe(self) -> StateVec:
        return StateVec(encode_obs(self.state), self.schema_id)

    def step(self, action: np.ndarray) -> StateVec:
        values = validate_action(action, self.action_dim)
        self.state = step_kinematics(self.state, ManipAction.from_array(values), self.cfg, self.rng, self.family)
        self.step_count += 1
        return self.observe()

    def set_state(self, state: ManipState) -> None:
        self.state = state

    def mark_prev_task(self, task_id: int) -> None:
        self.state = replace(self.state, prev_task=task_id)
