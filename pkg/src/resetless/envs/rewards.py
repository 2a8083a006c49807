"""Reward functions and success predicates for every surrogate task.

All rewards are evaluated on the post-transition state. The pipe lift reward
penalizes finger closure distance (the closure scalar stands in for the hand
joint vector); everywhere else the object pose carries the signal. Pincer
rewards are dense shaping toward its grasp/fill/pull cycle. The perturbation
task has no extrinsic reward here; its novelty bonus lives in the trainer.
"""

from __future__ import annotations

import math

from ..errors import ContractViolationError
from .arena import ArenaConfig, ManipState, object_in_drawer

GRAPH_LIFT_HEIGHT = 0.15  # task-graph "lifted" height; reward threshold is cfg.lift_threshold


def _d2(ax: float, ay: float, bx: float, by: float) -> float:
    return math.hypot(ax - bx, ay - by)


def _d3(a: tuple[float, float, float], b: tuple[float, float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2])


# --- shared tabletop rewards ------------------------------------------------

def reward_recenter(s: ManipState, cfg: ArenaConfig) -> float:
    o, h = s.obj_xyz, s.hand_xyz
    return -3.0 * _d2(o[0], o[1], cfg.goal_xy[0], cfg.goal_xy[1]) - _d3(o, h)


def reward_lift(s: ManipState, cfg: ArenaConfig) -> float:
    return -abs(s.obj_xyz[2] - cfg.goal_z)


def reward_flipup(s: ManipState, cfg: ArenaConfig) -> float:
    z = s.obj_xyz[2]
    angle_err = abs(s.wrist_theta_x - cfg.theta_x_goal)
    r = -5.0 * angle_err
    if z < cfg.lift_threshold:
        r -= 50.0
    if angle_err < 0.15 and z > cfg.lift_threshold:
        r += 10.0
    return r


def reward_reorient(s: ManipState, cfg: ArenaConfig) -> float:
    return -abs(s.obj_theta_z - cfg.theta_z_goal)


# --- pipe insertion family ---------------------------------------------------

def reward_pipe_lift(s: ManipState, cfg: ArenaConfig) -> float:
    return -2.0 * abs(s.obj_xyz[2] - cfg.goal_z) - 2.0 * abs(s.closure - cfg.q_goal)


def reward_insert1(s: ManipState, cfg: ArenaConfig) -> float:
    d1 = _d3(s.obj_xyz, cfg.insert_waypoint)
    return -d1 + (10.0 if d1 < 0.1 else 0.0)


def reward_insert2(s: ManipState, cfg: ArenaConfig) -> float:
    d2 = _d3(s.obj_xyz, cfg.insert_goal)
    return -d2 + (10.0 if d2 < 0.1 else 0.0)


def reward_remove(s: ManipState, cfg: ArenaConfig) -> float:
    return -_d3(s.obj_xyz, cfg.arena_center)


# --- lightbulb / basketball --------------------------------------------------

def reward_bulb(s: ManipState, cfg: ArenaConfig) -> float:
    o = s.obj_xyz
    xy = _d2(o[0], o[1], cfg.lamp_goal[0], cfg.lamp_goal[1])
    dz = abs(o[2] - cfg.lamp_goal[2])
    r = -xy - 2.0 * dz
    if xy < 0.1:
        r += 1.0
    if xy < 0.1 and dz < 0.1:
        r += 10.0
    if o[2] < cfg.lift_threshold:
        r -= 1.0
    return r


def reward_basket(s: ManipState, cfg: ArenaConfig) -> float:
    o = s.obj_xyz
    d = _d3(o, cfg.basket_goal)
    r = -d
    if d < 0.2:
        r += 20.0
    if d < 0.1:
        r += 50.0
    if o[2] < cfg.lift_threshold:
        r -= 1.0
    return r


# --- pincer ------------------------------------------------------------------

def reward_grasp(s: ManipState, cfg: ArenaConfig) -> float:
    return -_d3(s.hand_xyz, s.obj_xyz) + (5.0 if s.attached else 0.0)


def reward_fill_drawer(s: ManipState, cfg: ArenaConfig) -> float:
    o = s.obj_xyz
    r = -_d3(o, cfg.drawer_xyz)
    if _d2(o[0], o[1], cfg.drawer_xyz[0], cfg.drawer_xyz[1]) < cfg.drawer_radius:
        r -= s.closure  # open the fingers over the drawer
    if object_in_drawer(s, cfg):
        r += 10.0
    return r


def reward_pull_drawer(s: ManipState, cfg: ArenaConfig) -> float:
    openness = s.obj_theta_z
    r = -_d3(s.hand_xyz, cfg.drawer_handle_xyz) - (1.0 - openness)
    if openness > 0.8:
        r += 10.0
    return r


def reward_perturb(s: ManipState, cfg: ArenaConfig) -> float:
    return 0.0


# --- success predicates -------------------------------------------------------

def centered_3d(s: ManipState, cfg: ArenaConfig) -> bool:
    return _d3(s.obj_xyz, cfg.arena_center) < 0.1


def centered_xy(s: ManipState, cfg: ArenaConfig) -> bool:
    return _d2(s.obj_xyz[0], s.obj_xyz[1], cfg.goal_xy[0], cfg.goal_xy[1]) < 0.1


def success_lift(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.obj_xyz[2] > GRAPH_LIFT_HEIGHT


def success_flipup(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.obj_xyz[2] > cfg.lift_threshold and abs(s.wrist_theta_x - cfg.theta_x_goal) < 0.15


def success_reorient(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.obj_xyz[2] > cfg.lift_threshold and abs(s.obj_theta_z - cfg.theta_z_goal) < 0.1


def success_insert1(s: ManipState, cfg: ArenaConfig) -> bool:
    return _d3(s.obj_xyz, cfg.insert_waypoint) < 0.05


def success_insert2(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.obj_xyz[2] > cfg.lift_threshold and _d3(s.obj_xyz, cfg.insert_goal) < 0.05


def success_remove(s: ManipState, cfg: ArenaConfig) -> bool:
    return _d3(s.obj_xyz, cfg.arena_center) < 0.1


def success_bulb(s: ManipState, cfg: ArenaConfig) -> bool:
    o = s.obj_xyz
    return _d2(o[0], o[1], cfg.lamp_goal[0], cfg.lamp_goal[1]) < 0.1 and abs(o[2] - cfg.lamp_goal[2]) < 0.1


def success_basket(s: ManipState, cfg: ArenaConfig) -> bool:
    o = s.obj_xyz
    return _d2(o[0], o[1], cfg.basket_goal[0], cfg.basket_goal[1]) < 0.1 and abs(o[2] - cfg.basket_goal[2]) < 0.15


def success_grasp(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.attached


def success_fill_drawer(s: ManipState, cfg: ArenaConfig) -> bool:
    return object_in_drawer(s, cfg) and s.obj_theta_z < 0.5


def success_pull_drawer(s: ManipState, cfg: ArenaConfig) -> bool:
    return s.obj_theta_z > 0.8


def success_perturb(s: ManipState, cfg: ArenaConfig) -> bool:
    # Any perturbation outcome is a valid starting point for recovery tasks.
    return True


# family -> task name -> (reward fn, success fn), both over the post state
TASK_TABLE: dict[str, dict[str, tuple]] = {
    "inhand": {
        "recenter": (reward_recenter, centered_3d),
        "lift": (reward_lift, success_lift),
        "flipup": (reward_flipup, success_flipup),
        "reorient": (reward_reorient, success_reorient),
        "perturb": (reward_perturb, success_perturb),
    },
    "pipe": {
        "recenter": (reward_recenter, centered_3d),
        "lift": (reward_pipe_lift, success_lift),
        "insert1": (reward_insert1, success_insert1),
        "insert2": (reward_insert2, success_insert2),
        "remove": (reward_remove, success_remove),
        "perturb": (reward_perturb, success_perturb),
    },
    "lightbulb": {
        "recenter": (reward_recenter, centered_xy),
        "lift": (reward_lift, success_lift),
        "flipup": (reward_flipup, success_flipup),
        "bulb_insert": (reward_bulb, success_bulb),
        "perturb": (reward_perturb, success_perturb),
    },
    "basketball": {
        "recenter": (reward_recenter, centered_xy),
        "lift": (reward_lift, success_lift),
        "dunk": (reward_basket, success_basket),
        "perturb": (reward_perturb, success_perturb),
    },
    "pincer": {
        "grasp": (reward_grasp, success_grasp),
        "fill_drawer": (reward_fill_drawer, success_fill_drawer),
        "pull_drawer": (reward_pull_drawer, success_pull_drawer),
        "perturb": (reward_perturb, success_perturb),
    },
}


def task_reward(family: str, task_name: str, s2: ManipState, cfg: ArenaConfig) -> float:
    try:
        fn, _ = TASK_TABLE[family][task_name]
    except KeyError:
        raise ContractViolationError(f"unknown task {task_name!r} for family {family!r}") from None
    return fn(s2, cfg)


def task_success(family: str, task_name: str, s: ManipState, cfg: ArenaConfig) -> bool:
    try:
        _, fn = TASK_TABLE[family][task_name]
    except KeyError:
        raise ContractViolationError(f"unknown task {task_name!r} for family {family!r}") from None
    return bool(fn(s, cfg))
