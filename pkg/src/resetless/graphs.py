"""Task-graph meta-controllers: total state machines picking the next task.

Each query is a pure function of (state, previous task) implementing a fixed
if/elif chain; the first matching branch wins and the final branch catches
everything, so every valid state maps to a task. Strict inequalities
throughout. The in-hand and pipe chains test centering with the full 3D
object-to-center distance; the lightbulb and basketball chains use the
planar distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .envs.arena import ArenaConfig, ManipState, object_in_drawer
from .envs.domains import FAMILY_TASKS, predecessor_ids
from .errors import ContractViolationError


@dataclass(frozen=True, slots=True)
class GraphThresholds:
    """Predicate constants shared by all family graphs."""

    lift_height: float = 0.15
    center_tol: float = 0.1
    angle_tol: float = 0.1
    insert_tol: float = 0.05
    drawer_open: float = 0.5

    def __post_init__(self):
        for name in ("lift_height", "center_tol", "angle_tol", "insert_tol", "drawer_open"):
            if getattr(self, name) <= 0:
                raise ContractViolationError(f"threshold {name} must be positive")


def _dist3(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2])


def query_inhand(s: ManipState, cfg: ArenaConfig, th: GraphThresholds) -> str:
    is_lifted = s.obj_xyz[2] > th.lift_height
    is_upright = abs(s.wrist_theta_x - cfg.theta_x_goal) < th.angle_tol
    not_centered = _dist3(s.obj_xyz, cfg.arena_center) > th.center_tol
    prev = FAMILY_TASKS["inhand"][s.prev_task] if 0 <= s.prev_task < len(FAMILY_TASKS["inhand"]) else None
    if is_upright and is_lifted:
        return "reorient"
    elif is_lifted:
        return "flipup"
    elif not_centered and prev == "recenter":
        return "perturb"
    elif not_centered:
        return "recenter"
    else:
        return "lift"


def query_pipe(s: ManipState, cfg: ArenaConfig, th: GraphThresholds) -> str:
    is_lifted = s.obj_xyz[2] > th.lift_height
    is_inserted = _dist3(s.obj_xyz, cfg.insert_goal) < th.insert_tol
    close_to_waypoint = _dist3(s.obj_xyz, cfg.insert_waypoint) < th.insert_tol
    not_centered = _dist3(s.obj_xyz, cfg.arena_center) > th.center_tol
    prev = FAMILY_TASKS["pipe"][s.prev_task] if 0 <= s.prev_task < len(FAMILY_TASKS["pipe"]) else None
    if is_inserted:
        return "remove"
    elif close_to_waypoint:
        return "insert2"
    elif is_lifted:
        return "insert1"
    elif not_centered and prev == "recenter":
        return "perturb"
    elif not_centered:
        return "recenter"
    else:
        return "lift"


def query_lightbulb(s: ManipState, cfg: ArenaConfig, th: GraphThresholds) -> str:
    is_centered = math.hypot(s.obj_xyz[0] - cfg.arena_center[0], s.obj_xyz[1] - cfg.arena_center[1]) < th.center_tol
    is_lifted = s.obj_xyz[2] > th.lift_height
    is_facing_up = abs(s.wrist_theta_x - cfg.theta_x_goal) < th.angle_tol
    prev = FAMILY_TASKS["lightbulb"][s.prev_task] if 0 <= s.prev_task < len(FAMILY_TASKS["lightbulb"]) else None
    if not is_centered and not is_lifted:
        if prev == "recenter":
            return "perturb"
        else:
            return "recenter"
    elif is_centered and not is_lifted:
        return "lift"
    elif is_lifted and not is_facing_up:
        return "flipup"
    else:
        return "bulb_insert"


def query_basketball(s: ManipState, cfg: ArenaConfig, th: GraphThresholds) -> str:
    is_centered = math.hypot(s.obj_xyz[0] - cfg.arena_center[0], s.obj_xyz[1] - cfg.arena_center[1]) < th.center_tol
    is_lifted = s.obj_xyz[2] > th.lift_height
    prev = FAMILY_TASKS["basketball"][s.prev_task] if 0 <= s.prev_task < len(FAMILY_TASKS["basketball"]) else None
    if not is_centered and not is_lifted:
        if prev == "recenter":
            return "perturb"
        else:
            return "recenter"
    elif is_centered and not is_lifted:
        return "lift"
    else:
        return "dunk"


def query_pincer(s: ManipState, cfg: ArenaConfig, th: GraphThresholds) -> str:
    drawer_closed = s.obj_theta_z < th.drawer_open
    prev = FAMILY_TASKS["pincer"][s.prev_task] if 0 <= s.prev_task < len(FAMILY_TASKS["pincer"]) else None
    if s.attached:
        return "fill_drawer"
    elif object_in_drawer(s, cfg) and drawer_closed:
        return "pull_drawer"
    elif prev == "grasp":
        return "perturb"
    else:
        return "grasp"


_QUERIES = {
    "inhand": query_inhand,
    "pipe": query_pipe,
    "lightbulb": query_lightbulb,
    "basketball": query_basketball,
    "pincer": query_pincer,
}


@dataclass(frozen=True, slots=True)
class TaskGraph:
    """Deterministic meta-controller G(state, prev_task) -> task id."""

    family: str
    cfg: ArenaConfig
    thresholds: GraphThresholds

    @property
    def task_index_map(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(FAMILY_TASKS[self.family])}

    @property
    def num_tasks(self) -> int:
        return len(FAMILY_TASKS[self.family])

    def query(self, s: ManipState) -> int:
        name = _QUERIES[self.family](s, self.cfg, self.thresholds)
        return self.task_index_map[name]

    def query_name(self, s: ManipState) -> str:
        return _QUERIES[self.family](s, self.cfg, self.thresholds)

    def predecessors(self) -> dict[int, list[int]]:
        return predecessor_ids(self.family)


def build_graph(family: str, cfg: ArenaConfig, thresholds: GraphThresholds | None = None) -> TaskGraph:
    if family not in _QUERIES:
        raise ContractViolationError(f"no task graph for family {family!r}")
    return TaskGraph(family, cfg, thresholds or GraphThresholds())
