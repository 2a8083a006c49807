"""Domain families: task lists, initial-state designs, and environment factory.

Each family fixes an ordered task list (the perturbation task last), a forward
task whose mastery is the run's objective, and the predecessor edges used to
source evaluation initial states. Designed default initial-state samplers
cover each task before any training data exists; training runs start from the
domain default (object at a random table position).
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from ..core import InitialStateSource, TaskSpec
from ..errors import ContractViolationError
from .arena import ArenaConfig, ManipEnvironment, ManipState, decode_obs
from .rewards import TASK_TABLE, task_reward, task_success

FAMILY_TASKS: dict[str, list[str]] = {
    "inhand": ["recenter", "lift", "flipup", "reorient", "perturb"],
    "pipe": ["recenter", "lift", "insert1", "insert2", "remove", "perturb"],
    "lightbulb": ["recenter", "lift", "flipup", "bulb_insert", "perturb"],
    "basketball": ["recenter", "lift", "dunk", "perturb"],
    "pincer": ["grasp", "fill_drawer", "pull_drawer", "perturb"],
}

FORWARD_TASK: dict[str, str] = {
    "inhand": "reorient",
    "pipe": "insert2",
    "lightbulb": "bulb_insert",
    "basketball": "dunk",
    "pincer": "fill_drawer",
}

# task -> tasks whose successful outcomes feed its evaluation initial states
PREDECESSORS: dict[str, dict[str, list[str]]] = {
    "inhand": {
        "recenter": ["perturb"],
        "lift": ["recenter"],
        "flipup": ["lift"],
        "reorient": ["flipup"],
        "perturb": ["recenter"],
    },
    "pipe": {
        "recenter": ["perturb"],
        "lift": ["recenter"],
        "insert1": ["lift"],
        "insert2": ["insert1"],
        "remove": ["insert2"],
        "perturb": ["recenter"],
    },
    "lightbulb": {
        "recenter": ["perturb"],
        "lift": ["recenter"],
        "flipup": ["lift"],
        "bulb_insert": ["flipup"],
        "perturb": ["recenter"],
    },
    "basketball": {
        "recenter": ["perturb"],
        "lift": ["recenter"],
        "dunk": ["lift"],
        "perturb": ["recenter"],
    },
    "pincer": {
        "grasp": ["pull_drawer"],
        "fill_drawer": ["grasp"],
        "pull_drawer": ["fill_drawer"],
        "perturb": ["grasp"],
    },
}


def family_default_config(family: str) -> ArenaConfig:
    """Per-family arena defaults; the pincer is deliberately forgiving."""
    if family == "pincer":
        return ArenaConfig(grasp_radius=0.1)
    return ArenaConfig()


def _uniform_hand(rng: np.random.Generator, z_hi: float = 0.4) -> tuple[float, float, float]:
    return (float(rng.uniform(-0.4, 0.4)), float(rng.uniform(-0.4, 0.4)), float(rng.uniform(0.0, z_hi)))


def _table_object(rng: np.random.Generator, off_center: bool) -> tuple[float, float, float]:
    while True:
        x = float(rng.uniform(-0.4, 0.4))
        y = float(rng.uniform(-0.4, 0.4))
        r = math.hypot(x, y)
        if off_center and r < 0.15:
            continue
        if not off_center and r >= 0.08:
            continue
        return (x, y, 0.0)


def _attached_state(rng: np.random.Generator, cfg: ArenaConfig, *, z_range=(0.2, 0.45), xy_span=0.15,
                    wrist=None) -> ManipState:
    x = float(rng.uniform(-xy_span, xy_span))
    y = float(rng.uniform(-xy_span, xy_span))
    z = float(rng.uniform(*z_range))
    hand = (x, y, z)
    obj = (x + cfg.grasp_offset[0], y + cfg.grasp_offset[1], z + cfg.grasp_offset[2])
    w = float(rng.uniform(0.0, math.pi)) if wrist is None else float(wrist)
    return ManipState(hand, w, float(rng.uniform(0.75, 1.0)), obj, float(rng.uniform(-math.pi, math.pi)), True)


def _attached_at(rng: np.random.Generator, cfg: ArenaConfig, point, jitter: float, wrist=None) -> ManipState:
    ox = float(point[0] + rng.uniform(-jitter, jitter))
    oy = float(point[1] + rng.uniform(-jitter, jitter))
    oz = float(min(max(point[2] + rng.uniform(-jitter, jitter), 0.0), 0.6))
    obj = (ox, oy, oz)
    hand = (ox - cfg.grasp_offset[0], oy - cfg.grasp_offset[1], oz - cfg.grasp_offset[2])
    w = float(rng.uniform(0.0, math.pi)) if wrist is None else float(wrist)
    return ManipState(hand, w, float(rng.uniform(0.75, 1.0)), obj, float(rng.uniform(-math.pi, math.pi)), True)


def _tabletop_state(rng: np.random.Generator, *, off_center: bool, hand_near: bool) -> ManipState:
    obj = _table_object(rng, off_center)
    if hand_near:
        hand = (
            float(obj[0] + rng.uniform(-0.1, 0.1)),
            float(obj[1] + rng.uniform(-0.1, 0.1)),
            float(rng.uniform(0.0, 0.15)),
        )
        hand = (min(max(hand[0], -0.5), 0.5), min(max(hand[1], -0.5), 0.5), hand[2])
    else:
        hand = _uniform_hand(rng)
    return ManipState(
        hand,
        float(rng.uniform(0.0, math.pi)),
        float(rng.uniform(0.0, 0.6)),
        obj,
        float(rng.uniform(-math.pi, math.pi)),
        False,
    )


def _pincer_table_state(rng: np.random.Generator, cfg: ArenaConfig) -> ManipState:
    # Object away from the drawer footprint, drawer shut, fingers open.
    while True:
        ox = float(rng.uniform(-0.45, 0.2))
        oy = float(rng.uniform(-0.45, 0.2))
        if math.hypot(ox - cfg.drawer_xyz[0], oy - cfg.drawer_xyz[1]) > cfg.drawer_radius + 0.05:
            break
    hand = (float(rng.uniform(-0.4, 0.4)), float(rng.uniform(-0.4, 0.4)), float(rng.uniform(0.0, 0.3)))
    return ManipState(hand, 0.0, float(rng.uniform(0.0, 0.6)), (ox, oy, 0.0), 0.0, False)


def _pincer_filled_state(rng: np.random.Generator, cfg: ArenaConfig) -> ManipState:
    r = cfg.drawer_radius * 0.5
    obj = (
        float(cfg.drawer_xyz[0] + rng.uniform(-r, r)),
        float(cfg.drawer_xyz[1] + rng.uniform(-r, r)),
        0.0,
    )
    hand = (float(rng.uniform(-0.4, 0.4)), float(rng.uniform(-0.4, 0.4)), float(rng.uniform(0.0, 0.3)))
    return ManipState(hand, 0.0, float(rng.uniform(0.0, 0.6)), obj, 0.0, False)


def designed_init(family: str, task_name: str, cfg: ArenaConfig):
    """Designed default initial-state sampler for evaluating one task."""

    def sampler(rng: np.random.Generator) -> ManipState:
        if family == "pincer":
            if task_name == "fill_drawer":
                return replace(_attached_state(rng, cfg, z_range=(0.0, 0.2), xy_span=0.35, wrist=0.0), obj_theta_z=0.0)
            if task_name == "pull_drawer":
                return _pincer_filled_state(rng, cfg)
            return _pincer_table_state(rng, cfg)
        if task_name in ("recenter", "perturb"):
            return _tabletop_state(rng, off_center=True, hand_near=False)
        if task_name == "lift":
            return _tabletop_state(rng, off_center=False, hand_near=True)
        if task_name == "flipup":
            return _attached_state(rng, cfg, wrist=rng.uniform(0.0, cfg.theta_x_goal - 0.3))
        if task_name in ("reorient", "bulb_insert"):
            return _attached_state(rng, cfg, wrist=cfg.theta_x_goal - rng.uniform(0.0, 0.08))
        if task_name == "insert1":
            return _attached_state(rng, cfg)
        if task_name == "insert2":
            return _attached_at(rng, cfg, cfg.insert_waypoint, 0.03)
        if task_name == "remove":
            return _attached_at(rng, cfg, cfg.insert_goal, 0.02)
        if task_name == "dunk":
            return _attached_state(rng, cfg)
        raise ContractViolationError(f"no designed initial states for {family}/{task_name}")

    return sampler


def domain_start_state(family: str, cfg: ArenaConfig, rng: np.random.Generator) -> ManipState:
    """Training-run start: object at a random table position, nothing grasped."""
    if family == "pincer":
        return _pincer_table_state(rng, cfg)
    return _tabletop_state(rng, off_center=True, hand_near=False)


def make_domain(family: str, cfg: ArenaConfig | None = None, seed: int = 0):
    """Build a surrogate environment and its ordered task list."""
    if family not in FAMILY_TASKS:
        raise ContractViolationError(f"unknown family {family!r}")
    cfg = cfg if cfg is not None else family_default_config(family)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
    init_rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))
    env = ManipEnvironment(family, cfg, rng, domain_start_state(family, cfg, init_rng))

    tasks = []
    for task_id, name in enumerate(FAMILY_TASKS[family]):
        def reward_fn(s, a, s2, _name=name):
            return task_reward(family, _name, decode_obs(s2), cfg)

        def success_fn(s, _name=name):
            return task_success(family, _name, decode_obs(s), cfg)

        tasks.append(
            TaskSpec(
                task_id=task_id,
                name=name,
                reward_fn=reward_fn,
                success_fn=success_fn,
                eval_init=InitialStateSource(designed_init(family, name, cfg)),
            )
        )
    return env, tasks


def forward_task_id(family: str) -> int:
    return FAMILY_TASKS[family].index(FORWARD_TASK[family])


def predecessor_ids(family: str) -> dict[int, list[int]]:
    names = FAMILY_TASKS[family]
    return {
        names.index(task): [names.index(p) for p in preds]
        for task, preds in PREDECESSORS[family].items()
    }


def verify_task_table_covers_families() -> None:
    for family, names in FAMILY_TASKS.items():
        missing = [n for n in names if n not in TASK_TABLE[family]]
        if missing:
            raise ContractViolationError(f"family {family!r} lacks reward entries for {missing}")


verify_task_table_covers_families()
