from .arena import (
    ACTION_DIM,
    OBS_DIM,
    ArenaConfig,
    ManipAction,
    ManipEnvironment,
    ManipState,
    decode_obs,
    encode_obs,
    object_in_drawer,
    step_kinematics,
)
from .domains import (
    FAMILY_TASKS,
    FORWARD_TASK,
    PREDECESSORS,
    designed_init,
    domain_start_state,
    family_default_config,
    forward_task_id,
    make_domain,
    predecessor_ids,
)
from .rewards import GRAPH_LIFT_HEIGHT, TASK_TABLE, task_reward, task_success

__all__ = [
    "ACTION_DIM",
    "OBS_DIM",
    "ArenaConfig",
    "ManipAction",
    "ManipEnvironment",
    "ManipState",
    "decode_obs",
    "encode_obs",
    "object_in_drawer",
    "step_kinematics",
    "FAMILY_TASKS",
    "FORWARD_TASK",
    "PREDECESSORS",
    "designed_init",
    "domain_start_state",
    "family_default_config",
    "forward_task_id",
    "make_domain",
    "predecessor_ids",
    "GRAPH_LIFT_HEIGHT",
    "TASK_TABLE",
    "task_reward",
    "task_success",
]
