"""Core MDP contracts: states, actions, tasks, transitions, environments.

Observations and actions are flat float vectors. Actions are normalized to
[-1, 1] per dimension and scaled inside each environment, so task definitions
stay reusable across domains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Protocol, Sequence, runtime_checkable

import numpy as np

from .errors import ContractViolationError

# schema_id -> observation dimension
SCHEMAS: dict[str, int] = {
    "manip.inhand": 13,
    "manip.pipe": 13,
    "manip.lightbulb": 13,
    "manip.basketball": 13,
    "manip.pincer": 13,
    "pointmass": 2,
}


@dataclass(frozen=True, slots=True)
class StateVec:
    """Flat observation vector tied to a domain schema."""

    values: np.ndarray
    schema_id: str

    def __post_init__(self):
        dim = SCHEMAS.get(self.schema_id)
        if dim is None:
            raise ContractViolationError(f"unknown schema_id {self.schema_id!r}")
        if self.values.shape != (dim,):
            raise ContractViolationError(
                f"state for schema {self.schema_id!r} must have shape ({dim},), got {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ContractViolationError("state contains non-finite entries")


def validate_action(values: np.ndarray | Sequence[float], dim: int | None = None) -> np.ndarray:
    """Check an action vector: finite, every entry in [-1, 1]."""
    arr = np.asarray(values, dtype=np.float64)
    if dim is not None and arr.shape != (dim,):
        raise ContractViolationError(f"action must have shape ({dim},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractViolationError("action contains non-finite entries")
    if np.any(arr < -1.0) or np.any(arr > 1.0):
        raise ContractViolationError("action entries must lie in [-1, 1]")
    return arr


@dataclass(frozen=True, slots=True)
class ActionVec:
    """Normalized command vector; every entry in [-1, 1]."""

    values: np.ndarray

    def __post_init__(self):
        validate_action(self.values)


@dataclass(frozen=True, slots=True)
class Transition:
    state: np.ndarray
    action: np.ndarray
    reward: float
    next_state: np.ndarray
    task_id: int

    def __post_init__(self):
        if not np.isfinite(self.reward):
            raise ContractViolationError("transition reward must be finite")
        if self.task_id < 0:
            raise ContractViolationError("task_id must be non-negative")


@dataclass(frozen=True, slots=True)
class DiscountedReturnSpec:
    """Discounting and episode length used for evaluation rollouts."""

    gamma: float = 0.99
    horizon: int = 200

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ContractViolationError("gamma must lie in (0, 1)")
        if self.horizon < 1:
            raise ContractViolationError("horizon must be >= 1")


class InitialStateSource:
    """Initial-state distribution for evaluating one task.

    Draws uniformly from an explicit pool of states when one is present
    (e.g. successful end states of upstream tasks) and falls back to the
    task's designed default sampler before any such data exists.
    """

    def __init__(self, default_sampler: Callable[[np.random.Generator], Any], states: list | None = None):
        self.default_sampler = default_sampler
        self.states = list(states) if states else []

    def sample(self, rng: np.random.Generator):
        if self.states:
            idx = int(rng.integers(len(self.states)))
            return self.states[idx]
        return self.default_sampler(rng)


@dataclass(frozen=True, slots=True)
class TaskSpec:
    """One task: its reward, success predicate, and evaluation initial states.

    reward_fn(s, a, s2) and success_fn(s) operate on raw observation vectors
    and must be pure; eval_init yields environment-native states.
    """

    task_id: int
    name: str
    reward_fn: Callable[[np.ndarray, np.ndarray, np.ndarray], float]
    success_fn: Callable[[np.ndarray], bool]
    eval_init: InitialStateSource = field(compare=False)


@runtime_checkable
class Environment(Protocol):
    """Single-owner stepped environment over one uninterrupted stream."""

    schema_id: str
    action_dim: int

    def observe(self) -> StateVec: ...

    def step(self, action: np.ndarray) -> StateVec: ...


def env_step(env: Environment, action: ActionVec | np.ndarray) -> StateVec:
    """Advance `env` one step after validating the action contract."""
    values = action.values if isinstance(action, ActionVec) else np.asarray(action, dtype=np.float64)
    validate_action(values, env.action_dim)
    return env.step(values)


def discounted_return(rewards: Sequence[float], gamma: float) -> float:
    """Sum of gamma^t * r_t. Empty reward sequences return 0."""
    if not (0.0 <= gamma < 1.0):
        raise ContractViolationError("gamma must lie in [0, 1)")
    total = 0.0
    weight = 1.0
    for r in rewards:
        total += weight * float(r)
        weight *= gamma
    return total


def sample_eval_initial(task: TaskSpec, rng: np.random.Generator):
    """Draw an evaluation initial state from the task's source."""
    return task.eval_init.sample(rng)
