"""Multilayer perceptrons (ReLU hidden, linear output) and the squashed-
Gaussian policy head, with both a plain-numpy forward and a tape forward."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolationError
from .tape import Tape, Tensor

LOG_STD_LO = -20.0
LOG_STD_HI = 2.0
SQUASH_EPS = 1e-6
_LOG_2PI = math.log(2.0 * math.pi)


class Mlp:
    """Affine+ReLU stack; parameters are plain float arrays."""

    def __init__(self, layer_sizes, rng: np.random.Generator | None = None, final_scale: float = 1.0,
                 dtype=np.float64):
        if len(layer_sizes) < 2:
            raise ContractViolationError("an MLP needs at least input and output sizes")
        self.layer_sizes = tuple(int(n) for n in layer_sizes)
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        rng = rng if rng is not None else np.random.default_rng(0)
        for i, (n_in, n_out) in enumerate(zip(self.layer_sizes[:-1], self.layer_sizes[1:])):
            lim = 1.0 / math.sqrt(n_in)
            w = rng.uniform(-lim, lim, size=(n_in, n_out)).astype(dtype)
            b = rng.uniform(-lim, lim, size=n_out).astype(dtype)
            if i == len(self.layer_sizes) - 2 and final_scale != 1.0:
                w *= final_scale
                b *= final_scale
            self.weights.append(w)
            self.biases.append(b)

    @property
    def in_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def out_dim(self) -> int:
        return self.layer_sizes[-1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Deterministic forward pass; x is (batch, in_dim)."""
        if x.ndim != 2 or x.shape[1] != self.in_dim:
            raise ContractViolationError(f"input must be (batch, {self.in_dim}), got {x.shape}")
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            h = h @ w + b
            if i < last:
                np.maximum(h, 0.0, out=h)
        return h

    def tape_forward(self, tape: Tape, x: Tensor, trainable: bool = True):
        """Forward through the tape; returns (output, parameter tensors).

        With trainable=False the weights enter as constants, so backward still
        flows to the input (needed for policy gradients through frozen
        critics) but no parameter gradients are computed.
        """
        wrap = tape.param if trainable else tape.const
        params = []
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            tw, tb = wrap(w), wrap(b)
            params.extend((tw, tb))
            h = tape.affine(h, tw, tb)
            if i < last:
                h = tape.relu(h)
        return h, params

    def param_dict(self, prefix: str) -> dict[str, np.ndarray]:
        d = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            d[f"{prefix}/w{i}"] = w
            d[f"{prefix}/b{i}"] = b
        return d

    def load_param_dict(self, prefix: str, values: dict[str, np.ndarray]) -> None:
        for i in range(len(self.weights)):
            self.weights[i][...] = values[f"{prefix}/w{i}"]
            self.biases[i][...] = values[f"{prefix}/b{i}"]

    def copy_from(self, other: "Mlp") -> None:
        for dst, src in zip(self.weights + self.biases, other.weights + other.biases):
            dst[...] = src


def soft_update(target: Mlp, online: Mlp, tau: float) -> None:
    """target <- tau * online + (1 - tau) * target, elementwise."""
    for t, o in zip(target.weights + target.biases, online.weights + online.biases):
        if t.shape != o.shape:
            raise ContractViolationError("target/online parameter shapes differ")
        t *= 1.0 - tau
        t += tau * o


@dataclass(frozen=True, slots=True)
class GaussianPolicyHead:
    """Mean and clamped log-std produced by one policy forward pass."""

    mean: np.ndarray
    log_std: np.ndarray


def head_from_trunk(trunk_out: np.ndarray, action_dim: int) -> GaussianPolicyHead:
    if trunk_out.shape[1] != 2 * action_dim:
        raise ContractViolationError("policy trunk must emit 2 * action_dim values")
    mean = trunk_out[:, :action_dim]
    log_std = np.clip(trunk_out[:, action_dim:], LOG_STD_LO, LOG_STD_HI)
    return GaussianPolicyHead(mean, log_std)


def squash_with_noise(head: GaussianPolicyHead, xi: np.ndarray):
    """Deterministic tanh-squash of mean + std * xi; returns (action, log_prob).

    log_prob is the Gaussian density of the pre-squash sample plus the tanh
    change-of-variables correction, summed over action dimensions.
    """
    std = np.exp(head.log_std)
    u = head.mean + std * xi
    action = np.tanh(u)
    gauss = (-0.5 * xi * xi - head.log_std - 0.5 * _LOG_2PI).sum(axis=1)
    correction = np.log(1.0 - action * action + SQUASH_EPS).sum(axis=1)
    return action, gauss - correction


def sample_squashed(head: GaussianPolicyHead, rng: np.random.Generator):
    """Draw one squashed-Gaussian action batch; actions lie strictly in (-1, 1)."""
    xi = rng.standard_normal(head.mean.shape)
    return squash_with_noise(head, xi)


def log_prob_of(head: GaussianPolicyHead, action: np.ndarray) -> np.ndarray:
    """Density of a given squashed action (inverse-tanh path)."""
    a = np.clip(action, -1.0 + 1e-12, 1.0 - 1e-12)
    u = np.arctanh(a)
    std = np.exp(head.log_std)
    xi = (u - head.mean) / std
    gauss = (-0.5 * xi * xi - head.log_std - 0.5 * _LOG_2PI).sum(axis=1)
    correction = np.log(1.0 - a * a + SQUASH_EPS).sum(axis=1)
    return gauss - correction
