"""Minimal reverse-mode autodiff over numpy arrays.

A Tape records operations in execution order; backward() walks the records in
reverse, so no graph search is needed. The primitive set is deliberately
closed to exactly what the actor-critic losses compose: affine, relu, tanh,
exp, log, square, elementwise min, add/sub/mul (with scalar and bias
broadcasting), column concat/slice/sum, clip, and mean. Anything else fails
at graph-construction time because no such primitive exists.

Gradient arrays are never mutated in place: accumulation rebinds to a fresh
sum, so backward functions may hand the same array to several parents.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractViolationError


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_backward")

    def __init__(self, data: np.ndarray, requires_grad: bool):
        self.data = data
        self.grad = None
        self.requires_grad = requires_grad
        self._backward = None

    @property
    def shape(self):
        return self.data.shape


def _acc(t: Tensor, g: np.ndarray) -> None:
    if t.requires_grad:
        t.grad = g if t.grad is None else t.grad + g


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum `g` down to `shape` (inverse of numpy broadcasting)."""
    if g.shape == shape:
        return g
    extra = g.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


class Tape:
    """Operation recorder; one Tape per loss evaluation."""

    def __init__(self):
        self._nodes: list[Tensor] = []

    # --- leaves ---------------------------------------------------------

    def const(self, data: np.ndarray) -> Tensor:
        return Tensor(np.asarray(data), requires_grad=False)

    def param(self, data: np.ndarray) -> Tensor:
        return Tensor(data, requires_grad=True)

    def _out(self, data, needs: bool, backward) -> Tensor:
        out = Tensor(data, needs)
        if needs:
            out._backward = backward
            self._nodes.append(out)
        return out

    # --- primitives -----------------------------------------------------

    def affine(self, x: Tensor, w: Tensor, b: Tensor) -> Tensor:
        if x.data.shape[1] != w.data.shape[0]:
            raise ContractViolationError(
                f"affine dimension mismatch: input has {x.data.shape[1]} columns, weight expects {w.data.shape[0]}"
            )
        data = x.data @ w.data + b.data
        needs = x.requires_grad or w.requires_grad or b.requires_grad

        def backward(g):
            if x.requires_grad:
                _acc(x, g @ w.data.T)
            if w.requires_grad:
                _acc(w, x.data.T @ g)
            if b.requires_grad:
                _acc(b, g.sum(axis=0))

        return self._out(data, needs, backward)

    def relu(self, x: Tensor) -> Tensor:
        data = np.maximum(x.data, 0.0)

        def backward(g):
            _acc(x, g * (x.data > 0))

        return self._out(data, x.requires_grad, backward)

    def tanh(self, x: Tensor) -> Tensor:
        data = np.tanh(x.data)

        def backward(g):
            _acc(x, g * (1.0 - data * data))

        return self._out(data, x.requires_grad, backward)

    def exp(self, x: Tensor) -> Tensor:
        data = np.exp(x.data)

        def backward(g):
            _acc(x, g * data)

        return self._out(data, x.requires_grad, backward)

    def log(self, x: Tensor) -> Tensor:
        data = np.log(x.data)

        def backward(g):
            _acc(x, g / x.data)

        return self._out(data, x.requires_grad, backward)

    def square(self, x: Tensor) -> Tensor:
        def backward(g):
            _acc(x, g * (2.0 * x.data))

        return self._out(x.data * x.data, x.requires_grad, backward)

    def clip(self, x: Tensor, lo: float, hi: float) -> Tensor:
        data = np.clip(x.data, lo, hi)

        def backward(g):
            _acc(x, g * ((x.data >= lo) & (x.data <= hi)))

        return self._out(data, x.requires_grad, backward)

    def minimum(self, a: Tensor, b: Tensor) -> Tensor:
        take_a = a.data <= b.data
        data = np.where(take_a, a.data, b.data)
        needs = a.requires_grad or b.requires_grad

        def backward(g):
            if a.requires_grad:
                _acc(a, g * take_a)
            if b.requires_grad:
                _acc(b, g * ~take_a)

        return self._out(data, needs, backward)

    def add(self, a: Tensor, b) -> Tensor:
        if isinstance(b, (int, float)):
            def backward(g):
                _acc(a, g)

            return self._out(a.data + b, a.requires_grad, backward)
        data = a.data + b.data
        needs = a.requires_grad or b.requires_grad

        def backward(g):
            if a.requires_grad:
                _acc(a, _unbroadcast(g, a.data.shape))
            if b.requires_grad:
                _acc(b, _unbroadcast(g, b.data.shape))

        return self._out(data, needs, backward)

    def sub(self, a: Tensor, b: Tensor) -> Tensor:
        data = a.data - b.data
        needs = a.requires_grad or b.requires_grad

        def backward(g):
            if a.requires_grad:
                _acc(a, _unbroadcast(g, a.data.shape))
            if b.requires_grad:
                _acc(b, _unbroadcast(-g, b.data.shape))

        return self._out(data, needs, backward)

    def mul(self, a: Tensor, b) -> Tensor:
        if isinstance(b, (int, float)):
            def backward(g):
                _acc(a, g * b)

            return self._out(a.data * b, a.requires_grad, backward)
        data = a.data * b.data
        needs = a.requires_grad or b.requires_grad

        def backward(g):
            if a.requires_grad:
                _acc(a, _unbroadcast(g * b.data, a.data.shape))
            if b.requires_grad:
                _acc(b, _unbroadcast(g * a.data, b.data.shape))

        return self._out(data, needs, backward)

    def concat_cols(self, a: Tensor, b: Tensor) -> Tensor:
        data = np.concatenate([a.data, b.data], axis=1)
        needs = a.requires_grad or b.requires_grad
        na = a.data.shape[1]

        def backward(g):
            if a.requires_grad:
                _acc(a, g[:, :na])
            if b.requires_grad:
                _acc(b, g[:, na:])

        return self._out(data, needs, backward)

    def slice_cols(self, x: Tensor, lo: int, hi: int) -> Tensor:
        data = x.data[:, lo:hi]

        def backward(g):
            full = np.zeros_like(x.data)
            full[:, lo:hi] = g
            _acc(x, full)

        return self._out(data, x.requires_grad, backward)

    def sum_cols(self, x: Tensor) -> Tensor:
        data = x.data.sum(axis=1, keepdims=True)

        def backward(g):
            _acc(x, np.broadcast_to(g, x.data.shape))

        return self._out(data, x.requires_grad, backward)

    def mean(self, x: Tensor) -> Tensor:
        data = np.asarray(x.data.mean())

        def backward(g):
            _acc(x, np.full(x.data.shape, float(g) / x.data.size, dtype=x.data.dtype))

        return self._out(data, x.requires_grad, backward)

    # --- reverse pass ----------------------------------------------------

    def backward(self, loss: Tensor) -> None:
        if loss.data.ndim != 0:
            raise ContractViolationError("backward expects a scalar loss")
        loss.grad = np.asarray(1.0, dtype=loss.data.dtype)
        for node in reversed(self._nodes):
            if node.grad is not None:
                node._backward(node.grad)
