"""Minimal MLP core: forward, exact reverse-mode gradients, Adam, Polyak.

Everything is float64 and purely functional: parameter sets are plain
dicts of named arrays, updates return new dicts.  Only fixed feed-forward
topologies are supported, which is all the agent needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

ACTIVATIONS = ("tanh", "relu", "identity")

# A ParameterSet maps names ("w0", "b0", "w1", ...) to float64 arrays.
ParameterSet = dict


class NumericalError(RuntimeError):
    """A loss or gradient stopped being finite."""


@dataclass(frozen=True)
class LayerSpec:
    input_size: int
    output_size: int
    activation: str = "identity"

    def __post_init__(self):
        if self.input_size < 1 or self.output_size < 1:
            raise ValueError(f"layer sizes must be >= 1, got {self.input_size}->{self.output_size}")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}, expected one of {ACTIVATIONS}")


def _check_chain(specs: list[LayerSpec]) -> None:
    if not specs:
        raise ValueError("need at least one layer")
    for i in range(1, len(specs)):
        if specs[i].input_size != specs[i - 1].output_size:
            raise ValueError(
                f"layer {i} expects input size {specs[i].input_size} but layer "
                f"{i - 1} outputs {specs[i - 1].output_size}"
            )


def mlp_init(specs: list[LayerSpec], rng: np.random.Generator) -> ParameterSet:
    """Uniform fan-in-scaled weights in (-1/sqrt(n_in), 1/sqrt(n_in)), zero biases."""
    _check_chain(specs)
    params: ParameterSet = {}
    for i, spec in enumerate(specs):
        scale = 1.0 / math.sqrt(spec.input_size)
        params[f"w{i}"] = rng.uniform(-scale, scale, size=(spec.input_size, spec.output_size))
        params[f"b{i}"] = np.zeros(spec.output_size)
    return params


def specs_from_params(params: ParameterSet, hidden_activation: str = "relu",
                      output_activation: str = "identity") -> list[LayerSpec]:
    """Recover layer specs from parameter shapes for the package's fixed topology
    (every hidden layer shares one activation, the output layer another)."""
    n_layers = len(params) // 2
    specs = []
    for i in range(n_layers):
        w = params[f"w{i}"]
        act = output_activation if i == n_layers - 1 else hidden_activation
        specs.append(LayerSpec(w.shape[0], w.shape[1], act))
    return specs


@dataclass
class Tape:
    """Intermediates cached by forward for the matching backward call."""

    inputs: list = field(default_factory=list)      # input to each layer, shape (B, n_in)
    outputs: list = field(default_factory=list)     # post-activation of each layer
    single: bool = False                            # input was 1-D


def _apply_activation(z: np.ndarray, activation: str) -> np.ndarray:
    if activation == "tanh":
        return np.tanh(z)
    if activation == "relu":
        return np.maximum(z, 0.0)
    return z


def _activation_grad(out: np.ndarray, activation: str) -> np.ndarray:
    # Derivatives expressed through the stored post-activation.
    if activation == "tanh":
        return 1.0 - out * out
    if activation == "relu":
        return (out > 0.0).astype(np.float64)
    return np.ones_like(out)


def forward(params: ParameterSet, specs: list[LayerSpec], x: np.ndarray) -> tuple[np.ndarray, Tape]:
    """Affine-then-activation composition.  Accepts a single input (n,) or a
    batch (B, n); the output matches the input rank."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    h = x[None, :] if single else x
    if h.shape[1] != specs[0].input_size:
        raise ValueError(f"input size {h.shape[1]} does not match first layer ({specs[0].input_size})")
    tape = Tape(single=single)
    for i, spec in enumerate(specs):
        tape.inputs.append(h)
        z = h @ params[f"w{i}"] + params[f"b{i}"]
        h = _apply_activation(z, spec.activation)
        tape.outputs.append(h)
    out = h[0] if single else h
    return out, tape


def backward(params: ParameterSet, specs: list[LayerSpec], tape: Tape,
             output_gradient: np.ndarray) -> tuple[ParameterSet, np.ndarray]:
    """Exact reverse-mode gradients for the forward call that produced ``tape``.

    ``output_gradient`` holds d(objective)/d(output).  Returns the gradient
    parameter set and the gradient with respect to the network input (used
    to chain networks together).
    """
    if len(tape.inputs) != len(specs):
        raise ValueError(f"tape has {len(tape.inputs)} layers, specs have {len(specs)}")
    g = np.asarray(output_gradient, dtype=np.float64)
    if tape.single and g.ndim == 1:
        g = g[None, :]
    if g.shape != tape.outputs[-1].shape:
        raise ValueError(f"output_gradient shape {g.shape} does not match forward output "
                         f"{tape.outputs[-1].shape}")
    grads: ParameterSet = {}
    for i in reversed(range(len(specs))):
        dz = g * _activation_grad(tape.outputs[i], specs[i].activation)
        grads[f"w{i}"] = tape.inputs[i].T @ dz
        grads[f"b{i}"] = dz.sum(axis=0)
        g = dz @ params[f"w{i}"].T
    grad_input = g[0] if tape.single else g
    return grads, grad_input


@dataclass
class AdamState:
    """Per-parameter moment estimates plus the shared step counter."""

    m: ParameterSet
    v: ParameterSet
    step: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    @classmethod
    def for_params(cls, params: ParameterSet, beta1: float = 0.9, beta2: float = 0.999,
                   epsilon: float = 1e-8) -> "AdamState":
        return cls(
            m={k: np.zeros_like(p) for k, p in params.items()},
            v={k: np.zeros_like(p) for k, p in params.items()},
            step=0, beta1=beta1, beta2=beta2, epsilon=epsilon,
        )


def adam_step(params: ParameterSet, grads: ParameterSet, opt: AdamState,
              learning_rate: float) -> tuple[ParameterSet, AdamState]:
    """One bias-corrected Adam update.  Pure: returns new params and state."""
    if set(grads) != set(params):
        raise ValueError(f"gradient names {sorted(grads)} do not match parameters {sorted(params)}")
    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise NumericalError(f"non-finite gradient in {name!r}")
    t = opt.step + 1
    bc1 = 1.0 - opt.beta1 ** t
    bc2 = 1.0 - opt.beta2 ** t
    new_params: ParameterSet = {}
    new_m: ParameterSet = {}
    new_v: ParameterSet = {}
    for name, p in params.items():
        g = grads[name]
        m = opt.beta1 * opt.m[name] + (1.0 - opt.beta1) * g
        v = opt.beta2 * opt.v[name] + (1.0 - opt.beta2) * g * g
        new_m[name] = m
        new_v[name] = v
        new_params[name] = p - learning_rate * (m / bc1) / (np.sqrt(v / bc2) + opt.epsilon)
    return new_params, AdamState(m=new_m, v=new_v, step=t, beta1=opt.beta1,
                                 beta2=opt.beta2, epsilon=opt.epsilon)


def polyak_update(target: ParameterSet, online: ParameterSet, tau: float) -> ParameterSet:
    """target' = tau * online + (1 - tau) * target, element-wise."""
    if set(target) != set(online):
        raise ValueError(f"target names {sorted(target)} do not match online {sorted(online)}")
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    out: ParameterSet = {}
    for name, t_arr in target.items():
        o_arr = online[name]
        if t_arr.shape != o_arr.shape:
            raise ValueError(f"shape mismatch for {name!r}: {t_arr.shape} vs {o_arr.shape}")
        out[name] = tau * o_arr + (1.0 - tau) * t_arr
    return out


def log_softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable log-probabilities along the last axis."""
    z = np.asarray(logits, dtype=np.float64)
    shifted = z - z.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def softplus(x: np.ndarray) -> np.ndarray:
    """log(1 + exp(x)) without overflow."""
    x = np.asarray(x, dtype=np.float64)
    return np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))
