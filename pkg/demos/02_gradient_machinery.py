#!/usr/bin/env python3
"""The differentiable core, checked against finite differences.

Builds a small MLP, backpropagates an objective through it, compares every
gradient entry with central finite differences, then minimizes a toy
quadratic with Adam and shows Polyak target tracking.
"""

import numpy as np

from edgeskills import nn

rng = np.random.default_rng(0)

specs = [nn.LayerSpec(4, 12, "tanh"), nn.LayerSpec(12, 12, "relu"), nn.LayerSpec(12, 3)]
params = nn.mlp_init(specs, rng)
x = rng.standard_normal(4)
out_grad = rng.standard_normal(3)

out, tape = nn.forward(params, specs, x)
grads, input_grad = nn.backward(params, specs, tape, out_grad)
print("network output:", np.round(out, 4))

# every analytic gradient entry vs (J(p+h) - J(p-h)) / 2h
h = 1e-5
worst = 0.0
for name, p in params.items():
    it = np.nditer(p, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        orig = p[idx]
        p[idx] = orig + h
        up, _ = nn.forward(params, specs, x)
        p[idx] = orig - h
        down, _ = nn.forward(params, specs, x)
        p[idx] = orig
        fd = float(out_grad @ (up - down)) / (2 * h)
        scale = max(abs(fd), abs(grads[name][idx]), 1e-8)
        worst = max(worst, abs(fd - grads[name][idx]) / scale)
print(f"worst relative gradient error vs finite differences: {worst:.2e}")

# Adam on a quadratic: pull w toward 3
w = {"w": np.array([0.0])}
opt = nn.AdamState.for_params(w)
for step in range(300):
    grad = {"w": 2.0 * (w["w"] - 3.0)}
    w, opt = nn.adam_step(w, grad, opt, learning_rate=0.05)
    if (step + 1) % 100 == 0:
        print(f"adam step {step + 1}: w = {w['w'][0]:.4f}")

# Polyak tracking: the target drifts slowly toward the online parameters
target = {"w": np.array([0.0])}
online = {"w": np.array([1.0])}
for _ in range(5):
    target = nn.polyak_update(target, online, tau=0.5)
    print("target after polyak(0.5):", round(target["w"][0], 4))
