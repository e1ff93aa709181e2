#!/usr/bin/env python3
"""Tour of the simulated edge domain.

Shows how episodes start, how percentage assignments accumulate, and the
two ways an episode ends: a resource pool hitting the 20% cap, or the
allocation shape matching one of the 16 binary patterns.
"""

import numpy as np

from edgeskills import env
from edgeskills.env import DomainState, EnvConfig, TerminalKind

config = EnvConfig()
rng = np.random.default_rng(7)

print("resource order:", env.RESOURCES)
print("episode bound:", env.max_episode_steps(config), "steps\n")

# A fresh episode: each pool starts somewhere in [2, 10]%.
state = env.reset(rng, config)
print("initial allocation:", np.round(state.allocation, 3))

# Walk with random in-range actions until the episode ends.
step = 0
while True:
    action = rng.uniform(config.action_low, config.action_high, size=4)
    state, kind = env.step(state, action, config)
    step += 1
    print(f"step {step}: +{np.round(action, 2)} -> {np.round(state.allocation, 3)}  [{kind.value}]")
    if kind is not TerminalKind.NONE:
        break

print("\nthe 16 binary patterns a useful allocation can match:")
print(env.binary_patterns().astype(int))

# Pattern matching works on the min-max normalized allocation.
for alloc in ([2.0, 10.0, 10.0, 10.0], [4.0, 4.0, 4.0, 12.0], [5.0, 6.0, 7.0, 8.0]):
    alloc = np.array(alloc)
    normalized = env.normalize_allocation(alloc, config)
    hit = env.is_pattern_terminal(alloc, config)
    print(f"{alloc} normalizes to {np.round(normalized, 3)} -> pattern terminal: {hit}")

# Hitting the cap ends the episode even when no pattern matches.
state = DomainState(np.array([19.5, 5.0, 5.0, 5.0]), step_count=0)
state, kind = env.step(state, np.ones(4), config)
print(f"\ncap rule: allocation clamps to {state.allocation}, terminal kind = {kind.value}")
