"""Edge-domain resource pool simulator.

One edge domain owns four resource pools (power, bandwidth, memory,
compute).  States and actions are percentages of each pool.  An episode
starts from a small random allocation and every step adds a bounded
increment to each pool; there is no task reward.  An episode ends when
any pool reaches the cap, or when the allocation shape matches one of
the 16 binary patterns (a "useful" assignment).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Canonical component order for every 4-vector in this package.
RESOURCES = ("power", "bandwidth", "memory", "compute")
N_RESOURCES = len(RESOURCES)

# A ResourceVector is a float64 array of shape (4,) in RESOURCES order.
ResourceVector = np.ndarray


def resource_vector(power: float, bandwidth: float, memory: float, compute: float) -> ResourceVector:
    """Build a validated allocation vector in canonical order."""
    return validate_allocation([power, bandwidth, memory, compute])


def validate_allocation(values) -> ResourceVector:
    """Coerce to a (4,) float64 array; every component must be finite and >= 0."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (N_RESOURCES,):
        raise ValueError(f"expected {N_RESOURCES} components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"allocation components must be finite, got {arr}")
    if np.any(arr < 0):
        raise ValueError(f"allocation components must be >= 0, got {arr}")
    return arr


@dataclass(frozen=True)
class EnvConfig:
    """Bounds and tolerances for one simulated domain.

    Percentages: initial allocations are drawn from [init_low, init_high],
    per-step increments are clamped to [action_low, action_high], and no
    pool ever exceeds ``cap``.  ``rel_tol``/``abs_tol`` control the
    binary-pattern match; ``degenerate_eps`` is the spread below which an
    allocation counts as all-equal.
    """

    init_low: float = 2.0
    init_high: float = 10.0
    action_low: float = 1.0
    action_high: float = 5.0
    cap: float = 20.0
    rel_tol: float = 1e-1
    abs_tol: float = 1e-2
    degenerate_eps: float = 1e-9

    def __post_init__(self):
        if not (0 < self.init_low <= self.init_high < self.cap):
            raise ValueError(
                f"need 0 < init_low <= init_high < cap, got "
                f"init_low={self.init_low}, init_high={self.init_high}, cap={self.cap}"
            )
        if not (0 < self.action_low <= self.action_high):
            raise ValueError(
                f"need 0 < action_low <= action_high, got "
                f"action_low={self.action_low}, action_high={self.action_high}"
            )
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.degenerate_eps <= 0:
            raise ValueError("rel_tol, abs_tol and degenerate_eps must all be > 0")


@dataclass(frozen=True)
class DomainState:
    """Cumulative allocation and the number of steps taken to reach it."""

    allocation: ResourceVector
    step_count: int = 0


class TerminalKind(Enum):
    NONE = "none"
    CAP = "cap"
    PATTERN = "pattern"


def binary_patterns() -> np.ndarray:
    """All 16 binary 4-vectors in lexicographic order, shape (16, 4)."""
    return np.array(list(itertools.product((0.0, 1.0), repeat=N_RESOURCES)))


_PATTERNS = binary_patterns()


def normalize_allocation(allocation: ResourceVector, config: EnvConfig) -> np.ndarray:
    """Min-max normalize across the 4 components.

    An all-equal allocation (spread below ``degenerate_eps``) maps to the
    all-ones vector, the natural limit of a balanced assignment.
    """
    arr = np.asarray(allocation, dtype=np.float64)
    lo = arr.min()
    hi = arr.max()
    if hi - lo < config.degenerate_eps:
        return np.ones(N_RESOURCES)
    return (arr - lo) / (hi - lo)


def is_pattern_terminal(allocation: ResourceVector, config: EnvConfig) -> bool:
    """True iff the normalized allocation is close to any binary pattern.

    Closeness per component i against pattern b:
    ``|n_i - b_i| <= abs_tol + rel_tol * |b_i|``.
    Components are assumed strictly positive.
    """
    n = normalize_allocation(allocation, config)
    within = np.abs(n - _PATTERNS) <= config.abs_tol + config.rel_tol * np.abs(_PATTERNS)
    return bool(within.all(axis=1).any())


def terminal_kind(state: DomainState, config: EnvConfig) -> TerminalKind:
    """Classify a state.  The initial state (step_count 0) is never terminal.

    Cap takes precedence over pattern when both hold.
    """
    if state.step_count == 0:
        return TerminalKind.NONE
    if np.any(state.allocation >= config.cap):
        return TerminalKind.CAP
    if is_pattern_terminal(state.allocation, config):
        return TerminalKind.PATTERN
    return TerminalKind.NONE


def reset(rng: np.random.Generator, config: EnvConfig) -> DomainState:
    """Draw a fresh initial state, each component uniform on [init_low, init_high]."""
    allocation = rng.uniform(config.init_low, config.init_high, size=N_RESOURCES)
    return DomainState(allocation=allocation, step_count=0)


def step(state: DomainState, action: ResourceVector, config: EnvConfig) -> tuple[DomainState, TerminalKind]:
    """Apply one assignment step.

    The action is clamped per component to [action_low, action_high] and
    added to the allocation; components are then clamped to the cap.
    Returns the next state and its terminal kind (cap wins over pattern).
    Stepping a state that is already terminal is a contract violation.
    """
    if terminal_kind(state, config) is not TerminalKind.NONE:
        raise ValueError(
            f"cannot step a terminal state (allocation={state.allocation}, "
            f"step_count={state.step_count})"
        )
    action = np.asarray(action, dtype=np.float64)
    if action.shape != (N_RESOURCES,) or not np.all(np.isfinite(action)):
        raise ValueError(f"action must be 4 finite components, got {action}")
    clamped = np.clip(action, config.action_low, config.action_high)
    raw = state.allocation + clamped
    capped = np.any(raw >= config.cap)
    allocation = np.minimum(raw, config.cap)
    next_state = DomainState(allocation=allocation, step_count=state.step_count + 1)
    if capped:
        kind = TerminalKind.CAP
    elif is_pattern_terminal(allocation, config):
        kind = TerminalKind.PATTERN
    else:
        kind = TerminalKind.NONE
    return next_state, kind


def max_episode_steps(config: EnvConfig) -> int:
    """Hard episode-length bound: the cap rule alone forces termination."""
    return math.ceil((config.cap - config.init_low) / config.action_low)
