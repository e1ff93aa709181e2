"""Skill composition for slice requests.

A request names per-resource lower bounds (and optional upper bounds);
the controller picks a sequence of discovered skills whose summed final
allocations satisfy them.  Skills are atomic assignment bundles, so
composition is additive.  Selection is greedy on deficit reduction, with
an exhaustive search over single skills and pairs as a completeness
backstop for short solutions the greedy path can miss.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import env as envmod
from .analysis import SkillProfile

# Slack for floating-point bound comparisons, in percentage points.
BOUND_EPS = 1e-9

DEFAULT_POOL_CAPACITY = (100.0, 100.0, 100.0, 100.0)


@dataclass(frozen=True)
class SliceRequest:
    service_type: str
    minimum: np.ndarray
    maximum: np.ndarray | None = None
    pool_capacity: np.ndarray = field(default_factory=lambda: np.array(DEFAULT_POOL_CAPACITY))

    def __post_init__(self):
        object.__setattr__(self, "minimum", envmod.validate_allocation(self.minimum))
        object.__setattr__(self, "pool_capacity", envmod.validate_allocation(self.pool_capacity))
        if self.maximum is not None:
            object.__setattr__(self, "maximum", envmod.validate_allocation(self.maximum))
            if np.any(self.minimum > self.maximum):
                raise ValueError(
                    f"minimum {self.minimum} exceeds maximum {self.maximum}"
                )
        if np.any(self.minimum > self.pool_capacity):
            raise ValueError(
                f"minimum {self.minimum} exceeds pool capacity {self.pool_capacity}"
            )

    def upper_bound(self) -> np.ndarray:
        if self.maximum is None:
            return self.pool_capacity
        return np.minimum(self.maximum, self.pool_capacity)


@dataclass
class CompositionResult:
    status: str                       # "satisfied" or "infeasible"
    sequence: list[int]               # skill ids in selection order
    total: np.ndarray


def _deficit(minimum: np.ndarray, total: np.ndarray) -> np.ndarray:
    return np.maximum(minimum - total, 0.0)


def _satisfied(minimum: np.ndarray, total: np.ndarray) -> bool:
    return bool(_deficit(minimum, total).sum() <= BOUND_EPS)


def compose(skill_table: list[SkillProfile], request: SliceRequest,
            max_sequence_length: int = 8) -> CompositionResult:
    """Select a sequence of skills whose summed allocations meet the request.

    Greedy loop: at each step pick the skill that stays under the upper
    bounds and removes the most remaining deficit, ties to the lowest
    skill index.  If the greedy path stalls, single skills and pairs are
    searched exhaustively before reporting infeasible.
    """
    if not skill_table:
        raise ValueError("skill table is empty")
    if max_sequence_length < 1:
        raise ValueError(f"max_sequence_length must be >= 1, got {max_sequence_length}")
    profiles = sorted(skill_table, key=lambda p: p.skill)
    upper = request.upper_bound()

    total = np.zeros(envmod.N_RESOURCES)
    sequence: list[int] = []
    while len(sequence) < max_sequence_length:
        if _satisfied(request.minimum, total):
            return CompositionResult(status="satisfied", sequence=sequence, total=total)
        deficit_sum = _deficit(request.minimum, total).sum()
        best = None
        best_reduction = 0.0
        for p in profiles:
            candidate = total + p.final_allocation
            if np.any(candidate > upper + BOUND_EPS):
                continue
            reduction = deficit_sum - _deficit(request.minimum, candidate).sum()
            if reduction > best_reduction + BOUND_EPS:
                best = p
                best_reduction = reduction
        if best is None:
            break
        sequence.append(best.skill)
        total = total + best.final_allocation
    if _satisfied(request.minimum, total):
        return CompositionResult(status="satisfied", sequence=sequence, total=total)

    fallback = _short_sequence_search(profiles, request, upper,
                                      min(2, max_sequence_length))
    if fallback is not None:
        return fallback
    return CompositionResult(status="infeasible", sequence=sequence, total=total)


def _short_sequence_search(profiles: list[SkillProfile], request: SliceRequest,
                           upper: np.ndarray, depth: int) -> CompositionResult | None:
    """Exhaustive search over sequences of length <= depth (depth <= 2)."""
    def admissible(total):
        return not np.any(total > upper + BOUND_EPS)

    for p in profiles:
        total = p.final_allocation.copy()
        if admissible(total) and _satisfied(request.minimum, total):
            return CompositionResult(status="satisfied", sequence=[p.skill], total=total)
    if depth >= 2:
        for i, a in enumerate(profiles):
            for b in profiles[i:]:
                total = a.final_allocation + b.final_allocation
                if admissible(total) and _satisfied(request.minimum, total):
                    return CompositionResult(status="satisfied",
                                             sequence=[a.skill, b.skill], total=total)
    return None


def verify(result: CompositionResult, skill_table: list[SkillProfile],
           request: SliceRequest) -> bool:
    """Independently recompute the total and re-check every bound."""
    by_id = {p.skill: p for p in skill_table}
    total = np.zeros(envmod.N_RESOURCES)
    for skill in result.sequence:
        if skill not in by_id:
            return False
        total = total + by_id[skill].final_allocation
    if not np.allclose(total, result.total, rtol=0.0, atol=BOUND_EPS):
        return False
    if result.status == "satisfied":
        upper = request.upper_bound()
        if np.any(total < request.minimum - BOUND_EPS):
            return False
        if np.any(total > upper + BOUND_EPS):
            return False
    return True
