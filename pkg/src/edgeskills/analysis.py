"""Evaluation of a trained checkpoint.

Rolls each skill deterministically from a fixed initial state, then
summarizes how distinct the skills are and how much of each resource
pool's value range they cover.  CSV files are the plotting contract.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import env as envmod
from .agent import Checkpoint, augment_observation, policy_action
from .env import DomainState, EnvConfig, TerminalKind

# Evaluation rollouts all start from the same state so skills are compared
# on equal footing.  With a smallest per-step assignment of 1, starting at 4
# makes the lowest reachable final allocation 5, the bottom of the range the
# discovered skills are expected to span (cap-bound skills supply the top).
DEFAULT_EVAL_INIT = (4.0, 4.0, 4.0, 4.0)

SKILLS_CSV_HEADER = ["skill_id", "power_pct", "bandwidth_pct", "memory_pct",
                     "compute_pct", "steps", "terminal_kind"]


@dataclass
class SkillProfile:
    """Deterministic rollout result for one skill."""

    skill: int
    final_allocation: np.ndarray
    steps: int
    terminal_kind: TerminalKind
    trajectory: list | None = None


@dataclass
class ResourceCoverage:
    sorted_values: np.ndarray
    minimum: float
    maximum: float
    span: float
    histogram: np.ndarray
    bin_edges: np.ndarray


@dataclass
class CoverageReport:
    resources: dict = field(default_factory=dict)   # resource name -> ResourceCoverage


def _validate_init_state(init_state: DomainState, config: EnvConfig) -> None:
    alloc = envmod.validate_allocation(init_state.allocation)
    if np.any(alloc < config.init_low) or np.any(alloc >= config.cap):
        raise ValueError(
            f"init state {alloc} outside env bounds [{config.init_low}, {config.cap})"
        )


def rollout_skill(checkpoint: Checkpoint, skill: int, init_state: DomainState) -> SkillProfile:
    """Roll the mean-action policy for one skill until termination."""
    config = checkpoint.env_config
    _validate_init_state(init_state, config)
    n_skills = checkpoint.train_config.n_skills
    bound = envmod.max_episode_steps(config)
    state = init_state
    trajectory = [state.allocation.copy()]
    while True:
        obs = augment_observation(state.allocation, skill, config.cap, n_skills)
        action, _ = policy_action(checkpoint.params["actor"], obs, deterministic=True)
        state, kind = envmod.step(state, action, config)
        trajectory.append(state.allocation.copy())
        if kind is not TerminalKind.NONE:
            return SkillProfile(skill=skill, final_allocation=state.allocation,
                                steps=len(trajectory) - 1, terminal_kind=kind,
                                trajectory=trajectory)
        if len(trajectory) - 1 > bound:
            raise AssertionError(f"skill {skill} rollout exceeded the {bound}-step bound")


def skill_table(checkpoint: Checkpoint, init_state: DomainState | None = None) -> list[SkillProfile]:
    """One profile per skill, all from the same initial state, by skill index."""
    if init_state is None:
        init_state = DomainState(np.array(DEFAULT_EVAL_INIT), step_count=0)
    return [rollout_skill(checkpoint, skill, init_state)
            for skill in range(checkpoint.train_config.n_skills)]


def pairwise_distinctness(profiles: list[SkillProfile],
                          threshold: float = 1.0) -> tuple[np.ndarray, dict]:
    """L1 distance between final allocations for every skill pair.

    The summary reports the fraction of pairs at or above ``threshold``
    percentage points, a measurable stand-in for "the skills differ".
    """
    if len(profiles) < 2:
        raise ValueError("need at least 2 profiles")
    finals = np.array([p.final_allocation for p in profiles])
    dist = np.abs(finals[:, None, :] - finals[None, :, :]).sum(axis=2)
    iu = np.triu_indices(len(profiles), k=1)
    pair_dists = dist[iu]
    summary = {
        "n_pairs": int(pair_dists.size),
        "threshold": float(threshold),
        "fraction_distinct": float((pair_dists >= threshold).mean()),
        "min_distance": float(pair_dists.min()),
        "median_distance": float(np.median(pair_dists)),
    }
    return dist, summary


def coverage(profiles: list[SkillProfile], cap: float = 20.0) -> CoverageReport:
    """Per-resource spread of the final allocations, with a 1%-wide histogram.

    Bins are [k, k+1) for k = 0..cap, so allocations exactly at the cap get
    their own bin instead of merging into the one below.
    """
    if not profiles:
        raise ValueError("need at least 1 profile")
    finals = np.array([p.final_allocation for p in profiles])
    edges = np.arange(0.0, cap + 2.0)
    report = CoverageReport()
    for i, name in enumerate(envmod.RESOURCES):
        values = np.sort(finals[:, i])
        hist, _ = np.histogram(values, bins=edges)
        report.resources[name] = ResourceCoverage(
            sorted_values=values,
            minimum=float(values[0]),
            maximum=float(values[-1]),
            span=float(values[-1] - values[0]),
            histogram=hist,
            bin_edges=edges,
        )
    return report


# -- CSV contract -------------------------------------------------------------

def write_skills_csv(profiles: list[SkillProfile], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SKILLS_CSV_HEADER)
        for p in profiles:
            writer.writerow([
                p.skill,
                *(f"{v:.6f}" for v in p.final_allocation),
                p.steps,
                p.terminal_kind.value,
            ])


def read_skills_csv(path) -> list[SkillProfile]:
    """Load profiles back from skills.csv (trajectories are not stored)."""
    path = Path(path)
    if not path.exists():
        raise ValueError(f"skills file not found: {path}")
    profiles = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != SKILLS_CSV_HEADER:
            missing = set(SKILLS_CSV_HEADER) - set(header or [])
            raise ValueError(
                f"{path}: unexpected header {header}, missing columns {sorted(missing)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(SKILLS_CSV_HEADER):
                raise ValueError(
                    f"{path} line {lineno}: expected {len(SKILLS_CSV_HEADER)} columns, "
                    f"got {len(row)}"
                )
            try:
                kind = TerminalKind(row[6])
                profiles.append(SkillProfile(
                    skill=int(row[0]),
                    final_allocation=np.array([float(v) for v in row[1:5]]),
                    steps=int(row[5]),
                    terminal_kind=kind,
                ))
            except ValueError as exc:
                raise ValueError(f"{path} line {lineno}: {exc}") from exc
    return profiles


def write_coverage_csv(report: CoverageReport, path) -> None:
    """Long table of per-skill values followed by a min/max/span summary block."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["resource", "skill_rank", "value"])
        for name, cov in report.resources.items():
            for rank, value in enumerate(cov.sorted_values):
                writer.writerow([name, rank, f"{value:.6f}"])
        writer.writerow([])
        writer.writerow(["resource", "min", "max", "span"])
        for name, cov in report.resources.items():
            writer.writerow([name, f"{cov.minimum:.6f}", f"{cov.maximum:.6f}",
                             f"{cov.span:.6f}"])
