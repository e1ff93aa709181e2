#!/usr/bin/env python3
"""What did the skills learn to assign?

Loads the checkpoint written by 03_discover_skills.py (or a path given on
the command line), rolls every skill deterministically from the same
starting allocation, and prints the per-skill assignment table plus the
coverage and distinctness summaries.  Also writes skills.csv/coverage.csv,
the same files the CLI produces.
"""

import sys
from pathlib import Path

import numpy as np

from edgeskills import analysis
from edgeskills.checkpoint import load_checkpoint

here = Path(__file__).resolve().parent
ckpt_path = Path(sys.argv[1]) if len(sys.argv) > 1 else here / "demo_checkpoint.ckpt"
if not ckpt_path.exists():
    sys.exit(f"no checkpoint at {ckpt_path}; run 03_discover_skills.py first")

checkpoint = load_checkpoint(ckpt_path)
profiles = analysis.skill_table(checkpoint)

print(f"{'skill':>5}  {'power':>7} {'bandwidth':>9} {'memory':>7} {'compute':>8}  {'steps':>5}  end")
for p in profiles[:12]:
    vals = "  ".join(f"{v:7.3f}" for v in p.final_allocation)
    print(f"{p.skill:>5}  {vals}  {p.steps:>5}  {p.terminal_kind.value}")
print(f"... ({len(profiles)} skills total)\n")

kinds = [p.terminal_kind.value for p in profiles]
print("terminal kinds:", {k: kinds.count(k) for k in sorted(set(kinds))})

report = analysis.coverage(profiles)
print("\nper-resource coverage of the final allocations:")
for name, cov in report.resources.items():
    bar = "".join("#" if c else "." for c in cov.histogram)
    print(f"  {name:>9}: [{cov.minimum:6.3f}, {cov.maximum:6.3f}]  {bar}")

_, summary = analysis.pairwise_distinctness(profiles)
print(f"\nskill pairs at L1 distance >= {summary['threshold']}: "
      f"{summary['fraction_distinct']:.1%} of {summary['n_pairs']}")

analysis.write_skills_csv(profiles, here / "skills.csv")
analysis.write_coverage_csv(report, here / "coverage.csv")
print(f"\nwrote {here / 'skills.csv'} and {here / 'coverage.csv'}")
