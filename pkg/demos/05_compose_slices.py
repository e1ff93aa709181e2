#!/usr/bin/env python3
"""Serving slice requests by composing skills.

A slice request names per-resource lower bounds (and optionally upper
bounds).  The controller stacks discovered skills until the bounds are
met, then an independent verifier re-checks the arithmetic.  Uses the
skills.csv written by 04_profile_and_coverage.py, or any path given on
the command line.
"""

import sys
from pathlib import Path

import numpy as np

from edgeskills.analysis import read_skills_csv
from edgeskills.controller import SliceRequest, compose, verify

here = Path(__file__).resolve().parent
skills_path = Path(sys.argv[1]) if len(sys.argv) > 1 else here / "skills.csv"
if not skills_path.exists():
    sys.exit(f"no skill table at {skills_path}; run 04_profile_and_coverage.py first")

table = read_skills_csv(skills_path)
print(f"loaded {len(table)} skills from {skills_path}\n")

requests = [
    SliceRequest("best-effort", minimum=np.array([10.0, 10.0, 10.0, 10.0])),
    SliceRequest("bandwidth-heavy", minimum=np.array([5.0, 30.0, 5.0, 5.0])),
    SliceRequest("tight-budget", minimum=np.array([12.0, 12.0, 12.0, 12.0]),
                 maximum=np.array([25.0, 25.0, 25.0, 25.0])),
    SliceRequest("impossible", minimum=np.array([1.0, 1.0, 1.0, 1.0]),
                 maximum=np.array([2.0, 2.0, 2.0, 2.0])),
]

for request in requests:
    result = compose(table, request)
    print(f"{request.service_type!r}: minimum {request.minimum}"
          + (f", maximum {request.maximum}" if request.maximum is not None else ""))
    print(f"  -> {result.status}, sequence {result.sequence}, "
          f"total {np.round(result.total, 3)}")
    print(f"  -> verifier accepts: {verify(result, table, request)}\n")
