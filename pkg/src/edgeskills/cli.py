"""Command line entry point.

Exit codes: 0 success, 1 infeasible composition, 2 input error,
3 numerical failure during training.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .agent import ProgressStats, train
from .analysis import (coverage, read_skills_csv, skill_table, write_coverage_csv,
                       write_skills_csv)
from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .config import ConfigError, load_request, load_run_config, parse_vector
from .controller import compose
from .env import DomainState
from .nn import NumericalError


def _print_progress(stats: ProgressStats) -> None:
    print(f"episode {stats.episode}/{stats.episodes_total}  "
          f"mean_len {stats.mean_episode_length:.2f}  "
          f"mean_intrinsic {stats.mean_intrinsic_reward:.4f}  "
          f"disc_acc {stats.discriminator_accuracy:.4f}")


def cmd_train(args) -> int:
    run = load_run_config(args.config)
    train_config = run.train
    try:
        if args.seed is not None:
            train_config = replace(train_config, seed=args.seed)
        if args.episodes is not None:
            train_config = replace(train_config, episodes=args.episodes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    checkpoint = train(run.env, train_config, progress=_print_progress)
    save_checkpoint(checkpoint, args.out)
    print(f"wrote checkpoint ({checkpoint.episodes_completed} episodes) to {args.out}")
    return 0


def cmd_skills(args) -> int:
    checkpoint = load_checkpoint(args.ckpt)
    init_state = None
    if args.init is not None:
        init_state = DomainState(parse_vector(args.init), step_count=0)
    profiles = skill_table(checkpoint, init_state)
    write_skills_csv(profiles, args.out)
    print(f"wrote {len(profiles)} skill profiles to {args.out}")
    return 0


def cmd_coverage(args) -> int:
    profiles = read_skills_csv(args.skills)
    report = coverage(profiles)
    write_coverage_csv(report, args.out)
    for name, cov in report.resources.items():
        print(f"{name}: min {cov.minimum:.6f}  max {cov.maximum:.6f}  span {cov.span:.6f}")
    print(f"wrote coverage table to {args.out}")
    return 0


def cmd_compose(args) -> int:
    profiles = read_skills_csv(args.skills)
    request = load_request(args.request)
    result = compose(profiles, request)
    print(f"status = {result.status}")
    print(f"sequence = {', '.join(str(s) for s in result.sequence) if result.sequence else '(empty)'}")
    print(f"total = {', '.join(f'{v:.6f}' for v in result.total)}")
    return 0 if result.status == "satisfied" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeskills",
        description="Discover and use resource-assignment skills for edge-domain slicing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="run skill discovery and write a checkpoint")
    p.add_argument("--config", required=True, help="run config file (may be empty for defaults)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--episodes", type=int, default=None, help="override the episode count")
    p.add_argument("--out", required=True, help="checkpoint output path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("skills", help="roll out every skill and write skills.csv")
    p.add_argument("--ckpt", required=True, help="checkpoint path")
    p.add_argument("--out", required=True, help="skills.csv output path")
    p.add_argument("--init", default=None, metavar="a,b,c,d",
                   help="evaluation initial state (default 4,4,4,4)")
    p.set_defaults(func=cmd_skills)

    p = sub.add_parser("coverage", help="summarize per-resource coverage of a skills.csv")
    p.add_argument("--skills", required=True, help="skills.csv path")
    p.add_argument("--out", required=True, help="coverage.csv output path")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("compose", help="satisfy a slice request with a skill sequence")
    p.add_argument("--skills", required=True, help="skills.csv path")
    p.add_argument("--request", required=True, help="request file path")
    p.set_defaults(func=cmd_compose)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CheckpointError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
