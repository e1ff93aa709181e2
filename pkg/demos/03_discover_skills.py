#!/usr/bin/env python3
"""Skill discovery in miniature.

Runs a shortened version of the unsupervised pre-training loop (the full
reference run is 25,000 episodes; see the README for the CLI invocation)
and saves a checkpoint next to this script.  The progress lines show the
discriminator pulling apart the skills: accuracy starts at chance (1/64)
and climbs as the intrinsic reward grows.
"""

from pathlib import Path

from edgeskills import agent, env
from edgeskills.checkpoint import save_checkpoint

OUT = Path(__file__).resolve().parent / "demo_checkpoint.ckpt"

env_config = env.EnvConfig()
train_config = agent.TrainConfig(episodes=4000, seed=0)


def show(stats):
    print(f"episode {stats.episode:>5}/{stats.episodes_total}   "
          f"mean length {stats.mean_episode_length:5.2f}   "
          f"intrinsic reward {stats.mean_intrinsic_reward:7.4f}   "
          f"discriminator accuracy {stats.discriminator_accuracy:6.4f} "
          f"(chance {1 / train_config.n_skills:.4f})")


print(f"discovering {train_config.n_skills} skills over {train_config.episodes} episodes...")
checkpoint = agent.train(env_config, train_config, progress=show)
save_checkpoint(checkpoint, OUT)
print(f"\nsaved checkpoint to {OUT}")
print("next: run 04_profile_and_coverage.py to inspect what the skills assign")
