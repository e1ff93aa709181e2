"""Unsupervised discovery of resource-assignment skills for edge-domain
network slicing: a reward-free four-pool simulator, a skill-conditioned
actor-critic agent with a discriminator intrinsic reward, rollout
analysis, and a skill-composition controller."""

from .agent import (Checkpoint, ProgressStats, ReplayBuffer, TrainConfig, Transition,
                    actor_act, augment_observation, critic_value,
                    evaluate_discriminator, intrinsic_reward, sample_skill, train,
                    update)
from .analysis import (CoverageReport, SkillProfile, coverage, pairwise_distinctness,
                       read_skills_csv, rollout_skill, skill_table, write_coverage_csv,
                       write_skills_csv)
from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .config import ConfigError, RunConfig, load_request, load_run_config
from .controller import CompositionResult, SliceRequest, compose, verify
from .env import (DomainState, EnvConfig, TerminalKind, binary_patterns,
                  is_pattern_terminal, max_episode_steps, reset, resource_vector, step)
from .nn import (AdamState, LayerSpec, NumericalError, adam_step, backward, forward,
                 log_softmax, mlp_init, polyak_update)

__version__ = "0.1.0"
