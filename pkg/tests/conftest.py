import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from edgeskills import agent, env

settings.register_profile("repo", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def env_config():
    return env.EnvConfig()


@pytest.fixture(scope="session")
def fresh_checkpoint():
    """Untrained default-shape checkpoint, shared read-only."""
    return agent.fresh_checkpoint(env.EnvConfig(), agent.TrainConfig(seed=11))


def zero_actor_checkpoint(n_skills=64):
    """Checkpoint whose actor weights are all zero: mean and log-std heads
    output exactly zero, so the deterministic action is the interval midpoint."""
    ckpt = agent.fresh_checkpoint(env.EnvConfig(), agent.TrainConfig(seed=3, n_skills=n_skills))
    zeroed = {k: np.zeros_like(v) for k, v in ckpt.params["actor"].items()}
    params = dict(ckpt.params)
    params["actor"] = zeroed
    return agent.Checkpoint(env_config=ckpt.env_config, train_config=ckpt.train_config,
                            params=params, episodes_completed=0)
