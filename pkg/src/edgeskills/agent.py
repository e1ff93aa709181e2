"""Skill discovery agent: entropy-regularized actor-critic with a
discriminator-driven intrinsic reward.

The policy is conditioned on a latent skill index and squashes Gaussian
samples into the environment's action interval.  Twin critics with Polyak
targets stabilize the bootstrapped value, and a discriminator predicting
the skill from the visited state supplies the reward, so no task reward
is ever needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import env as envmod
from . import nn
from .env import EnvConfig, TerminalKind
from .nn import AdamState, NumericalError, ParameterSet

HIDDEN_WIDTH = 64
LOG_STD_MIN = -5.0
LOG_STD_MAX = 2.0
LOG_2PI = math.log(2.0 * math.pi)

NETWORK_NAMES = ("actor", "critic1", "critic2", "target1", "target2", "discriminator")
_TRAINED = ("actor", "critic1", "critic2", "discriminator")

_KIND_CODES = {TerminalKind.NONE: 0, TerminalKind.CAP: 1, TerminalKind.PATTERN: 2}
_KIND_FROM_CODE = {v: k for k, v in _KIND_CODES.items()}


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of the skill-discovery run."""

    n_skills: int = 64
    episodes: int = 25_000
    learning_rate: float = 1e-5
    gamma: float = 0.99
    alpha: float = 0.01
    tau: float = 0.001
    batch_size: int = 256
    buffer_capacity: int = 100_000
    updates_per_step: int = 1
    warmup_transitions: int = 1000
    seed: int = 0
    log_q_floor: float = -20.0

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not (0.0 < self.tau <= 1.0):
            raise ValueError(f"tau must be in (0, 1], got {self.tau}")
        if self.n_skills < 2:
            raise ValueError(f"need at least 2 skills, got {self.n_skills}")
        if self.batch_size < 1 or self.batch_size > self.buffer_capacity:
            raise ValueError(
                f"need 1 <= batch_size <= buffer_capacity, got "
                f"batch_size={self.batch_size}, buffer_capacity={self.buffer_capacity}"
            )
        if self.episodes < 0:
            raise ValueError(f"episodes must be >= 0, got {self.episodes}")
        if self.learning_rate <= 0.0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.updates_per_step < 0:
            raise ValueError(f"updates_per_step must be >= 0, got {self.updates_per_step}")
        if self.warmup_transitions < self.batch_size:
            raise ValueError(
                f"warmup_transitions ({self.warmup_transitions}) must cover at least "
                f"one batch ({self.batch_size})"
            )


@dataclass(frozen=True)
class Transition:
    """One stored environment step."""

    state: np.ndarray
    skill: int
    action: np.ndarray
    next_state: np.ndarray
    done: bool
    terminal_kind: TerminalKind

    def __post_init__(self):
        if self.done != (self.terminal_kind is not TerminalKind.NONE):
            raise ValueError(
                f"done={self.done} inconsistent with terminal_kind={self.terminal_kind}"
            )


@dataclass
class Checkpoint:
    """Immutable snapshot of a run: configs plus all six parameter sets."""

    env_config: EnvConfig
    train_config: TrainConfig
    params: dict
    episodes_completed: int = 0


@dataclass
class Batch:
    states: np.ndarray       # (B, 4)
    skills: np.ndarray       # (B,) int
    actions: np.ndarray      # (B, 4)
    next_states: np.ndarray  # (B, 4)
    dones: np.ndarray        # (B,) float 0/1

    def __len__(self) -> int:
        return self.states.shape[0]


class ReplayBuffer:
    """Fixed-capacity ring buffer; eviction is strictly oldest-first."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._states = np.zeros((capacity, envmod.N_RESOURCES))
        self._skills = np.zeros(capacity, dtype=np.int64)
        self._actions = np.zeros((capacity, envmod.N_RESOURCES))
        self._next_states = np.zeros((capacity, envmod.N_RESOURCES))
        self._dones = np.zeros(capacity)
        self._kinds = np.zeros(capacity, dtype=np.int8)
        self._size = 0
        self._cursor = 0

    def __len__(self) -> int:
        return self._size

    def push(self, state, skill, action, next_state, done, terminal_kind) -> None:
        i = self._cursor
        self._states[i] = state
        self._skills[i] = skill
        self._actions[i] = action
        self._next_states[i] = next_state
        self._dones[i] = float(done)
        self._kinds[i] = _KIND_CODES[terminal_kind]
        self._cursor = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        if self._size == 0:
            raise ValueError("cannot sample from an empty buffer")
        idx = rng.integers(0, self._size, size=batch_size)
        return Batch(
            states=self._states[idx],
            skills=self._skills[idx],
            actions=self._actions[idx],
            next_states=self._next_states[idx],
            dones=self._dones[idx],
        )


def sample_skill(rng: np.random.Generator, n_skills: int) -> int:
    """Uniform draw of a latent skill index."""
    if n_skills < 2:
        raise ValueError(f"need at least 2 skills, got {n_skills}")
    return int(rng.integers(0, n_skills))


def skill_one_hot(skill: int, n_skills: int) -> np.ndarray:
    if not (0 <= skill < n_skills):
        raise ValueError(f"skill {skill} out of range [0, {n_skills})")
    vec = np.zeros(n_skills)
    vec[skill] = 1.0
    return vec


def augment_observation(state: np.ndarray, skill: int, cap: float, n_skills: int) -> np.ndarray:
    """Policy input: cap-scaled state followed by the skill one-hot."""
    scaled = np.asarray(state, dtype=np.float64) / cap
    return np.concatenate([scaled, skill_one_hot(skill, n_skills)])


def _augment_batch(states: np.ndarray, skills: np.ndarray, cap: float, n_skills: int) -> np.ndarray:
    b = states.shape[0]
    out = np.zeros((b, envmod.N_RESOURCES + n_skills))
    out[:, : envmod.N_RESOURCES] = states / cap
    out[np.arange(b), envmod.N_RESOURCES + skills] = 1.0
    return out


def intrinsic_reward(discriminator_log_probs: np.ndarray, skill: int, n_skills: int,
                     log_q_floor: float = -20.0) -> float:
    """log q(z|s') - log p(z) with a floor on log q, for a uniform skill prior."""
    lp = np.asarray(discriminator_log_probs, dtype=np.float64)
    if lp.shape != (n_skills,):
        raise ValueError(f"expected {n_skills} log-probs, got shape {lp.shape}")
    if not (0 <= skill < n_skills):
        raise ValueError(f"skill {skill} out of range [0, {n_skills})")
    return float(max(lp[skill], log_q_floor) + math.log(n_skills))


# -- network construction ---------------------------------------------------

def actor_layer_specs(n_skills: int) -> list[nn.LayerSpec]:
    obs = envmod.N_RESOURCES + n_skills
    return [
        nn.LayerSpec(obs, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, 2 * envmod.N_RESOURCES, "identity"),
    ]


def critic_layer_specs(n_skills: int) -> list[nn.LayerSpec]:
    obs = envmod.N_RESOURCES + n_skills + envmod.N_RESOURCES
    return [
        nn.LayerSpec(obs, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, 1, "identity"),
    ]


def discriminator_layer_specs(n_skills: int) -> list[nn.LayerSpec]:
    return [
        nn.LayerSpec(envmod.N_RESOURCES, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, HIDDEN_WIDTH, "relu"),
        nn.LayerSpec(HIDDEN_WIDTH, n_skills, "identity"),
    ]


def init_networks(config: TrainConfig, rng: np.random.Generator) -> dict:
    """Fresh parameter sets for all six networks; targets start as copies."""
    params = {
        "actor": nn.mlp_init(actor_layer_specs(config.n_skills), rng),
        "critic1": nn.mlp_init(critic_layer_specs(config.n_skills), rng),
        "critic2": nn.mlp_init(critic_layer_specs(config.n_skills), rng),
        "discriminator": nn.mlp_init(discriminator_layer_specs(config.n_skills), rng),
    }
    params["target1"] = {k: v.copy() for k, v in params["critic1"].items()}
    params["target2"] = {k: v.copy() for k, v in params["critic2"].items()}
    return {name: params[name] for name in NETWORK_NAMES}


def fresh_checkpoint(env_config: EnvConfig, config: TrainConfig) -> Checkpoint:
    init_rng = _rng_streams(config.seed)[0]
    return Checkpoint(env_config=env_config, train_config=config,
                      params=init_networks(config, init_rng), episodes_completed=0)


def _rng_streams(seed: int) -> list[np.random.Generator]:
    # Fixed stream layout: init, env, skill, policy noise, updates.
    children = np.random.SeedSequence(seed).spawn(5)
    return [np.random.default_rng(s) for s in children]


# -- squashed Gaussian policy -----------------------------------------------

# Affine map from tanh output in (-1, 1) onto the action interval (1, 5).
ACTION_MID = 3.0
ACTION_HALF = 2.0


@dataclass
class _PolicySample:
    mean: np.ndarray
    raw_log_std: np.ndarray
    log_std: np.ndarray
    sigma: np.ndarray
    eps: np.ndarray
    u: np.ndarray            # pre-squash sample
    y: np.ndarray            # tanh(u), also the critics' action input
    action: np.ndarray
    log_prob: np.ndarray     # (B,)
    tape: nn.Tape


def _policy_sample(actor_params: ParameterSet, obs: np.ndarray, eps: np.ndarray) -> _PolicySample:
    """Reparameterized sample for a batch of observations with given noise."""
    specs = nn.specs_from_params(actor_params)
    out, tape = nn.forward(actor_params, specs, obs)
    k = envmod.N_RESOURCES
    mean, raw = out[:, :k], out[:, k:]
    log_std = np.clip(raw, LOG_STD_MIN, LOG_STD_MAX)
    sigma = np.exp(log_std)
    u = mean + sigma * eps
    y = np.tanh(u)
    action = ACTION_MID + ACTION_HALF * y
    log_gauss = (-0.5 * eps * eps - log_std - 0.5 * LOG_2PI).sum(axis=1)
    # log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u)), exact and overflow-safe
    log_squash = (math.log(ACTION_HALF) + 2.0 * (math.log(2.0) - u - nn.softplus(-2.0 * u))).sum(axis=1)
    log_prob = log_gauss - log_squash
    return _PolicySample(mean=mean, raw_log_std=raw, log_std=log_std, sigma=sigma,
                         eps=eps, u=u, y=y, action=action, log_prob=log_prob, tape=tape)


def policy_action(actor_params: ParameterSet, observation: np.ndarray,
                  rng: np.random.Generator | None = None,
                  deterministic: bool = False) -> tuple[np.ndarray, float]:
    """Action in (1, 5) per component and its log-density for one observation."""
    obs = np.asarray(observation, dtype=np.float64)
    expected = actor_params["w0"].shape[0]
    if obs.shape != (expected,):
        raise ValueError(f"observation must have length {expected}, got shape {obs.shape}")
    if deterministic:
        eps = np.zeros((1, envmod.N_RESOURCES))
    else:
        if rng is None:
            raise ValueError("stochastic action sampling needs an rng")
        eps = rng.standard_normal((1, envmod.N_RESOURCES))
    sample = _policy_sample(actor_params, obs[None, :], eps)
    action = sample.action[0]
    if not np.all(np.isfinite(action)):
        raise NumericalError(f"actor produced a non-finite action: {action}")
    return action, float(sample.log_prob[0])


def actor_act(checkpoint: Checkpoint, observation: np.ndarray, rng: np.random.Generator | None = None,
              deterministic: bool = False) -> tuple[np.ndarray, float]:
    return policy_action(checkpoint.params["actor"], observation, rng, deterministic)


def critic_value(critic_params: ParameterSet, observation: np.ndarray, action: np.ndarray) -> float:
    """Scalar value of one (observation, action) pair from the given critic."""
    obs = np.asarray(observation, dtype=np.float64)
    scaled = (np.asarray(action, dtype=np.float64) - ACTION_MID) / ACTION_HALF
    x = np.concatenate([obs, scaled])
    if x.shape[0] != critic_params["w0"].shape[0]:
        raise ValueError(
            f"critic expects input length {critic_params['w0'].shape[0]}, got {x.shape[0]}"
        )
    out, _ = nn.forward(critic_params, nn.specs_from_params(critic_params), x)
    return float(out[0])


def discriminator_log_probs(disc_params: ParameterSet, state: np.ndarray, cap: float) -> np.ndarray:
    """Skill log-probabilities from the cap-scaled 4-dim state."""
    x = np.asarray(state, dtype=np.float64) / cap
    logits, _ = nn.forward(disc_params, nn.specs_from_params(disc_params), x)
    return nn.log_softmax(logits)


# -- one training update ----------------------------------------------------

def _as_batch(batch) -> Batch:
    if isinstance(batch, Batch):
        return batch
    transitions = list(batch)
    return Batch(
        states=np.array([t.state for t in transitions], dtype=np.float64),
        skills=np.array([t.skill for t in transitions], dtype=np.int64),
        actions=np.array([t.action for t in transitions], dtype=np.float64),
        next_states=np.array([t.next_state for t in transitions], dtype=np.float64),
        dones=np.array([float(t.done) for t in transitions]),
    )


def _discriminator_loss_and_grads(disc_params: ParameterSet, states: np.ndarray,
                                  skills: np.ndarray, n_skills: int):
    """Cross-entropy of the skill given the (cap-scaled) state, with gradients."""
    b = states.shape[0]
    rows = np.arange(b)
    specs = nn.specs_from_params(disc_params)
    logits, tape = nn.forward(disc_params, specs, states)
    log_probs = nn.log_softmax(logits)
    loss = float(-log_probs[rows, skills].mean())
    one_hot = np.zeros((b, n_skills))
    one_hot[rows, skills] = 1.0
    d_logits = (np.exp(log_probs) - one_hot) / b
    grads, _ = nn.backward(disc_params, specs, tape, d_logits)
    return loss, grads


def _critic_loss_and_grads(critic_params: ParameterSet, x: np.ndarray, target: np.ndarray):
    """Mean squared error of Q(x) against a fixed target, with gradients."""
    b = x.shape[0]
    specs = nn.specs_from_params(critic_params)
    q, tape = nn.forward(critic_params, specs, x)
    err = q[:, 0] - target
    loss = float((err * err).mean())
    grads, _ = nn.backward(critic_params, specs, tape, (2.0 * err / b)[:, None])
    return loss, grads


def _actor_loss_and_grads(actor_params: ParameterSet, critic1: ParameterSet,
                          critic2: ParameterSet, obs: np.ndarray, eps: np.ndarray,
                          alpha: float):
    """mean(alpha log pi(a~|s) - min Q(s, a~)) with reparameterized a~ and the
    gradients with respect to the actor parameters only."""
    b = obs.shape[0]
    cur = _policy_sample(actor_params, obs, eps)
    critic_specs = nn.specs_from_params(critic1)
    x_actor = np.concatenate([obs, cur.y], axis=1)
    q1, tape1 = nn.forward(critic1, critic_specs, x_actor)
    q2, tape2 = nn.forward(critic2, critic_specs, x_actor)
    use1 = q1[:, 0] <= q2[:, 0]
    q_min = np.where(use1, q1[:, 0], q2[:, 0])
    loss = float((alpha * cur.log_prob - q_min).mean())
    # route d(-mean q_min)/dy through whichever critic attains the min
    g1 = np.where(use1, -1.0 / b, 0.0)[:, None]
    g2 = np.where(use1, 0.0, -1.0 / b)[:, None]
    _, gin1 = nn.backward(critic1, critic_specs, tape1, g1)
    _, gin2 = nn.backward(critic2, critic_specs, tape2, g2)
    k = envmod.N_RESOURCES
    g_y = gin1[:, -k:] + gin2[:, -k:]
    # d log pi / du = 2 tanh(u); d log pi / d log_std = -1 (noise held fixed)
    d_u = (alpha / b) * 2.0 * cur.y + g_y * (1.0 - cur.y * cur.y)
    d_log_std = -(alpha / b) + d_u * cur.sigma * cur.eps
    clip_gate = (cur.raw_log_std > LOG_STD_MIN) & (cur.raw_log_std < LOG_STD_MAX)
    out_grad = np.concatenate([d_u, d_log_std * clip_gate], axis=1)
    grads, _ = nn.backward(actor_params, nn.specs_from_params(actor_params),
                           cur.tape, out_grad)
    return loss, grads


def update(checkpoint: Checkpoint, batch, opt_states: dict, config: TrainConfig,
           rng: np.random.Generator) -> tuple[Checkpoint, dict, dict]:
    """One full learning step on a sampled batch.

    Order: discriminator step, intrinsic-reward recomputation with the
    updated discriminator, both critics against the entropy-regularized
    target, actor by reparameterized ascent, then Polyak target tracking.
    """
    data = _as_batch(batch)
    b = len(data)
    if b != config.batch_size:
        raise ValueError(f"batch size {b} does not match config.batch_size {config.batch_size}")
    cap = checkpoint.env_config.cap
    n = config.n_skills
    lr = config.learning_rate
    params = dict(checkpoint.params)
    opts = dict(opt_states)
    rows = np.arange(b)

    # 1. discriminator: cross-entropy of the skill given the next state
    x_disc = data.next_states / cap
    disc_loss, disc_grads = _discriminator_loss_and_grads(
        params["discriminator"], x_disc, data.skills, n)
    params["discriminator"], opts["discriminator"] = nn.adam_step(
        params["discriminator"], disc_grads, opts["discriminator"], lr)

    # 2. intrinsic rewards from the just-updated discriminator
    disc_specs = nn.specs_from_params(params["discriminator"])
    logits, _ = nn.forward(params["discriminator"], disc_specs, x_disc)
    log_q = nn.log_softmax(logits)[rows, data.skills]
    rewards = np.maximum(log_q, config.log_q_floor) + math.log(n)

    # 3. critics against r + gamma (1 - done) (min target Q - alpha log pi)
    obs = _augment_batch(data.states, data.skills, cap, n)
    next_obs = _augment_batch(data.next_states, data.skills, cap, n)
    critic_specs = nn.specs_from_params(params["critic1"])
    eps_next = rng.standard_normal((b, envmod.N_RESOURCES))
    next_sample = _policy_sample(params["actor"], next_obs, eps_next)
    x_next = np.concatenate([next_obs, next_sample.y], axis=1)
    q1_t, _ = nn.forward(params["target1"], critic_specs, x_next)
    q2_t, _ = nn.forward(params["target2"], critic_specs, x_next)
    soft_value = np.minimum(q1_t[:, 0], q2_t[:, 0]) - config.alpha * next_sample.log_prob
    target = rewards + config.gamma * (1.0 - data.dones) * soft_value
    if not np.all(np.isfinite(target)):
        raise NumericalError("non-finite critic target; training diverged")

    action_y = (data.actions - ACTION_MID) / ACTION_HALF
    x_cur = np.concatenate([obs, action_y], axis=1)
    losses = {"discriminator_loss": disc_loss, "mean_intrinsic_reward": float(rewards.mean())}
    for name in ("critic1", "critic2"):
        losses[f"{name}_loss"], grads = _critic_loss_and_grads(params[name], x_cur, target)
        params[name], opts[name] = nn.adam_step(params[name], grads, opts[name], lr)

    # 4. actor: ascend min Q(s, a~) - alpha log pi(a~|s) with reparameterized a~
    eps_cur = rng.standard_normal((b, envmod.N_RESOURCES))
    losses["actor_loss"], actor_grads = _actor_loss_and_grads(
        params["actor"], params["critic1"], params["critic2"], obs, eps_cur, config.alpha)
    if not math.isfinite(losses["actor_loss"]):
        raise NumericalError("non-finite actor loss; training diverged")
    params["actor"], opts["actor"] = nn.adam_step(params["actor"], actor_grads, opts["actor"], lr)

    # 5. Polyak target tracking
    params["target1"] = nn.polyak_update(params["target1"], params["critic1"], config.tau)
    params["target2"] = nn.polyak_update(params["target2"], params["critic2"], config.tau)

    return replace(checkpoint, params=params), opts, losses


# -- training loop ----------------------------------------------------------

@dataclass
class ProgressStats:
    """Aggregates over the most recent progress window."""

    episode: int
    episodes_total: int
    mean_episode_length: float
    mean_intrinsic_reward: float
    discriminator_accuracy: float


def train(env_config: EnvConfig, config: TrainConfig, progress=None,
          progress_every: int = 1000) -> Checkpoint:
    """Run the full skill-discovery loop and return the final checkpoint.

    Per episode: sample one skill, reset the domain, roll the stochastic
    skill-conditioned policy to termination, store transitions, and run
    ``updates_per_step`` learning updates per environment step once the
    buffer passes warmup.  Deterministic given the config seed.
    """
    init_rng, env_rng, skill_rng, policy_rng, update_rng = _rng_streams(config.seed)
    checkpoint = Checkpoint(env_config=env_config, train_config=config,
                            params=init_networks(config, init_rng), episodes_completed=0)
    opts = {name: AdamState.for_params(checkpoint.params[name]) for name in _TRAINED}
    buffer = ReplayBuffer(config.buffer_capacity)
    step_bound = envmod.max_episode_steps(env_config)
    cap = env_config.cap

    window_steps = 0
    window_episodes = 0
    window_reward = 0.0
    window_correct = 0

    for episode in range(config.episodes):
        skill = sample_skill(skill_rng, config.n_skills)
        state = envmod.reset(env_rng, env_config)
        ep_len = 0
        while True:
            obs = augment_observation(state.allocation, skill, cap, config.n_skills)
            action, _ = policy_action(checkpoint.params["actor"], obs, policy_rng)
            next_state, kind = envmod.step(state, action, env_config)
            done = kind is not TerminalKind.NONE
            buffer.push(state.allocation, skill, action, next_state.allocation, done, kind)

            lp = discriminator_log_probs(checkpoint.params["discriminator"],
                                         next_state.allocation, cap)
            window_reward += intrinsic_reward(lp, skill, config.n_skills, config.log_q_floor)
            window_correct += int(np.argmax(lp) == skill)

            if len(buffer) >= config.warmup_transitions:
                for _ in range(config.updates_per_step):
                    batch = buffer.sample(config.batch_size, update_rng)
                    checkpoint, opts, _ = update(checkpoint, batch, opts, config, update_rng)

            ep_len += 1
            if ep_len > step_bound:
                raise AssertionError(
                    f"episode exceeded the {step_bound}-step termination bound")
            state = next_state
            if done:
                break

        window_steps += ep_len
        window_episodes += 1
        if progress is not None and (episode + 1) % progress_every == 0:
            progress(ProgressStats(
                episode=episode + 1,
                episodes_total=config.episodes,
                mean_episode_length=window_steps / window_episodes,
                mean_intrinsic_reward=window_reward / window_steps,
                discriminator_accuracy=window_correct / window_steps,
            ))
            window_steps = window_episodes = 0
            window_reward = 0.0
            window_correct = 0

    return replace(checkpoint, episodes_completed=config.episodes)


def evaluate_discriminator(checkpoint: Checkpoint, n_states: int,
                           rng: np.random.Generator) -> float:
    """Top-1 skill prediction accuracy on fresh on-policy rollout states."""
    cfg = checkpoint.train_config
    env_config = checkpoint.env_config
    correct = 0
    total = 0
    while total < n_states:
        skill = sample_skill(rng, cfg.n_skills)
        state = envmod.reset(rng, env_config)
        while True:
            obs = augment_observation(state.allocation, skill, env_config.cap, cfg.n_skills)
            action, _ = policy_action(checkpoint.params["actor"], obs, rng)
            state, kind = envmod.step(state, action, env_config)
            lp = discriminator_log_probs(checkpoint.params["discriminator"],
                                         state.allocation, env_config.cap)
            correct += int(np.argmax(lp) == skill)
            total += 1
            if kind is not TerminalKind.NONE or total >= n_states:
                break
    return correct / total
