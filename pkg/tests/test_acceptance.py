"""Acceptance suite: every exit criterion at its stated tolerance.

The training-dependent criteria share one session-scoped default-config
run (written through the CLI, exactly as a user would produce it), so the
whole suite costs one full training plus seconds-scale checks.  Each test
prints one [ACCEPTANCE] line.
"""

import math

import numpy as np
import pytest

from edgeskills import agent, analysis, cli, env, nn
from edgeskills.checkpoint import load_checkpoint, save_checkpoint
from edgeskills.controller import SliceRequest, compose, verify
from edgeskills.env import EnvConfig

from oracles import (exhaustive_short_compose, finite_difference_grads,
                     gradient_agreement_fraction, pattern_oracle_batch)


@pytest.fixture
def report(capsys):
    """One visible PASS/FAIL line per criterion, shown under any capture mode."""
    def _report(name: str, ok: bool, detail: str = "") -> None:
        line = f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        with capsys.disabled():
            print(line, flush=True)
    return _report


def _run_pipeline(root, seed=None):
    """Default-config train -> skills -> coverage, all through the CLI."""
    config = root / "run.cfg"
    if not config.exists():
        config.write_text("")  # empty config: the reference hyperparameters
    tag = "default" if seed is None else f"seed{seed}"
    ckpt = root / f"{tag}.ckpt"
    skills = root / f"{tag}_skills.csv"
    cov = root / f"{tag}_coverage.csv"
    train_args = ["train", "--config", str(config), "--out", str(ckpt)]
    if seed is not None:
        train_args += ["--seed", str(seed)]
    assert cli.main(train_args) == 0
    assert cli.main(["skills", "--ckpt", str(ckpt), "--out", str(skills)]) == 0
    assert cli.main(["coverage", "--skills", str(skills), "--out", str(cov)]) == 0
    return {"ckpt": ckpt, "skills": skills, "coverage": cov}


def _coverage_summary(path):
    """Parse the min/max/span block at the end of coverage.csv."""
    lines = [l for l in path.read_text().splitlines() if l.strip(",")]
    start = lines.index("resource,min,max,span")
    summary = {}
    for line in lines[start + 1:]:
        name, mn, mx, span = line.split(",")
        summary[name] = (float(mn), float(mx), float(span))
    return summary


def _coverage_band_ok(path):
    summary = _coverage_summary(path)
    return all(mn <= 7.0 and mx >= 18.0 for mn, mx, _ in summary.values()), summary


@pytest.fixture(scope="session")
def default_run(tmp_path_factory):
    root = tmp_path_factory.mktemp("acceptance")
    paths = _run_pipeline(root)
    paths["root"] = root
    return paths


def test_skill_count_and_cap_bound(default_run, report):
    profiles = analysis.read_skills_csv(default_run["skills"])
    finals = np.array([p.final_allocation for p in profiles])
    ok = len(profiles) == 64 and bool(np.all(finals <= 20.0))
    report("skill count and 20% bound", ok,
           f"rows={len(profiles)}, max={finals.max():.6f}")
    assert ok


def test_coverage_band(default_run, report):
    ok, summary = _coverage_band_ok(default_run["coverage"])
    attempts = [ok]
    if not ok:
        # stochastic-training allowance: up to 3 seeds, at least 2 must pass
        for seed in (1, 2):
            retry = _run_pipeline(default_run["root"], seed=seed)
            retry_ok, summary = _coverage_band_ok(retry["coverage"])
            attempts.append(retry_ok)
    passed = sum(attempts) >= (1 if len(attempts) == 1 else 2)
    detail = "; ".join(f"{n} [{mn:.3f}, {mx:.3f}]" for n, (mn, mx, _) in summary.items())
    report("coverage band (min<=7, max>=18)", passed,
           f"attempts={attempts}; last: {detail}")
    assert passed


def test_skill_distinctness(default_run, report):
    profiles = analysis.read_skills_csv(default_run["skills"])
    _, summary = analysis.pairwise_distinctness(profiles, threshold=1.0)
    ok = summary["n_pairs"] == 2016 and summary["fraction_distinct"] >= 0.90
    report("pairwise distinctness (>=90% of 2016 pairs at L1>=1.0)", ok,
           f"fraction={summary['fraction_distinct']:.4f}")
    assert ok


def test_discriminator_learning(default_run, report):
    checkpoint = load_checkpoint(default_run["ckpt"])
    accuracy = agent.evaluate_discriminator(checkpoint, 1000, np.random.default_rng(2024))
    ok = accuracy >= 0.156
    report("discriminator top-1 accuracy >= 15.6% on 1000 on-policy states", ok,
           f"accuracy={accuracy:.4f}")
    assert ok


def test_gradient_oracle(report):
    rng = np.random.default_rng(99)
    activations = ("tanh", "relu", "identity")
    total = 0
    agree = 0
    for _ in range(100):
        n_layers = int(rng.integers(1, 4))
        widths = [int(rng.integers(1, 17)) for _ in range(n_layers + 1)]
        specs = [nn.LayerSpec(widths[i], widths[i + 1],
                              str(rng.choice(activations)) if i < n_layers - 1 else "identity")
                 for i in range(n_layers)]
        params = nn.mlp_init(specs, rng)
        x = rng.standard_normal(widths[0])
        out_grad = rng.standard_normal(widths[-1])
        _, tape = nn.forward(params, specs, x)
        grads, _ = nn.backward(params, specs, tape, out_grad)
        fd = finite_difference_grads(params, specs, x, out_grad, h=1e-5)
        frac = gradient_agreement_fraction(grads, fd, rel_tol=1e-4)
        n_entries = sum(p.size for p in params.values())
        total += n_entries
        agree += round(frac * n_entries)
    fraction = agree / total
    ok = fraction >= 0.99
    report("gradient oracle (100 networks, rel err <= 1e-4 on >= 99% entries)", ok,
           f"agreement={fraction:.6f} over {total} entries")
    assert ok


def test_environment_pattern_oracle(report):
    config = EnvConfig()
    rng = np.random.default_rng(7)
    # 0.5%-spaced grid over [2, 20]^4, 10^5 sampled points
    grid = 2.0 + 0.5 * rng.integers(0, 37, size=(100_000, 4))
    expected = pattern_oracle_batch(grid, config)
    got = np.array([env.is_pattern_terminal(p, config) for p in grid])
    agreement = float((got == expected).mean())
    ok = agreement == 1.0
    report("pattern-terminal brute-force agreement on 1e5 grid points", ok,
           f"agreement={agreement:.6f}")
    assert ok


def test_environment_episode_bound(report):
    config = EnvConfig()
    rng = np.random.default_rng(8)
    bound = env.max_episode_steps(config)
    worst = 0
    for _ in range(10_000):
        state = env.reset(rng, config)
        steps = 0
        while True:
            action = rng.uniform(config.action_low, config.action_high, size=4)
            state, kind = env.step(state, action, config)
            steps += 1
            if kind is not env.TerminalKind.NONE:
                break
            assert steps <= bound
        worst = max(worst, steps)
    ok = worst <= 18
    report("episode length <= 18 over 10000 random episodes", ok, f"max={worst}")
    assert ok


def test_intrinsic_reward_analytic_cases(report):
    uniform = np.full(64, -math.log(64))
    r_uniform = agent.intrinsic_reward(uniform, 12, 64)

    certain = np.full(64, -1e9)
    certain[12] = 0.0
    r_certain = agent.intrinsic_reward(certain, 12, 64)

    half = np.full(64, math.log((1 - 1 / 128) / 63))
    half[12] = math.log(1 / 128)
    r_half = agent.intrinsic_reward(half, 12, 64)

    ok = (abs(r_uniform) <= 1e-9
          and abs(r_certain - math.log(64)) <= 1e-9
          and abs(r_half - (-math.log(2))) <= 1e-9)
    report("intrinsic reward analytic cases (0, log 64, -log 2)", ok,
           f"got ({r_uniform:.2e}, {r_certain:.9f}, {r_half:.9f})")
    assert ok


DETERMINISM_CONFIG = """\
[train]
episodes = 400
batch_size = 64
buffer_capacity = 5000
warmup_transitions = 192
seed = 123
"""


def test_training_determinism_and_checkpoint_roundtrip(default_run, tmp_path, report):
    config = tmp_path / "probe.cfg"
    config.write_text(DETERMINISM_CONFIG)
    first = tmp_path / "first.ckpt"
    second = tmp_path / "second.ckpt"
    assert cli.main(["train", "--config", str(config), "--out", str(first)]) == 0
    assert cli.main(["train", "--config", str(config), "--out", str(second)]) == 0
    identical = first.read_bytes() == second.read_bytes()

    rewritten = tmp_path / "rewritten.ckpt"
    save_checkpoint(load_checkpoint(default_run["ckpt"]), rewritten)
    roundtrip = rewritten.read_bytes() == default_run["ckpt"].read_bytes()

    ok = identical and roundtrip
    report("determinism (byte-identical retrain and checkpoint round-trip)", ok,
           f"retrain_identical={identical}, roundtrip_identical={roundtrip}")
    assert ok


def test_controller_oracle(report):
    rng = np.random.default_rng(31415)
    failures = []
    satisfied_count = 0
    for trial in range(200):
        n = int(rng.integers(2, 7))
        table = [analysis.SkillProfile(skill=i, final_allocation=rng.uniform(1.0, 20.0, 4),
                                       steps=1, terminal_kind=env.TerminalKind.PATTERN)
                 for i in range(n)]
        minimum = rng.uniform(0.0, 30.0, 4)
        maximum = minimum + rng.uniform(0.0, 25.0, 4) if rng.random() < 0.7 else None
        request = SliceRequest("probe", minimum, maximum=maximum)
        result = compose(table, request, max_sequence_length=3)
        if result.status == "satisfied":
            satisfied_count += 1
            if not verify(result, table, request):
                failures.append(f"trial {trial}: satisfied result failed verify")
        oracle = exhaustive_short_compose(table, request, max_len=2)
        if oracle is not None and result.status != "satisfied":
            failures.append(f"trial {trial}: oracle {oracle} but compose infeasible")
    ok = not failures
    report("controller oracle (200 instances, depth-2 completeness + verify)", ok,
           f"satisfied={satisfied_count}/200" + (f"; {failures[:2]}" if failures else ""))
    assert ok, failures[:5]
