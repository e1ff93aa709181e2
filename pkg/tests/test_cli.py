import numpy as np
import pytest

from edgeskills import cli
from edgeskills.analysis import read_skills_csv
from edgeskills.checkpoint import load_checkpoint
from edgeskills.nn import NumericalError

SMALL_RUN_CONFIG = """\
[train]
episodes = 120
batch_size = 32
buffer_capacity = 2000
warmup_transitions = 64
seed = 3
"""


@pytest.fixture(scope="module")
def small_run(tmp_path_factory):
    """One small end-to-end CLI run shared by the read-only tests."""
    root = tmp_path_factory.mktemp("cli")
    config = root / "run.cfg"
    config.write_text(SMALL_RUN_CONFIG)
    ckpt = root / "model.ckpt"
    skills = root / "skills.csv"
    assert cli.main(["train", "--config", str(config), "--out", str(ckpt)]) == 0
    assert cli.main(["skills", "--ckpt", str(ckpt), "--out", str(skills)]) == 0
    return {"root": root, "config": config, "ckpt": ckpt, "skills": skills}


class TestTrainCommand:
    def test_missing_config_exits_2(self, tmp_path, capsys):
        missing = tmp_path / "nope.cfg"
        code = cli.main(["train", "--config", str(missing), "--out", str(tmp_path / "m.ckpt")])
        assert code == 2
        assert str(missing) in capsys.readouterr().err

    def test_zero_episode_override(self, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("")  # all defaults
        out = tmp_path / "fresh.ckpt"
        code = cli.main(["train", "--config", str(config), "--episodes", "0",
                         "--out", str(out)])
        assert code == 0
        ckpt = load_checkpoint(out)
        assert ckpt.episodes_completed == 0
        assert ckpt.train_config.episodes == 0

    def test_same_seed_byte_identical(self, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text(SMALL_RUN_CONFIG)
        a = tmp_path / "a.ckpt"
        b = tmp_path / "b.ckpt"
        assert cli.main(["train", "--config", str(config), "--out", str(a)]) == 0
        assert cli.main(["train", "--config", str(config), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_config_value_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("[train]\ngamma = 1.5\n")
        code = cli.main(["train", "--config", str(config), "--out", str(tmp_path / "m.ckpt")])
        assert code == 2
        assert "gamma" in capsys.readouterr().err

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("[train]\nlearning_rat = 1e-5\n")
        assert cli.main(["train", "--config", str(config),
                         "--out", str(tmp_path / "m.ckpt")]) == 2
        assert "learning_rat" in capsys.readouterr().err

    def test_numerical_failure_exits_3(self, tmp_path, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise NumericalError("diverged")
        monkeypatch.setattr(cli, "train", boom)
        config = tmp_path / "run.cfg"
        config.write_text("")
        code = cli.main(["train", "--config", str(config), "--out", str(tmp_path / "m.ckpt")])
        assert code == 3
        assert "diverged" in capsys.readouterr().err

    def test_progress_lines_printed(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("[train]\nepisodes = 1000\nbatch_size = 32\n"
                          "buffer_capacity = 2000\nwarmup_transitions = 256\nseed = 5\n")
        out = tmp_path / "m.ckpt"
        assert cli.main(["train", "--config", str(config), "--out", str(out)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert any(l.startswith("episode 1000/1000") for l in lines)


class TestSkillsCommand:
    def test_writes_64_rows(self, small_run):
        profiles = read_skills_csv(small_run["skills"])
        assert len(profiles) == 64
        finals = np.array([p.final_allocation for p in profiles])
        assert np.all(finals <= 20.0)

    def test_repeat_is_byte_identical(self, small_run, tmp_path):
        again = tmp_path / "skills2.csv"
        assert cli.main(["skills", "--ckpt", str(small_run["ckpt"]),
                         "--out", str(again)]) == 0
        assert again.read_bytes() == small_run["skills"].read_bytes()

    def test_corrupt_checkpoint_exits_2(self, small_run, tmp_path, capsys):
        bad = tmp_path / "bad.ckpt"
        blob = bytearray(small_run["ckpt"].read_bytes())
        blob[-3] ^= 0x55
        bad.write_bytes(bytes(blob))
        code = cli.main(["skills", "--ckpt", str(bad), "--out", str(tmp_path / "s.csv")])
        assert code == 2
        assert "digest mismatch" in capsys.readouterr().err

    def test_init_override(self, small_run, tmp_path):
        out = tmp_path / "skills_init.csv"
        assert cli.main(["skills", "--ckpt", str(small_run["ckpt"]), "--out", str(out),
                         "--init", "8,8,8,8"]) == 0
        assert len(read_skills_csv(out)) == 64

    def test_bad_init_exits_2(self, small_run, tmp_path, capsys):
        code = cli.main(["skills", "--ckpt", str(small_run["ckpt"]),
                         "--out", str(tmp_path / "s.csv"), "--init", "50,8,8,8"])
        assert code == 2


class TestCoverageCommand:
    def test_summary_lists_four_resources(self, small_run, tmp_path, capsys):
        out = tmp_path / "coverage.csv"
        assert cli.main(["coverage", "--skills", str(small_run["skills"]),
                         "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        for name in ("power", "bandwidth", "memory", "compute"):
            assert f"{name}: min" in printed
        assert out.exists()

    def test_missing_column_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "skills.csv"
        bad.write_text("skill_id,power_pct,bandwidth_pct,memory_pct,steps,terminal_kind\n")
        code = cli.main(["coverage", "--skills", str(bad), "--out", str(tmp_path / "c.csv")])
        assert code == 2
        assert "compute_pct" in capsys.readouterr().err

    def test_identical_rows_give_zero_span(self, tmp_path, capsys):
        skills = tmp_path / "skills.csv"
        header = "skill_id,power_pct,bandwidth_pct,memory_pct,compute_pct,steps,terminal_kind\n"
        rows = "".join(f"{i},9.000000,9.000000,9.000000,9.000000,1,pattern\n" for i in range(8))
        skills.write_text(header + rows)
        assert cli.main(["coverage", "--skills", str(skills),
                         "--out", str(tmp_path / "c.csv")]) == 0
        out = capsys.readouterr().out
        assert out.count("span 0.000000") == 4


class TestComposeCommand:
    def _write_request(self, path, body):
        path.write_text(body)
        return str(path)

    def test_zero_minimum_satisfied(self, small_run, tmp_path, capsys):
        request = self._write_request(tmp_path / "req.cfg",
                                      "service_type = idle\nminimum = 0,0,0,0\n")
        code = cli.main(["compose", "--skills", str(small_run["skills"]),
                         "--request", request])
        assert code == 0
        out = capsys.readouterr().out
        assert "status = satisfied" in out
        assert "sequence = (empty)" in out

    def test_unreachable_minimum_infeasible(self, small_run, tmp_path, capsys):
        # default env profiles never have a component below 7, so an upper
        # bound of 2 admits no skill at all
        request = self._write_request(
            tmp_path / "req.cfg",
            "service_type = greedy\nminimum = 1,1,1,1\nmaximum = 2,2,2,2\n")
        code = cli.main(["compose", "--skills", str(small_run["skills"]),
                         "--request", request])
        assert code == 1
        assert "status = infeasible" in capsys.readouterr().out

    def test_invalid_request_exits_2(self, small_run, tmp_path, capsys):
        request = self._write_request(
            tmp_path / "req.cfg",
            "service_type = broken\nminimum = 9,9,9,9\nmaximum = 5,5,5,5\n")
        code = cli.main(["compose", "--skills", str(small_run["skills"]),
                         "--request", request])
        assert code == 2

    def test_satisfiable_request(self, small_run, tmp_path, capsys):
        request = self._write_request(tmp_path / "req.cfg",
                                      "service_type = small\nminimum = 8,8,8,8\n")
        code = cli.main(["compose", "--skills", str(small_run["skills"]),
                         "--request", request])
        assert code == 0
        assert "status = satisfied" in capsys.readouterr().out
