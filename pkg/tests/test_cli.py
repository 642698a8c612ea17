import json
import subprocess
import sys

import pytest

from korodisc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_theorem4_shape(tmp_path, capsys):
    out = tmp_path / "p.csv"
    code, stdout, _ = run(capsys, "generate", "--n-prime", "5", "--dim", "2", "--num-lattices", "4",
                          "--generators", "fixed", "--shift", "discrete", "--seed", "7", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# kind=grid n_prime=5 dim=2" and lines[1] == "x0,x1"
    assert len(lines) - 2 == 20
    meta = json.loads(stdout)
    assert meta["n_tot"] == 20 and meta["generators"] == [1, 2, 3, 4]


def test_generate_non_prime(capsys):
    code, _, err = run(capsys, "generate", "--n-prime", "9")
    assert code == 2 and "9 is not prime" in err


def test_generate_io_error(tmp_path, capsys):
    code, _, _ = run(capsys, "generate", "--n-prime", "5", "--out", str(tmp_path / "missing" / "p.csv"))
    assert code == 3


def test_generate_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert run(capsys, "generate", "--n-prime", "7", "--dim", "3", "--generators", "random",
                   "--shift", "continuous", "--seed", "3", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_disc_one_dim_korobov(capsys):
    code, out, _ = run(capsys, "disc", "--n-prime", "7", "--dim", "1", "--num-lattices", "1",
                       "--generators", "fixed", "--shift", "discrete", "--seed", "0")
    rep = json.loads(out)
    assert code == 0 and rep["grid_max"] == 0 and rep["upper_bound"] == 1 / 7


def test_disc_exact_sandwich_from_file(tmp_path, capsys):
    f = tmp_path / "p.csv"
    run(capsys, "generate", "--n-prime", "5", "--dim", "2", "--seed", "2", "--out", str(f))
    code, out, _ = run(capsys, "disc", "--in", str(f), "--exact")
    rep = json.loads(out)
    assert code == 0 and rep["grid_max"] <= rep["exact"] <= rep["upper_bound"]


def test_disc_capacity(capsys):
    code, _, err = run(capsys, "disc", "--n-prime", "13", "--dim", "8", "--num-lattices", "1")
    assert code == 4 and "cap" in err


def test_bound_theorem4(capsys):
    code, out, _ = run(capsys, "bound", "--case", "fixed-discrete", "--n-prime", "31", "--dim", "2",
                       "--num-lattices", "30", "--failure-prob", "0.5")
    d = json.loads(out)
    assert code == 0 and d["final_bound"] == pytest.approx(0.4797, abs=5e-5)
    assert d["constants"]["continuous"] == pytest.approx(1.8283, abs=5e-5)
    assert d["constants"]["discrete"] == pytest.approx(1.7231, abs=5e-5)


def test_bound_bad_failure_prob(capsys):
    code, _, _ = run(capsys, "bound", "--n-prime", "31", "--failure-prob", "1.5")
    assert code == 2


@pytest.mark.parametrize("suite, n, s", [("charsum", 13, 3), ("parseval", 7, 2), ("meanzero", 5, 1),
                                         ("variance", 5, 2)])
def test_verify_suites_pass(capsys, suite, n, s):
    code, out, err = run(capsys, "verify", "--suite", suite, "--n-prime", str(n), "--dim", str(s),
                         "--samples", "2000")
    assert code == 0, err
    assert json.loads(out)["passed"] is True
    assert "PASS" in err and "FAIL" not in err


def test_coeff_and_charsum(capsys):
    code, out, _ = run(capsys, "coeff", "--k", "1", "--b-num", "1", "--n-prime", "3")
    d = json.loads(out)
    assert code == 0 and d["discrete"][0] == pytest.approx(1 / 3)
    code, out, _ = run(capsys, "charsum", "--n-prime", "5", "--dim", "2", "--z", "3", "--k", "2,1")
    assert json.loads(out)["value"] == 1


def test_campaign_zero_trials(capsys):
    code, _, _ = run(capsys, "campaign", "--n-prime", "5", "--num-trials", "0")
    assert code == 2


def test_campaign_config_echo(tmp_path, capsys):
    cfg = {"case": "random-discrete", "n_prime": 7, "dim": 2, "failure_prob": 0.1,
           "num_trials": 5, "master_seed": 42}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "campaign", "--config", str(path), "--out", str(tmp_path / "o"), "--threads", "1")
    d = json.loads(out)
    assert code == 0
    for key, val in cfg.items():
        assert d["config"][key] == val
    saved = json.loads((tmp_path / "o" / "summary.json").read_text())
    assert saved == d


def test_campaign_deterministic_files(tmp_path, capsys):
    outs = []
    for name, threads in (("a", "1"), ("b", "2")):
        code, out, _ = run(capsys, "campaign", "--case", "4", "--n-prime", "7", "--num-trials", "8",
                           "--seed", "5", "--out", str(tmp_path / name), "--threads", threads)
        assert code == 0
        outs.append(out)
    assert (tmp_path / "a" / "trials.csv").read_bytes() == (tmp_path / "b" / "trials.csv").read_bytes()
    a = json.loads(outs[0]); b = json.loads(outs[1])
    a["config"].pop("output_path"); b["config"].pop("output_path")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "korodisc", "bound", "--n-prime", "13", "--dim", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "final_bound" in res.stdout
