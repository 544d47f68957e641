import json
from pathlib import Path

import pytest

from multiloop.cli import ConfigError, load_config, run

FIX = Path(__file__).parent / "fixtures"


def fx(name):
  return str(FIX / name)


def test_torus_check(capsys):
  assert run(["torus", "check", "-c", fx("a2_twisted.json")]) == 0
  out = capsys.readouterr().out.splitlines()
  assert sum(line.startswith("PASS") for line in out) == 5
  assert not any(line.startswith("FAIL") for line in out)


def test_torus_check_failure_exit_code(capsys):
  assert run(["torus", "check", "-c", fx("sl2_sign.json")]) == 1
  assert "FAIL fixed_part_simple: dim g_0 = 1" in capsys.readouterr().out


def test_iso_integral_shift(capsys):
  assert run(["iso", "check", "-c", fx("q1.json"), "-c", fx("q2.json")]) == 0
  assert capsys.readouterr().out.strip() == "isomorphic (clause 3: integral shift)"
  assert run(["iso", "check", "-c", fx("q1.json"), "-c", fx("q3.json")]) == 0
  assert capsys.readouterr().out.startswith("not isomorphic")


def test_zero_lambda(capsys):
  assert run(["module", "weights", "-c", fx("zero_lambda.json")]) == 2
  assert capsys.readouterr().err.strip() == "ZeroLambda: λ ∈ P_g⁺ \\ {0} required"


def test_module_outputs(tmp_path):
  for action in ("build", "weights", "hws", "check"):
    assert run(["module", action, "-c", fx("a2_twisted.json"), "--out", str(tmp_path)]) == 0
  rows = (tmp_path / "weights.tsv").read_text().splitlines()
  assert rows[0] == "k\tweight\tdim"
  assert sum(int(r.split("\t")[2]) for r in rows[1:]) == 3 * 3 + 2 * 5
  report = json.loads((tmp_path / "module_check.json").read_text())
  assert report["totals"]["fail"] == 0
  assert json.loads((tmp_path / "module.json").read_text())["V2_dims"] == [3, 5]


def test_algebra_commands(capsys):
  assert run(["algebra", "info", "-c", fx("a3_twisted.json")]) == 0
  info = json.loads(capsys.readouterr().out)
  assert info["eigenspace_dims"] == [10, 5] and info["dim"] == 15
  assert run(["algebra", "check", "-c", fx("a2_twisted.json"), "--phi", "1,1"]) == 0
  out = capsys.readouterr().out
  assert "PASS jacobi" in out and "PASS toroidal_centre" in out


def test_intertwine(capsys):
  assert run(["intertwine", "-c", fx("intertwine.json")]) == 0
  assert "PASS" in capsys.readouterr().out


def test_usage_and_config_errors(tmp_path, capsys):
  assert run(["nonsense"]) == 2
  bad = tmp_path / "bad.json"
  bad.write_text('{\n  "algebra": {"type": "A", "rank": 2},\n  "m": [2,\n}')
  assert run(["torus", "check", "-c", str(bad)]) == 2
  assert "line 4" in capsys.readouterr().err
  bad.write_text(json.dumps({"algebra": {"type": "A", "rank": 2}, "window": "3"}))
  with pytest.raises(ConfigError, match="field window"):
    load_config(bad)
  bad.write_text(json.dumps({"algebra": {"type": "A", "rank": 2}, "colour": 1}))
  with pytest.raises(ConfigError, match="colour"):
    load_config(bad)
  bad.write_text(json.dumps({"conductor": 2, "algebra": {"type": "A", "rank": 2},
                             "automorphisms": [{"character": {"alpha_1": "z^1@3"}}], "m": [3]}))
  assert run(["torus", "check", "-c", str(bad)]) == 2
  assert "conductor" in capsys.readouterr().err


@pytest.mark.parametrize("name", ["a2_twisted.json", "q1.json", "intertwine.json", "sl2_sign.json"])
def test_config_round_trip(tmp_path, name):
  cfg = load_config(fx(name))
  out = tmp_path / name
  out.write_text(json.dumps(cfg.to_dict()))
  again = load_config(out)
  again.path = cfg.path
  assert again == cfg
