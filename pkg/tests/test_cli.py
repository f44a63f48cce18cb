import json

import pytest

from char2uni import cli
from char2uni.class_labels import CycleType, SpLabel, label_from_cycle_type
from char2uni.harness import AdaptedReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_labels_json(capsys):
    code, out = run(capsys, "labels", "--nn", "4")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 5
    assert {"jordan": [4], "eps": {"4": 1}} in data


def test_labels_text(capsys):
    code, out = run(capsys, "labels", "--nn", "2", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["[2] ε{2:1}", "[1,1]"]


def test_labels_usage_errors():
    with pytest.raises(SystemExit) as exc:
        cli.main(["labels", "--nn", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["labels"])
    assert exc.value.code == 2


def test_closure_command(capsys):
    a = '{"jordan": [2, 2], "eps": {"2": 0}}'
    b = '{"jordan": [2, 2], "eps": {"2": 1}}'
    code, out = run(capsys, "closure", "--a", a, "--b", b)
    assert code == 0 and json.loads(out)["leq"] is True
    code, out = run(capsys, "closure", "--a", b, "--b", a)
    assert json.loads(out)["leq"] is False
    with pytest.raises(SystemExit) as exc:
        cli.main(["closure", "--a", a, "--b", '{"jordan": [2], "eps": {"2": 1}}'])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["closure", "--a", "not json", "--b", b])
    assert exc.value.code == 2


def test_hasse_dot_and_json(capsys):
    code, out = run(capsys, "hasse", "--nn", "4", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert '[label="[4] ε{4:1}"]' in out
    assert out.count("->") == 5

    code, out = run(capsys, "hasse", "--nn", "4")
    data = json.loads(out)
    assert len(data["nodes"]) == 5 and len(data["edges"]) == 5
    for lo, hi in data["edges"]:
        assert 0 <= lo < 5 and 0 <= hi < 5


def test_phi_command(capsys):
    code, out = run(capsys, "phi", "--cycles", "2,1")
    assert code == 0
    assert SpLabel.from_dict(json.loads(out)) == label_from_cycle_type(CycleType([2, 1]))


def test_flags_command(capsys):
    code, out = run(capsys, "flags", "--cycles", "1,1")
    assert code == 0
    data = json.loads(out)
    assert data["cycles"] == [1, 1]
    assert len(data["intersection_dims"]) == 5
    assert data["b_step_indices"][4] == [3, 2, 1, 0]


def test_adapted_command(capsys):
    code, out = run(capsys, "adapted", "--cycles", "1,1")
    assert code == 0
    data = json.loads(out)
    assert data["coset_size"] == 16
    assert data["verdicts"]["theorem"] is True


def test_verify_ok_exit_zero(capsys):
    code, out = run(capsys, "verify", "--cycles", "1,1", "--form", "sp")
    assert code == 0
    assert "theorem: OK" in out


def test_verify_rejects_odd_sigma_for_so():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--cycles", "3", "--form", "so"])
    assert exc.value.code == 2


def test_verify_failure_exit_one(capsys, monkeypatch):
    # doctor a report whose adapted set misses the doubled-type label
    ct = CycleType([1, 1])
    fake = AdaptedReport(
        cycle_type=ct,
        form="sp",
        coset_size=16,
        unipotent_count=1,
        adapted_labels=(SpLabel([4], {4: 1}),),
        phi_label=label_from_cycle_type(ct),
    )
    monkeypatch.setattr(cli, "adapted_classes", lambda *a, **k: fake)
    code, out = run(capsys, "verify", "--cycles", "1,1")
    assert code == 1
    assert "FAILED" in out


def test_describe_space(capsys):
    code, out = run(capsys, "describe-space", "--n", "2", "--form", "so")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 4
    assert data["q_values"] == [0, 0, 0, 0]
    assert data["basis"] == ["e1", "e2", "f2", "f1"]
    assert data["gram"][0] == [0, 0, 0, 1]
    code, out = run(capsys, "describe-space", "--n", "2")
    assert json.loads(out)["q_values"] is None


def test_threads_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_THREADS, "2")
    code, out = run(capsys, "adapted", "--cycles", "1,1")
    assert code == 0
    one = json.loads(out)
    code, out = run(capsys, "adapted", "--cycles", "1,1", "--threads", "1")
    assert json.loads(out) == one


def test_cache_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.ENV_CACHE, str(tmp_path))
    code, _ = run(capsys, "adapted", "--cycles", "1,1", "--cache", "")
    assert code == 0
    assert len(list(tmp_path.iterdir())) == 1
