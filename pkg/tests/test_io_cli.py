import json

import numpy as np
import pytest

from chebgruss.harness.cli import main
from chebgruss.harness.io import (
    InstanceFormatError,
    dumps,
    instance_from_json,
    instance_to_json,
    load_instance,
    parse_norm_spec,
)
from chebgruss.space import INF, Instance, NormDescriptor


@pytest.mark.parametrize(
    "text, expected",
    [
        ("l1", NormDescriptor.l1(3)),
        ("linf", NormDescriptor.linf(3)),
        ("lp:2.5", NormDescriptor.lp(2.5, 3)),
        ("lp:inf", NormDescriptor.lp(INF, 3)),
    ],
)
def test_parse_norm_spec(text, expected):
    assert parse_norm_spec(text, 3) == expected


def test_parse_norm_spec_rejects_unknown():
    with pytest.raises(ValueError):
        parse_norm_spec("l7", 2)


@pytest.mark.parametrize(
    "inst",
    [
        Instance([1.0, 2.0], [0.5, -1.0], [[1.0, 2.0], [3.0, 4.0]], NormDescriptor.lp(3.0, 2)),
        Instance([1.0, 2.0], [0.5 + 1j, -1.0], [[1.0], [3.0]], NormDescriptor.linf(1)),
        Instance([1.0, 2.0], [0.5, -1.0], [1 + 2j, -1j], NormDescriptor.complex_modulus()),
        Instance([1.0, 2.0], [0.5, -1.0], [2.0, 3.0], NormDescriptor.real_abs()),
    ],
)
def test_instance_roundtrip(inst):
    back = instance_from_json(json.loads(dumps(instance_to_json(inst))))
    assert back.norm == inst.norm
    np.testing.assert_array_equal(back.weights, inst.weights)
    np.testing.assert_array_equal(back.scalars, inst.scalars)
    np.testing.assert_array_equal(back.vectors, inst.vectors)


@pytest.mark.parametrize(
    "obj",
    [
        {"scalars": [1, 2], "vectors": [[1], [2]]},
        {"weights": [1, 1], "scalars": [[1, 2, 3], [1, 1]], "vectors": [[1], [2]]},
        {"weights": [1, 1], "scalars": [1, [1, 1]], "vectors": [[1], [2]]},
        {"weights": [1, 1], "scalars": [1, 2], "vectors": [[1], [2]], "norm": {"kind": "weird"}},
    ],
)
def test_malformed_instances(obj):
    with pytest.raises(InstanceFormatError):
        instance_from_json(obj)


def test_dumps_is_stable_and_17_digit():
    text = dumps({"b": 0.1, "a": [np.float64(1 / 3), np.int64(2), float("nan")], "c": True})
    assert text == dumps({"c": True, "a": [1 / 3, 2, float("nan")], "b": 0.1})
    assert "0.10000000000000001" in text
    assert "0.33333333333333331" in text
    parsed = json.loads(text)
    assert parsed["a"][1] == 2 and parsed["a"][2] is None
    assert text.endswith("\n")


def test_load_instance_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InstanceFormatError, match="bad.json"):
        load_instance(bad)
    with pytest.raises(OSError):
        load_instance(tmp_path / "missing.json")


def write_worked(tmp_path):
    path = tmp_path / "worked.json"
    path.write_text(json.dumps({"weights": [1, 1, 1], "scalars": [1, 2, 3], "vectors": [[1], [4], [9]], "norm": {"kind": "real_abs"}}))
    return path


def test_cli_eval(tmp_path, capsys):
    assert main(["eval", str(write_worked(tmp_path))]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["t_norm"] == 24
    assert out["instance_id"] == "worked"
    rows = {r["family"]: r for r in out["bounds"]}
    assert rows["thm31_max_sum"]["value"] == 24 and rows["thm31_max_sum"]["ratio"] == 1


def test_cli_eval_missing_file(tmp_path, capsys):
    assert main(["eval", str(tmp_path / "none.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_verify(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", "--n", "5", "--trials", "20", "--seed", "3", "--norm", "l1", "--dim", "2", "-o", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["instances"] == 20 and rep["violations"] == 0
    assert rep["config_echo"]["norm"] == "l1"
    assert set(rep["families"]["thm31_holder"]) == {"applicable", "applicability_rate", "violations", "mean_ratio", "max_ratio"}


def test_cli_verify_per_instance(capsys):
    assert main(["verify", "--n", "3", "--trials", "2", "--per-instance", "--weight-mode", "signed_random"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert [r["instance_id"] for r in rep["per_instance"]] == [0, 1]


def test_cli_sharpness(capsys):
    assert main(["sharpness", "--family", "thm31_max_sum", "--n", "2", "--budget", "100"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["best_ratio"] >= 0.999
    assert out["witness"]["weights"]


def test_cli_constants(capsys):
    assert main(["constants", "--n", "3", "--q", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["k_inf"] == pytest.approx(2 / 9)
    assert out["k_one_closed_form"] == pytest.approx(8 / 12)
    assert out["k_q"]["2"] == pytest.approx(10**0.5 / 9)


@pytest.mark.parametrize("argv", [["constants", "--n", "1"], ["verify", "--n", "3", "--trials", "0"], ["sharpness", "--family", "x", "--n", "2"]])
def test_cli_argument_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_cli_bad_norm(capsys):
    assert main(["verify", "--n", "3", "--trials", "1", "--norm", "l7"]) == 2
