import json
from fractions import Fraction

import pytest

from heatsums import cli
from heatsums.arith import CycloNumber, root_of_unity
from heatsums.model import make_spec

from helpers import simple


@pytest.fixture
def spec_file(tmp_path):
    def write(spec):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec.to_dict()))
        return str(path)

    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_alternating_plain(capsys):
    golden = json.loads(open(__file__.replace("test_cli.py", "data/golden.json")).read())
    code, out, _ = run(capsys, "sum", "alternating-S", "--n", "100", "--m", "13", "--plain")
    assert code == 0 and out == golden["S(100,13)"]


def test_cos_power_plain_flag_anywhere(capsys):
    assert run(capsys, "--plain", "sum", "cos-power", "--m", "5", "--n", "2", "--beta", "0")[1] == "5/2"
    assert run(capsys, "sum", "cos-power", "--m", "5", "--n", "2", "--beta", "0", "--plain")[1] == "5/2"


def test_main_identity_example(capsys, spec_file):
    path = spec_file(simple([2]))
    code, out, _ = run(capsys, "verify", "main-identity", "--spec", path, "--x", "0", "--y", "0", "--n", "2")
    assert code == 0 and json.loads(out)["equal"] is True


def test_integrality(capsys, spec_file):
    code, out, _ = run(capsys, "verify", "integrality", "--spec", spec_file(simple([5])), "--n", "2")
    assert code == 0 and json.loads(out)["a"] == "10"


def test_kernel_all_methods(capsys, spec_file):
    path = spec_file(simple([5, 3], ["1/3", "1/2"]))
    code, out, _ = run(capsys, "kernel", "torus", "--spec", path, "--x", "1,2", "--y", "0,1", "--n", "5", "--method", "all")
    data = json.loads(out)
    assert code == 0 and data["agree"] is True
    assert set(data["methods"]) == set(cli.METHODS)


def test_kernel_lattice(capsys, spec_file):
    code, out, _ = run(capsys, "kernel", "lattice", "--spec", spec_file(simple([4])), "--x", "2", "--n", "2", "--plain")
    assert code == 0 and out == "1/4"


def test_json_round_trip(capsys, spec_file):
    path = spec_file(simple([5], ["1/3"]))
    _, out, _ = run(capsys, "kernel", "torus", "--spec", path, "--x", "1", "--n", "3")
    value = cli.value_from_json(json.loads(out)["result"])
    assert isinstance(value, CycloNumber)
    from heatsums.torus import images_kernel

    assert value == images_kernel(simple([5], ["1/3"]), [1], [0], 3)
    for v in (Fraction(-3, 7), root_of_unity(12, 5) + Fraction(1, 2), 1.5 - 2j):
        back = cli.value_from_json(json.loads(json.dumps(cli.value_to_json(v))))
        assert back == v


def test_spectrum_round_trip(capsys, spec_file):
    _, out, _ = run(capsys, "spectrum", "--spec", spec_file(simple([4])))
    values = [cli.value_from_json(e["eigenvalue"]) for e in json.loads(out)["eigenvalues"]]
    assert values == [1, 0, -1, 0]


def test_check_only_appends_oracle(capsys):
    args = ["sum", "twisted-cos", "--m", "6", "--b", "1", "--r", "2", "--n", "7", "--alpha", "1/3"]
    _, plain_out, _ = run(capsys, *args)
    code, checked, _ = run(capsys, *args, "--check")
    before, after = json.loads(plain_out), json.loads(checked)
    assert code == 0 and after["oracle"]["match"] is True
    del after["oracle"]
    assert before == after


@pytest.mark.parametrize(
    "argv",
    [
        ["sum", "cos-power", "--m", "4", "--n", "6", "--beta", "1/5", "--check"],
        ["sum", "mult-char", "--m", "5", "--index", "2", "--b", "2", "--n", "6", "--check"],
        ["sum", "product-cos", "--moduli", "3,4", "--n", "6", "--check"],
        ["sum", "combo", "--m1", "3", "--m2", "4", "--n", "5", "--check"],
        ["sum", "mixed-2d", "--m1", "2", "--m2", "3", "--a", "1", "--b", "1", "--k", "2", "--check"],
    ],
)
def test_sum_checks_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["oracle"]["match"]


def test_float_angle(capsys):
    code, out, _ = run(capsys, "sum", "cos-power", "--m", "5", "--n", "2", "--beta", "0.25")
    assert code == 0 and "approx" in json.loads(out)["result"]


def test_snf_and_characters(capsys):
    _, out, _ = run(capsys, "snf", "--matrix", "[[2,4],[6,8]]")
    assert json.loads(out)["invariant_factors"] == [2, 4]
    _, out, _ = run(capsys, "characters", "--m", "5")
    assert len(json.loads(out)["characters"]) == 4


def test_simulate(capsys, spec_file):
    code, out, _ = run(capsys, "simulate", "--spec", spec_file(simple([4])), "--walks", "20000", "--n", "2", "--compare")
    assert code == 0 and json.loads(out)["pass"] is True


def test_invalid_spec_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"d": 1, "m": [3], "steps": [{"offset": [1], "weight": "1/2"}, {"offset": [-1], "weight": "1/3"}]}))
    code, _, err = run(capsys, "kernel", "torus", "--spec", str(bad), "--x", "0", "--n", "1")
    assert code == 2 and "error" in json.loads(err)


def test_missing_parameter_exits_2(capsys):
    code, _, err = run(capsys, "sum", "twisted-cos", "--m", "5", "--n", "2")
    assert code == 2 and "--b" in json.loads(err)["error"]


def test_bad_matrix_exits_2(capsys):
    assert run(capsys, "snf", "--matrix", "[[1,2],[3]]")[0] == 2


def test_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli.cf, "brute_force_trig_sum", lambda desc: CycloNumber.rational(42))
    code, out, err = run(capsys, "sum", "cos-power", "--m", "5", "--n", "2", "--check")
    assert code == 3
    assert json.loads(out)["oracle"]["match"] is False
    assert "mismatch" in json.loads(err)["error"]


def test_exact_spec_with_float_beta_exits_2(capsys, spec_file):
    spec = make_spec([3], {1: Fraction(1, 2), -1: Fraction(1, 2)}, [0.3])
    path = spec_file(spec)
    assert run(capsys, "kernel", "torus", "--spec", path, "--x", "0", "--n", "1")[0] == 2
