import json

import numpy as np
import pytest

from kdcoherence import io
from kdcoherence.cli import DEFAULT_SEED, build_parser, main
from kdcoherence.mub import standard_mubs
from kdcoherence.pio import UpPioSpec


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def files(tmp_path):
    fam = standard_mubs(3)
    psi = np.ones(3) / np.sqrt(3)
    paths = {k: tmp_path / f"{k}.json" for k in ("state", "A", "B", "spec", "obs", "inc")}
    io.dump_json(io.state_to_json(np.outer(psi, psi)), paths["state"])
    io.dump_json(io.state_to_json(np.diag([0.5, 0.3, 0.2])), paths["inc"])
    io.dump_json(io.basis_to_json(fam.A), paths["A"])
    io.dump_json(io.basis_to_json(fam.B(1)), paths["B"])
    io.dump_json(io.spec_to_json(UpPioSpec(3, [[0, 1, 2]], [[1, 2, 0]], [0, 1, 2])), paths["spec"])
    io.dump_json(io.state_to_json(np.diag([1.0, 0.0, -1.0])), paths["obs"])
    return {k: str(v) for k, v in paths.items()}


def test_default_seed_documented():
    assert build_parser().parse_args(["gen-mubs", "--d", "3"]).seed == DEFAULT_SEED


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["gen-mubs", "--d", "3", "--bogus"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 1
    assert main(["gen-mubs", "--d", "4"]) == 1
    assert main(["sigma-line", "--mu", "0.7"]) == 1


def test_gen_mubs(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["gen-mubs", "--d", "3", "--out", str(out)]) == 0
    objs = io.load_json(out)
    assert [o["name"] for o in objs] == ["A", "B_1", "B_2", "B_3"]


def test_kd(files, capsys):
    code, out = run(capsys, "kd", "--state", files["state"], "--basis-a", files["A"], "--basis-b", files["B"])
    assert code == 0 and json.loads(out)["kd_classical"] is False
    code, out = run(capsys, "kd", "--state", files["inc"], "--basis-a", files["A"], "--basis-b", files["B"], "--csv")
    lines = out.strip().splitlines()
    assert lines[0] == "m,n,re,im" and len(lines) == 10


def test_classify(files, capsys):
    code, out = run(capsys, "classify", "--state", files["inc"], "--d", "3", "--pair", "1,3")
    res = json.loads(out)
    assert code == 0 and res["incoherent"]
    assert set(res["kd_classical_per_pair"]) == {"B_1", "B_3"}
    assert all(res["hull_member_per_pair"].values())


def test_coherence_measures(files, capsys):
    code, out = run(capsys, "coherence", "--state", files["state"], "--d", "3")
    assert code == 0 and abs(json.loads(out)["value"] - 2 / np.sqrt(3)) < 1e-6
    code, out = run(capsys, "coherence", "--state", files["state"], "--d", "3", "--measure", "l1")
    assert json.loads(out)["value"] == pytest.approx(2)
    assert main(["coherence", "--state", files["state"], "--d", "5"]) == 1


def test_channel_and_weak_value(files, capsys):
    code, out = run(capsys, "channel", "apply", "--spec", files["spec"], "--state", files["inc"])
    rho = io.state_from_json(json.loads(out))
    assert code == 0 and np.allclose(np.diag(rho).real, [0.2, 0.5, 0.3])
    code, out = run(capsys, "weak-value", "--obs", files["obs"], "--pre", files["state"], "--post", files["state"])
    assert code == 0 and json.loads(out)["reason"] == "none"


def test_witness_exit_codes(files, capsys):
    code, out = run(capsys, "witness", "--state", files["state"], "--d", "3")
    assert code == 0 and json.loads(out)["found"]
    code, out = run(capsys, "witness", "--state", files["inc"], "--d", "3")
    assert code == 3 and json.loads(out)["all_real_equal_diagonal"]


def test_verify(capsys):
    code, out = run(capsys, "verify", "theorem1", "--d", "3", "--samples", "500", "--seed", "1")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run(capsys, "verify", "appendixB", "--d", "3", "--samples", "500")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"]["identity_block_dephased"]["worst_margin"] > 0
    code, out = run(capsys, "verify", "theorem2", "--d", "11")
    assert code == 4 and json.loads(out)["advisory"]
    assert main(["verify", "theorem1", "--d", "4"]) == 1


def test_verify_optimizer_target_small(capsys):
    code, out = run(capsys, "verify", "theorem3", "--d", "3", "--samples", "10")
    assert code == 0 and json.loads(out)["ok"]


def test_figure2_small(tmp_path, capsys):
    out = tmp_path / "f.csv"
    assert main(["figure2", "--resolution", "5", "--starts", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lambda0,lambda1,c_kd_hat,c_l1"
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    assert np.all(rows[:, 0] ** 2 + rows[:, 1] ** 2 <= 1 + 1e-12)
    assert np.all(rows[:, 2] <= rows[:, 3] + 1e-6)
    corner = rows[(rows[:, 0] == 1) & (rows[:, 1] == 0)][0]
    assert corner[2] == pytest.approx(0, abs=1e-9) and corner[3] == pytest.approx(0, abs=1e-9)


def test_sigma_line_columns(capsys):
    code, out = run(capsys, "sigma-line", "--mu", "0,0.5")
    lines = out.strip().splitlines()
    assert lines[0] == "mu,c_kd_hat,reference,abs_error"
    mu0 = [float(x) for x in lines[1].split(",")]
    assert mu0[0] == 0 and abs(mu0[1]) < 1e-12 and mu0[2] == 0
    assert float(lines[2].split(",")[2]) == pytest.approx(np.sqrt(3) / 4)


@pytest.mark.parametrize("argv", [
    ["random-state", "--d", "5", "--seed", "3"],
    ["coherence", "--state", "{state}", "--d", "3", "--seed", "9"],
    ["sigma-line", "--mu", "0.1,0.2"],
])
def test_byte_identical(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second and first
