import json

import numpy as np
import pytest

from qspkit import io
from qspkit.cli import main
from qspkit.poly import LaurentPolynomial as LP


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def target(tmp_path):
    b = LP(0, [0.2, -0.1j, 0.15 + 0.05j, 0.1])
    return write(tmp_path / "b.json", io.poly_to_json(b))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_full_pipeline(tmp_path, target, capsys):
    comp = str(tmp_path / "comp.json")
    seq = str(tmp_path / "seq.json")
    phases = str(tmp_path / "phases.json")
    assert main(["complete", "--input", target, "--out", comp]) == 0
    data = json.loads(open(comp).read())
    assert set(data) >= {"a", "b", "c_hat", "grid_size", "eta", "residual"}

    assert main(["inverse-nlft", "--input", comp, "--out", seq]) == 0
    for method in ("direct", "layer-strip"):
        alt = str(tmp_path / f"seq_{method}.json")
        assert main(["inverse-nlft", "--input", comp, "--method", method, "--out", alt]) == 0
        np.testing.assert_allclose(io.sequence_from_json(json.load(open(alt))).values,
                                   io.sequence_from_json(json.load(open(seq))).values, atol=1e-12)

    code, out, _ = run(["verify", "--pair", comp, "--sequence", seq], capsys)
    errs = json.loads(out)
    assert code == 0 and errs["completion_err"] <= 1e-12 and errs["forward_err"] <= 1e-12

    assert main(["phases", "--sequence", seq, "--out", phases]) == 0
    ph = json.load(open(phases))
    assert ph["canonical"] is True and len(ph["phi"]) == 4

    code, out, _ = run(["eval", "--phases", phases, "--z-re", "0", "--z-im", "1"], capsys)
    U = np.array([io.complex_from_json(r) for r in json.loads(out)["matrix"]])
    assert code == 0 and np.allclose(U.conj().T @ U, np.eye(2), atol=1e-12)
    # first row of the protocol is (a, b) times z^n
    a, b = io.poly_from_json(data["a"]), io.poly_from_json(data["b"])
    np.testing.assert_allclose(U[0], [complex(a(1j)) * 1j ** 3, complex(b(1j))], atol=1e-12)


def test_eval_csv(tmp_path, capsys):
    p = write(tmp_path / "ph.json", {"lambda": 0, "phi": [0.0], "theta": [0.0], "canonical": True})
    code, out, _ = run(["eval", "--phases", p, "--z-re", "1", "--z-im", "0", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "row,col,re,im" and lines[1] == "0,0,1.0,0.0"


def test_phases_switch_and_shift(tmp_path, capsys):
    s = write(tmp_path / "s.json", {"support_start": 2, "values": [[0, 0.5], [0, -0.3]]})
    code, out, _ = run(["phases", "--sequence", s, "--switch"], capsys)
    ph = json.loads(out)
    assert code == 0 and ph["support_shift"] == 2
    assert ph["phi"][-1] == pytest.approx(np.arctan(-0.3) + np.pi / 2)


def test_invalid_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["complete", "--input", str(bad)], capsys)[0] == 2
    assert run(["complete", "--input", str(tmp_path / "missing.json")], capsys)[0] == 2
    big = write(tmp_path / "big.json", io.poly_to_json(LP(0, [0.7, 0.7])))
    code, _, err = run(["complete", "--input", big], capsys)
    assert code == 2 and "sup-norm" in err
    p = write(tmp_path / "ph.json", {"lambda": 0, "phi": [0.0], "theta": [0.0]})
    assert run(["eval", "--phases", p, "--z-re", "2", "--z-im", "0"], capsys)[0] == 2
    assert run(["bench", "--degrees", "10,5"], capsys)[0] == 2


def test_numerical_failure_exit_code(target, monkeypatch, capsys):
    import qspkit.cli as cli
    from qspkit.errors import NonConvergent

    def fail(*a, **k):
        raise NonConvergent("forced")

    monkeypatch.setattr(cli, "complete", fail)
    code, _, err = run(["complete", "--input", target], capsys)
    assert code == 3 and "NonConvergent" in err


def test_bench_outputs(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert main(["bench", "--degrees", "4,6", "--format", "csv", "--out", str(out), "--seed", "3"]) == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("degree,method,repeat") and len(rows) == 3
    code, text, _ = run(["bench", "--degrees", "4", "--methods", "direct,layer-strip"], capsys)
    data = json.loads(text)
    assert code == 0 and [r["method"] for r in data["records"]] == ["direct", "layer_strip"]
    code, text, _ = run(["bench", "--degrees", "4", "--methods", "", "--format", "csv"], capsys)
    assert code == 0 and text.splitlines() == ["degree,method,repeat,wall_time_s,completion_err,forward_err,status"]


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "qspkit", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "inverse-nlft" in res.stdout
