import csv
import io
import json
import math

import pytest

from fracschro.cli import main

STRIPES = '{"type": "periodic", "period": 2, "on": [0, 1]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_hermite_norms_half_line_and_line(capsys):
    code, out, err = run(capsys, "hermite-norms", "--set", '{"type": "halfline", "from": 0}', "--n-max", "20")
    assert code == 0
    table = rows(out)
    assert list(table[0]) == ["n", "set_id", "norm", "running_inf", "quadrature_error_estimate"]
    assert all(abs(float(r["norm"]) - 1 / math.sqrt(2)) < 1e-12 for r in table)
    manifest = json.loads(err.strip().splitlines()[-1])
    assert manifest["seed"] == 0 and manifest["truncation"] == 20 and "region_hash" in manifest
    code, out, _ = run(capsys, "hermite-norms", "--set", '{"type": "real"}', "--n-max", "20")
    assert all(abs(float(r["norm"]) - 1) < 1e-10 for r in rows(out))


def test_hermite_norms_periodic_set_stays_above_threshold(capsys):
    _, out, _ = run(capsys, "hermite-norms", "--set", STRIPES, "--n-max", "1500")
    assert float(rows(out)[-1]["running_inf"]) > 0.1


def test_malformed_json_exits_with_usage_code(capsys):
    code, _, err = run(capsys, "hermite-norms", "--set", "{nope", "--n-max", "3")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "hermite-norms", "--set", '{"type": "blob"}', "--n-max", "3")
    assert code == 2


def test_density_commands(capsys):
    cone = json.dumps({"type": "cone", "delta": math.pi / 4})
    code, out, _ = run(capsys, "density", "--set", cone, "--r1-grid", "1", "--r2-grid", "1,10,100")
    assert code == 0
    inner = [float(r["inner_running_inf"]) for r in rows(out)]
    assert inner == pytest.approx([1 / 4, 1 / 40, 1 / 400])
    _, out, _ = run(capsys, "density", "--set", '{"type": "halfline", "from": 0}', "--radii", "1,10,100")
    assert all(float(r["ratio"]) == 0.5 for r in rows(out))
    plane = '{"type": "product", "x": {"type": "real"}, "y": {"type": "real"}}'
    _, out, _ = run(capsys, "density", "--set", plane, "--r1-grid", "1,3", "--r2-grid", "2,5")
    assert all(float(r["ratio"]) == 1.0 for r in rows(out))


def test_density_flag_mismatch(capsys):
    code, _, _ = run(capsys, "density", "--set", STRIPES, "--r1-grid", "1", "--r2-grid", "1")
    assert code == 2
    code, _, _ = run(capsys, "density", "--set", '{"type": "cone", "delta": 0.5}', "--radii", "1")
    assert code == 2


def test_gramian_on_line(capsys, tmp_path):
    out_path = tmp_path / "g.json"
    code, _, _ = run(capsys, "gramian", "--set", '{"type": "real"}', "--T", repr(math.pi), "--s", "1",
                     "--n-max", "60", "--out", str(out_path))
    assert code == 0
    report = json.loads(out_path.read_text())
    assert abs(report["lambda_min"] - math.pi) < 1e-8
    sidecar = json.loads((tmp_path / "g.json.manifest.json").read_text())
    assert sidecar["truncation"] == 60


def test_gramian_refusal_exit_code(capsys):
    code, _, _ = run(capsys, "gramian", "--set", '{"type": "intervals", "items": [[300, 301]]}', "--T", "1",
                     "--n-max", "10")
    assert code == 3


def test_control_refusal_exit_code(capsys, tmp_path):
    state = tmp_path / "s.json"
    state.write_text(json.dumps({"d": 1, "coeffs": [[1, 0], [0, 1]]}))
    code, _, err = run(capsys, "control", "--f0", str(state), "--fT", str(state), "--T", "1",
                       "--set", '{"type": "intervals", "items": [[300, 301]]}')
    assert code == 3 and "refused" in err


def test_control_on_line(capsys, tmp_path):
    f0, fT = tmp_path / "a.json", tmp_path / "b.json"
    f0.write_text(json.dumps({"d": 1, "coeffs": [[1, 0], [0, 0], [0.5, 0.5]]}))
    fT.write_text(json.dumps({"d": 1, "coeffs": [[0, 0], [1, 0], [0, -1]]}))
    code, out, err = run(capsys, "control", "--f0", str(f0), "--fT", str(fT), "--T", repr(math.pi),
                         "--set", '{"type": "real"}', "--steps", "64")
    assert code == 0
    assert list(rows(out)[0]) == ["t", "index", "real", "imag"]
    assert json.loads(err.strip().splitlines()[-1])["residual"] < 1e-8


def test_evolve_at_zero_is_byte_identical(capsys, tmp_path):
    src = tmp_path / "state.json"
    src.write_bytes(b'{ "d": 1,\n  "coeffs": [[0.1, 0.2], [0.30000000000000004, -1e-3]] }\n')
    dst = tmp_path / "out.json"
    code, _, _ = run(capsys, "evolve", "--init", str(src), "--t", "0", "--s", "1", "--out", str(dst))
    assert code == 0 and dst.read_bytes() == src.read_bytes()


def test_evolve_half_period_flips_sign(capsys, tmp_path):
    src = tmp_path / "state.json"
    src.write_text(json.dumps({"d": 1, "coeffs": [[0.6, 0.0], [0.0, 0.8]]}))
    _, out, _ = run(capsys, "evolve", "--init", str(src), "--t", repr(math.pi), "--sign", "-1")
    coeffs = json.loads(out)["coeffs"]
    assert coeffs[0] == pytest.approx([-0.6, 0.0], abs=1e-14)
    assert coeffs[1] == pytest.approx([0.0, -0.8], abs=1e-14)


def test_annihilate_on_full_domain(capsys):
    code, out, _ = run(capsys, "annihilate", "--set", '{"type": "real"}', "--lambda-grid", "0,10,100",
                       "--half-width", "16", "--grid-size", "1024")
    assert code == 0
    table = rows(out)
    assert list(table[0]) == ["lambda", "band_lo", "band_hi", "bins", "c_tilde", "flag"]
    assert all(float(r["c_tilde"]) == pytest.approx(1.0) for r in table)


def test_annihilate_rejects_non_power_of_two(capsys):
    code, _, err = run(capsys, "annihilate", "--set", '{"type": "real"}', "--lambda-grid", "0",
                       "--grid-size", "1000")
    assert code == 2 and "power of two" in err


def test_hautus2d_is_reproducible(capsys):
    args = ("hautus2d", "--region", '{"type": "cone", "delta": 0.7853981633974483}', "--levels", "3,6",
            "--samples", "50000", "--seed", "7")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert [r["method"] for r in rows(first)] == ["montecarlo", "montecarlo"]


@pytest.mark.parametrize("argv, expected", [
    (["miller", "--k", "3", "--D", "4"], math.pi),
    (["kovrijkine-cube", "--gamma", "1", "--d", "1", "--L", "1", "--b", "1", "--C", "2"], 16.0),
    (["kovrijkine-intervals", "--gamma", "1", "--m", "1", "--L", "1", "--b", "1", "--C", "2"], 2 ** 2.5),
])
def test_constants_scalar_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, "constants", *argv)
    obj = json.loads(out)
    assert code == 0 and list(obj) == ["inputs", "value", "flags"]
    assert obj["value"] == pytest.approx(expected, abs=1e-12)


def test_constants_conversions(capsys):
    _, out, _ = run(capsys, "constants", "spectral-from-resolvent", "--M", "1", "--m", "2", "--D", "0.5")
    assert json.loads(out)["value"]["k"] == 4
    _, out, _ = run(capsys, "constants", "resolvent-from-spectral", "--k", "1", "--D", "1", "--epsilon", "1")
    assert json.loads(out)["value"]["M"] == 3 and json.loads(out)["value"]["m"] == 2
    code, _, _ = run(capsys, "constants", "spectral-from-resolvent", "--M", "1", "--m", "2", "--D", "2")
    assert code == 2
    _, out, _ = run(capsys, "constants", "free-budget", "--C", "2", "--C-prime", "2")
    assert json.loads(out)["value"]["d_const"] == pytest.approx(2048)


def test_reruns_give_identical_bytes(capsys):
    args = ("hermite-norms", "--set", STRIPES, "--n-max", "40", "--seed", "3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
