import json
import subprocess
import sys

import pytest

from phasespace import cli, star


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def results(out):
    return {r["name"]: r for r in json.loads(out)["results"]}


def test_demo(capsys):
    code, out, _ = run(capsys, "demo")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "demo"
    assert set(doc) == {"command", "params", "results", "payloads"}
    r = results(out)
    assert r["q_variance"]["value"] == pytest.approx(0.5, abs=1e-6)
    assert r["uncertainty_product"]["value"] == pytest.approx(0.25, abs=1e-6)
    assert r["gap"]["value"] == pytest.approx(0.25, abs=1e-6)
    assert abs(r["star_variance"]["value"]) < 1e-8
    assert abs(r["hilbert_variance"]["value"]) < 1e-10
    for item in doc["results"]:
        assert set(item) == {"name", "value", "equation_tag", "tolerance"}
        assert item["equation_tag"]
    table = doc["payloads"]["energy_marginal"]
    assert len(table["density"]) == 64 == len(table["exponential_reference"])


def test_demo_flags(capsys):
    code, out, _ = run(capsys, "demo", "--omega", "2", "--bins", "16", "--grid", "-6,6,192,-10,10,192")
    assert code == 0
    doc = json.loads(out)
    assert doc["params"]["omega"] == "2"
    assert results(out)["gap"]["value"] == pytest.approx(1.0, abs=1e-6)
    assert len(doc["payloads"]["energy_marginal"]["density"]) == 16


def test_demo_is_byte_identical(capsys):
    _, first, _ = run(capsys, "demo")
    _, second, _ = run(capsys, "demo")
    assert first == second


def test_star(capsys):
    code, out, _ = run(capsys, "star", "q^2", "p^2")
    assert code == 0
    assert results(out)["star_product"]["value"] == "q^2*p^2 + 2i*q*p - 1/2"


def test_star_csv(capsys):
    code, out, _ = run(capsys, "star", "q", "p", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:2] == ["name,value,equation_tag,tolerance",
                                    "star_product,q*p + (1/2)i,moyal-star-product,0.0"]


def test_dispersion_delta(capsys):
    code, out, _ = run(capsys, "dispersion", "q^2 + p^2", "delta", "1/2", "-3")
    r = results(out)
    assert code == 0
    assert r["mean"]["value"] == pytest.approx(9.25)
    assert r["variance"]["value"] == 0
    assert r["gap"]["value"] == pytest.approx(1.0)


def test_dispersion_ground(capsys):
    code, out, _ = run(capsys, "dispersion", "1/2*p^2 + 1/2*q^2", "ground", "1", "1")
    r = results(out)
    assert code == 0
    assert r["gap"]["value"] == pytest.approx(0.25, abs=1e-6)
    assert abs(r["star_variance"]["value"]) < 1e-8


def test_dispersion_ground_too_narrow(capsys):
    code, _, err = run(capsys, "dispersion", "q", "ground", "1", "1/16")
    assert code == 2
    assert "grid must span" in err


def test_verify_all(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 0
    doc = json.loads(out)
    assert all(r["value"] == "pass" for r in doc["results"])
    assert "checks passed" in err


def test_verify_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "weyl", "--seed", "3")
    _, second, _ = run(capsys, "verify", "weyl", "--seed", "3")
    assert first == second


def test_verify_detects_broken_star_product(capsys, monkeypatch):
    monkeypatch.setattr(star, "star_poly", lambda a, b: a * b)
    code, out, _ = run(capsys, "verify", "star")
    assert code == 1
    assert "fail" in [r["value"] for r in json.loads(out)["results"]]


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["star", "q/p", "q"],
    ["star", "q +", "p"],
    ["dispersion", "q", "delta", "x", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("phasespace: error:")


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["demo", "--grid", "1,2"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "phasespace.cli", "star", "q", "q"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"][0]["value"] == "q^2"
