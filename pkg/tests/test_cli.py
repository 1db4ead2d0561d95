import json
import subprocess
import sys

import pytest

from kleinian_d import DParams, Poly, make_spec
from kleinian_d.cli import run
from kleinian_d.parsing import parse
from kleinian_d.scalar import parse_scalar


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_derive_p(capsys):
    code, out, _ = call(capsys, "derive-p", "--q", "t^3+2*t^2-1")
    assert code == 0 and out == {"p": "3*t^2+12*t+12"}


def test_derive_q_round_trip(capsys):
    code, out, _ = call(capsys, "derive-q", "--p", "3*t^2+8*t+8")
    assert out == {"q": "t^3"}


def test_reduce(capsys):
    code, out, _ = call(capsys, "reduce", "--algebra", "d", "--q", "t^3", "--gamma", "0", "--expr", "v*u")
    assert code == 0 and out == {"element": "u*v-2*w"}


def test_reduce_round_trips(capsys):
    args = ["--q", "t^3+(1/2+i)*t-2", "--gamma", "1/3-i"]
    _, out, _ = call(capsys, "reduce", *args, "--expr", "w*v*u^2+(1/2+i)*v")
    spec = make_spec("D", Poly.parse("t^3+(1/2+i)*t-2"), parse_scalar("1/3-i"))
    assert spec.reduce(out["element"]) == spec.reduce("w*v*u^2+(1/2+i)*v")


def test_commutator_and_central(capsys):
    _, out, _ = call(capsys, "commutator", "--algebra", "h", "--p", "3*t^2+8*t+8", "--expr", "U", "--expr2", "V")
    assert out == {"element": "2*W"}
    _, out, _ = call(capsys, "center", "--p", "3*t^2+8*t+8", "--gamma", "1")
    assert out["central"] and out["q"] == "t^3"
    _, out, _ = call(capsys, "is-central", "--algebra", "h", "--p", "3*t^2+8*t+8", "--gamma", "1",
                     "--expr", out["omega"])
    assert out == {"central": True}


def test_diamond_and_degree(capsys):
    _, out, _ = call(capsys, "diamond", "--q", "t^3", "--gamma", "2")
    assert out["resolved"] and [o["overlap"] for o in out["overlaps"]] == ["wvu", "wwu", "wwv", "www"]
    _, out, _ = call(capsys, "degree", "--q", "t^3", "--expr", "u^3*v^2*w")
    assert out == {"standard": 26, "limit": [3, 7], "leading_term": "u^3*v^2*w"}


def test_iso_d(capsys):
    code, out, _ = call(capsys, "iso-d", "--q", "t^4", "--gamma", "1", "--q2", "t^4", "--gamma2", "-1")
    assert code == 0 and out["isomorphic"] and out["witness"]["name"] == "Θ"
    assert set(out) == {"isomorphic", "case", "witness", "moduli"}
    code, out, _ = call(capsys, "iso-d", "--q", "t^3", "--q2", "t^3-6*t", "--gamma2", "2*i")
    assert out["witness"]["name"] == "Ψ"
    target = DParams(Poly.parse(out["witness"]["target"]["q"]), parse_scalar(out["witness"]["target"]["gamma"]))
    for text in out["witness"]["images"]:
        assert target.spec.reduce(text).to_text() == text
    _, out, _ = call(capsys, "iso-d", "--q", "t^4+t", "--q2", "t^4")
    assert out["isomorphic"] is False and out["witness"] is None


def test_iso_h(capsys):
    _, out, _ = call(capsys, "iso-h", "--p", "3*t^2+8*t+8", "--gamma", "1", "--p2", "3*t^2+8*t+8", "--gamma2", "-1")
    assert out["isomorphic"] and out["case"] == "iii"


def test_aut_orbit_moduli(capsys):
    _, out, _ = call(capsys, "aut", "--q", "t^3-4*t")
    assert out["group"] == "S3" and out["order"] == 6
    _, out, _ = call(capsys, "orbit", "--q", "t^3")
    assert [o["witness"] for o in out["orbit"]] == ["Id", "Ψ", "Ψ²"]
    _, out, _ = call(capsys, "moduli", "--q", "t^3")
    assert out == {"moduli": ["64", "16", "0", "0"]}
    _, out, _ = call(capsys, "moduli", "--q", "4*t^3", "--gamma", "2")
    assert out == {"moduli": ["100", "13", "0", "0"]}  # (t^3, 1) after rescaling, k = 4


def test_semiclassical(capsys):
    _, out, _ = call(capsys, "semiclassical", "--q", "t^3", "--gamma", "1", "--expr", "u", "--expr2", "v")
    assert out == {"holds": True, "bracket": "2*Z"}


@pytest.mark.parametrize("argv", [
    ["reduce", "--q", "t^3+", "--expr", "u"],
    ["reduce", "--q", "t^3", "--expr", "u*x"],
    ["derive-p", "--q", "2*t^3"],
    ["reduce", "--q", "t^3"],
    ["iso-d", "--q", "2*t^3", "--q2", "t^3"],
    ["reduce", "--algebra", "h", "--p", "2*t^2", "--expr", "U"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out is None
    assert "error" in json.loads(err)


def test_unknown_verb_exit_2():
    proc = subprocess.run([sys.executable, "-m", "kleinian_d", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_verify_subset_is_deterministic(capsys, monkeypatch):
    import kleinian_d.cli as cli

    real = cli.run_acceptance
    monkeypatch.setattr(cli, "run_acceptance", lambda **kw: real(only=[6, 7, 8], **kw))
    code, first, err = call(capsys, "verify", "--seed", "3")
    assert code == 0 and first["failed"] == 0 and "[PASS]" in err
    _, second, _ = call(capsys, "verify", "--seed", "3")
    strip = lambda o: [(c["index"], c["passed"], c["detail"]) for c in o["checks"]]
    assert strip(first) == strip(second)


def test_verify_failure_exit_1(capsys, monkeypatch):
    import kleinian_d.cli as cli
    from kleinian_d.checks import CheckResult

    monkeypatch.setattr(cli, "run_acceptance",
                        lambda **kw: [CheckResult(1, "stub", False, "forced", 0.0)])
    code, out, _ = call(capsys, "verify")
    assert code == 1 and out["failed"] == 1
