import json
import subprocess
import sys
from pathlib import Path

import pytest

from algebroid.caps import DEFAULT_DEGREE_CAP, DegreeCapError, degree_cap
from algebroid.cli import run
from algebroid.examples import malgrange
from algebroid.hopf_algebroid import format_presentation

DATA = Path(__file__).parent / "data"


def _json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify_example(capsys):
    code, data = _json(capsys, ["verify", "--example", "malgrange:2"])
    assert code == 0
    assert data["passed"] is True


def test_verify_presentation_file(tmp_path, capsys):
    path = tmp_path / "h3.txt"
    path.write_text(format_presentation(malgrange(3)))
    assert run(["verify", str(path)]) == 0
    assert "coassociativity" in capsys.readouterr().out


def test_verify_reports_a_counterexample(tmp_path, capsys):
    text = format_presentation(malgrange(2)).replace("y2 = y1^2 (x) y2 + y2 (x) y1", "y2 = y2 (x) y1")
    assert text != format_presentation(malgrange(2))
    path = tmp_path / "bad.txt"
    path.write_text(text)
    assert run(["verify", str(path)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("FAIL ")


def test_differentiate(capsys):
    code, data = _json(capsys, ["differentiate", "--example", "malgrange:3"])
    assert code == 0
    assert data["rank"] == 4
    assert data["flavor"] == "s"
    code, data = _json(capsys, ["differentiate", "--example", "malgrange:3", "--flavor", "t"])
    assert code == 0 and data["flavor"] == "t"


def test_differentiate_non_free(capsys):
    assert run(["differentiate", str(DATA / "ga_degenerate.txt")]) == 1
    assert "no unit pivot" in capsys.readouterr().err


def test_envelope(capsys):
    code, data = _json(capsys, ["envelope", "--example", "nonabelian_lr", "--samples", "5", "--words", "20"])
    assert code == 0
    assert data["primitives"] == ["e1", "e2"]
    assert [c["axiom"] for c in data["checks"]][-1] == "confluence"
    assert all(c["passed"] for c in data["checks"])


def test_envelope_of_a_hopf_algebroid(capsys):
    code, data = _json(capsys, ["envelope", "--example", "malgrange_quotient:2", "--samples", "3", "--words", "10"])
    assert code == 0
    assert data["primitives"] == ["dy0", "dy1"]


def test_dual(capsys):
    code, data = _json(capsys, ["dual", "--example", "group_algebra:3"])
    assert code == 0
    assert data["dual_basis"] == ["f0", "f1", "f2"]


def test_lift(capsys):
    code, data = _json(capsys, ["lift", "--example", "malgrange:1", "--degree", "2"])
    assert code == 0
    assert data["violations"] == []


def test_separability(capsys):
    code, data = _json(capsys, ["separability"])
    assert code == 0
    assert all(r["consistent"] for r in data)
    code, data = _json(capsys, ["separability", "--morphism", "H1_into_H2"])
    assert [r["verdicts"]["split_injective"] for r in data] == [True]


def test_reproduce_subset(capsys):
    code, data = _json(capsys, ["reproduce", "--only", "1", "3"])
    assert code == 0
    assert [r["criterion"] for r in data] == [1, 3]


def test_catalog(capsys):
    code, data = _json(capsys, ["catalog"])
    assert code == 0
    assert data["examples"]["malgrange"]["kind"] == "hopf"
    assert "H1_into_H2" in data["morphisms"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "--example", "nope"],
        ["verify", "--example", "malgrange:0"],
        ["verify", "/does/not/exist"],
        ["dual", "--example", "malgrange:1"],
        ["separability", "--morphism", "nope"],
        ["lift", "--degree", "9"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code = run(argv)
    assert code == 2, capsys.readouterr()
    assert capsys.readouterr().err.startswith("error:")


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["verify", "--flavor", "x"])
    assert info.value.code == 2


def test_degree_cap_precedence(monkeypatch):
    monkeypatch.delenv("ALGEBROID_DEGREE_CAP", raising=False)
    assert degree_cap() == DEFAULT_DEGREE_CAP
    monkeypatch.setenv("ALGEBROID_DEGREE_CAP", "6")
    assert degree_cap() == 6
    assert degree_cap(2) == 2
    monkeypatch.setenv("ALGEBROID_DEGREE_CAP", "many")
    with pytest.raises(DegreeCapError):
        degree_cap()


def test_environment_cap_reaches_the_cli(monkeypatch, capsys):
    monkeypatch.setenv("ALGEBROID_DEGREE_CAP", "2")
    assert run(["lift", "--example", "malgrange:1", "--degree", "3"]) == 2
    capsys.readouterr()
    assert run(["lift", "--example", "malgrange:1", "--degree", "3", "--degree-cap", "3"]) == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "algebroid", "catalog"], capture_output=True, text=True, check=True)
    assert "malgrange" in out.stdout
