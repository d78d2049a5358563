"""End-to-end tests for the command-line front end."""

import csv
import io
import json

import pytest

from goldens import FINITE_THREE_TENTHS, SECTOR_QUARTER, STRIP_QUARTER, TENTH_PLANES
from lonely_runner.cli import (
    ParseError,
    format_basis,
    main,
    parse_basis,
    parse_rational,
    parse_vector,
)
from lonely_runner.torus import canonicalize_symmetry

U2_BASIS = "1,0,1,1;1,1,0,2"
U8_BASIS = "1,2,3,2,0,0,0;0,0,0,2,1,2,3"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_round_trip():
    for text in ("1,2,3,4;0,0,1,0", "0,1,2,3;1,0,0,0", "-1,2;3,-4"):
        assert format_basis(*parse_basis(text)) == text
    assert parse_vector("7") == (7,)
    for bad in ("1,x", "", "1,2;3,4;5,6", "1,2;3"):
        with pytest.raises(ParseError):
            parse_basis(bad) if ";" in bad else parse_vector(bad)
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_d_vector(capsys):
    code, out, _ = run(capsys, "d", "--vector", "1,2,3,4")
    assert (code, out) == (0, "3/10\n")


def test_d_basis(capsys):
    code, out, _ = run(capsys, "d", "--basis", "0,1,2,3;1,0,0,0")
    assert (code, out) == (0, "1/4\n")


def test_d_json(capsys):
    code, out, _ = run(capsys, "d", "--vector", "1,2,3,4", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"d_value": "3/10"}


def test_d_improper_exit(capsys):
    code, _, err = run(capsys, "d", "--vector", "1,0,2")
    assert code == 1
    assert "improper subtorus" in err


def test_degenerate_basis_json_error(capsys):
    code, out, _ = run(capsys, "d", "--basis", "1,2,3;2,4,6", "--format", "json")
    assert code == 1
    assert json.loads(out) == {"error": "not a plane"}


def test_parse_errors_exit_2(capsys):
    assert run(capsys, "d", "--vector", "1,x,3")[0] == 2
    assert run(capsys, "d", "--basis", "1,2,3;4,5")[0] == 2
    assert run(capsys, "enumerate", "--n", "3", "--d", "1/0")[0] == 2


def test_argparse_rejects_unknown_choice():
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--basis", U2_BASIS, "--format", "csv"])
    assert exc.value.code == 2


def test_enumerate_text_round_trips(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--d", "1/10")
    assert code == 0
    got = {parse_basis(line) for line in out.strip().splitlines()}
    assert got == {canonicalize_symmetry(u, v) for u, v in TENTH_PLANES}


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--d", "1/4", "--format", "json")
    assert code == 0
    got = {(tuple(e["u"]), tuple(e["v"])) for e in json.loads(out)}
    assert got == {
        canonicalize_symmetry(u, v) for u, v in (STRIP_QUARTER, SECTOR_QUARTER)
    }


def test_enumerate_unsupported_exit_3(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "5", "--d", "1/10")
    assert code == 3
    assert "tight-instance data unavailable" in err


def test_spectrum_json_deterministic(capsys):
    first = run(capsys, "spectrum", "--basis", U2_BASIS, "--bound", "80")
    second = run(capsys, "spectrum", "--basis", U2_BASIS, "--bound", "80")
    assert first == second
    assert first[0] == 0
    payload = json.loads(first[1])
    assert payload["d_value"] == "1/4"
    assert payload["base_value_attained"] is True
    assert payload["certified_bound"] == 80
    assert [(p["alpha"], p["beta"]) for p in payload["progressions"]] == [("8", "12")]
    assert payload["exceptional_values"] == []


def test_spectrum_text(capsys):
    code, out, _ = run(
        capsys, "spectrum", "--basis", "0,1,2,3;1,0,0,0", "--bound", "60",
        "--format", "text",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "d_value 1/4"
    assert lines[1] == "base_value_attained true"
    assert any(line.startswith("progression alpha=16 beta=20") for line in lines)
    assert lines[-1] == "certified_bound 60"


def test_spectrum_trace_on_stderr(capsys):
    code, out, err = run(
        capsys, "spectrum", "--basis", U2_BASIS, "--bound", "60", "--trace"
    )
    assert code == 0
    assert err.startswith("route sector")
    assert json.loads(out)["d_value"] == "1/4"


def test_zero_locus_text(capsys):
    code, out, _ = run(capsys, "zero-locus", "--basis", U8_BASIS)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "12 elements"
    assert sum(1 for line in lines if line.startswith("point")) == 4
    assert sum(1 for line in lines if line.startswith("segment")) == 8


def test_zero_locus_json(capsys):
    code, out, _ = run(capsys, "zero-locus", "--basis", U8_BASIS, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 12
    points = [e for e in payload if e["kind"] == "point"]
    assert {tuple(e["at"]) for e in points} == {
        ("1/5", "1/5"), ("2/5", "2/5"), ("3/5", "3/5"), ("4/5", "4/5")
    }
    for e in payload:
        if e["kind"] == "segment":
            assert e["direction"] in ([0, 1], [1, 0])


def test_finiteness_text(capsys):
    code, out, _ = run(capsys, "finiteness", "--basis", U8_BASIS)
    assert code == 0
    assert out.splitlines()[0] == "finite"
    code, out, _ = run(capsys, "finiteness", "--basis", "0,1,2,3;1,0,0,0")
    assert code == 0
    assert out.splitlines()[0] == "infinite"
    assert "common_direction (0, 1)" in out


def test_finiteness_json(capsys):
    code, out, _ = run(capsys, "finiteness", "--basis", U8_BASIS, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "finite"
    dirs = {tuple(s["direction"]) for s in payload["witness_segments"]}
    assert len(dirs) == 2


def test_certify_text_counts(capsys):
    code, out, _ = run(capsys, "certify", "--basis", "0,1,2,3;1,0,0,0", "--bound", "30")
    assert code == 0
    fields = dict(
        line.split(" ", 1) for line in out.splitlines() if " " in line
    )
    total = int(fields["total"])
    partial = int(fields["improper"]) + int(fields["base_count"])
    prog_counts = [
        int(line.rsplit("count=", 1)[1])
        for line in out.splitlines()
        if line.startswith("progression")
    ]
    assert total == partial + sum(prog_counts)


def test_certify_csv(capsys):
    code, out, _ = run(
        capsys, "certify", "--basis", "0,1,2,3;1,0,0,0", "--bound", "20",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["A", "B", "D_value", "classification"]
    seen = set()
    for a, b, val, label in rows[1:]:
        int(a), int(b)
        if label == "improper":
            assert val == ""
        else:
            assert "/" in val or val.isdigit()
        seen.add(label.split("(")[0])
    assert "base" in seen and "progression" in seen


def test_certify_against_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "spectrum", "--basis", U2_BASIS, "--bound", "80")
    assert code == 0
    path = tmp_path / "desc.json"
    path.write_text(out)
    code, out, _ = run(capsys, "certify", "--basis", U2_BASIS, "--against", str(path))
    assert code == 0
    assert out.startswith("verified against")


def test_certify_against_detects_mismatch(tmp_path, capsys):
    _, out, _ = run(capsys, "spectrum", "--basis", U2_BASIS, "--bound", "80")
    payload = json.loads(out)
    payload["progressions"][0]["beta"] = "13"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "certify", "--basis", U2_BASIS, "--against", str(path))
    assert code == 1
    assert "mismatch" in out


def test_certify_against_malformed_file(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "certify", "--basis", U2_BASIS, "--against", str(path))
    assert code == 2
    assert "cannot load" in err
