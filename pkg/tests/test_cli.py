import json
import shutil
import subprocess
from pathlib import Path

import pytest

from k1wb.cli.fileformat import ParseError, Workspace, parse, serialize
from k1wb.cli.main import main
from k1wb.linalg import GF, ZZ

FIXTURES = Path(__file__).parent / "fixtures"
F5_FIXTURE = str(FIXTURES / "f5_class2.json")
PL_FIXTURE = str(FIXTURES / "swap_lemma_z.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- file format ----------------------------------------------------------------

def test_empty_workspace_round_trips():
    for ring in (ZZ, GF(7)):
        text = serialize(Workspace(ring))
        assert serialize(parse(text)) == text


@pytest.mark.parametrize("path", [F5_FIXTURE, PL_FIXTURE])
def test_fixture_round_trips(path):
    text = Path(path).read_text()
    once = serialize(parse(text))
    assert serialize(parse(once)) == once
    assert once == text


@pytest.mark.parametrize("doc,msg", [
    ('{"ring": "Q"}', "ring"),
    ('{"ring": "GF(6)"}', "not prime"),
    ('{"ring": "Z", "objects": {"x": {"generators": "1", "relations": '
     '{"rows": "1", "cols": "1", "data": ["a"]}}}}', "integer"),
    ('{"ring": "Z", "objects": {"x": {"generators": "1", "relations": '
     '{"rows": "1", "cols": "2", "data": ["1"]}}}}', "entries"),
    ('{"ring": "Z", "morphisms": {"m": {"src": "x", "dst": "x", "matrix": {}}}}', "unknown object"),
    ('{"ring": "Z",', "line 1"),
])
def test_parse_errors(doc, msg):
    with pytest.raises(ParseError, match=msg):
        parse(doc)


# -- commands -------------------------------------------------------------------

def test_class_on_f5_fixture(capsys):
    code, out, _ = run(capsys, "class", F5_FIXTURE, "--dses", "d")
    assert code == 0 and out.strip() == "2 mod 5"


def test_class_on_swap_lemma(capsys):
    code, out, _ = run(capsys, "class", PL_FIXTURE, "--dses", "pl")
    assert code == 0 and out.strip() == "+1"


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", F5_FIXTURE)
    assert code == 0 and "0 problems" in out


def test_check3x3_holds(capsys):
    code, out, _ = run(capsys, "check3x3", F5_FIXTURE, "--diagram", "swap_schema")
    assert code == 0 and "relation holds" in out


def test_check3x3_mutated_fixture_exits_1(tmp_path, capsys):
    doc = json.loads(Path(F5_FIXTURE).read_text())
    doc["diagrams"]["swap_schema"]["rows"][0]["g2"] = doc["dses"]["d"]["g1"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check3x3", str(bad), "--diagram", "swap_schema")
    assert code == 1 and "invalid diagram" in out
    code, _, _ = run(capsys, "validate", str(bad))
    assert code == 1


def test_phi_and_resolve(tmp_path, capsys):
    out_file = tmp_path / "phi.json"
    code, _, _ = run(capsys, "phi", F5_FIXTURE, "--dses", "d", "--emit", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "class", str(out_file), "--dses", "output")
    assert code == 0 and out.strip() == "3 mod 5"
    res = tmp_path / "res.json"
    code, out, _ = run(capsys, "resolve", F5_FIXTURE, "--dses", "d", "--emit", str(res))
    assert code == 0 and "class of input: 2 mod 5" in out
    code, _, _ = run(capsys, "validate", str(res))
    assert code == 0


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "--ring", "gf7", "--kind", "3x3-d", "--seed", "3")
    _, b, _ = run(capsys, "gen", "--ring", "gf7", "--kind", "3x3-d", "--seed", "3")
    assert a == b and json.loads(a)["ring"] == "GF(7)"


def test_gen_then_check(tmp_path, capsys):
    f = tmp_path / "g.json"
    for kind in ("3x3-a", "3x3-b", "3x3-c", "3x3-d"):
        assert main(["gen", "--ring", "Z", "--kind", kind, "--seed", "1", "--emit", str(f)]) == 0
        code, _, _ = run(capsys, "check3x3", str(f), "--diagram", "D")
        assert code == 0


def test_general_class_through_cli(tmp_path, capsys):
    f = tmp_path / "g.json"
    assert main(["gen", "--ring", "Z", "--kind", "dses-general", "--seed", "4",
                 "--emit", str(f)]) == 0
    code, out, _ = run(capsys, "class", str(f), "--dses", "d", "--general")
    assert code == 0 and out.strip() in ("+1", "-1")
    code, _, _ = run(capsys, "gen", "--ring", "gf5", "--kind", "dses-general")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["class", "/nonexistent/file.json", "--dses", "d"],
    ["class", F5_FIXTURE, "--dses", "missing"],
    ["frobnicate"],
    ["gen", "--ring", "Q", "--kind", "dses"],
])
def test_input_errors_exit_3(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 3


def test_malformed_matrix_exits_3(tmp_path, capsys):
    doc = json.loads(Path(F5_FIXTURE).read_text())
    doc["morphisms"]["d.f1"]["matrix"]["data"] = ["1"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 3 and "entries" in err


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--cases", "2", "--seed", "7", "--json")
    rows = json.loads(out)
    assert code == 0
    assert [r["id"] for r in rows] == list(range(1, 12))
    assert all(r["status"] == "pass" for r in rows)


@pytest.mark.skipif(shutil.which("k1wb") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["k1wb", "class", F5_FIXTURE, "--dses", "d"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "2 mod 5"
