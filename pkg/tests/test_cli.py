import json
import subprocess
import sys
from pathlib import Path

import pytest

from momentangle import fixtures
from momentangle.cli import EXIT_INPUT, EXIT_OK, main
from momentangle.simplicial import from_dict

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_text(capsys):
    code, out, _ = run(capsys, "betti", FIXTURES / "example-6.2.json", "--text", "--jobs", "1")
    assert code == EXIT_OK and out == fixtures.SUBDIVIDED_OCTAHEDRON_TABLE


def test_betti_json_and_dual(capsys):
    code, out, _ = run(capsys, "betti", FIXTURES / "polygon-5.json", "--jobs", "1")
    data = json.loads(out)
    assert code == EXIT_OK and data["betti"] == [1, 0, 0, 5, 5, 0, 0, 1] and data["dim_zk"] == 7
    code, out2, _ = run(capsys, "betti", FIXTURES / "polygon-5.json", "--dual")
    assert json.loads(out2)["entries"] == data["entries"]


def test_table_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "betti", FIXTURES / "figure-7.2.json", "--jobs", "1")
    path = tmp_path / "table.json"
    path.write_text(out)
    code, text, _ = run(capsys, "table", path, "--text")
    assert code == EXIT_OK and text == fixtures.FLAG_SPHERE8_TABLE


def test_jobs_do_not_change_output(capsys):
    _, one, _ = run(capsys, "betti", FIXTURES / "figure-7.2.json", "--jobs", "1")
    _, two, _ = run(capsys, "betti", FIXTURES / "figure-7.2.json", "--jobs", "2")
    assert one == two


def test_massey_classes(capsys):
    classes = json.dumps([[[1, 2], [2]], [[3, 4], [3]], [[5, 6], [5]]])
    code, out, _ = run(capsys, "massey", FIXTURES / "figure-1.1.json", "--classes", classes)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["nonvanishing"] and data["indeterminacy_dim"] == 0 and data["degree"] == 8
    assert data["representative"] == [[[1, 2, 3, 4, 5, 6], [2, 5], "-1"]]


def test_massey_auto(capsys):
    code, out, _ = run(capsys, "massey", FIXTURES / "example-7.7.json", "--auto",
                       "--degrees", "3,7,3", "--text")
    assert code == EXIT_OK and out.startswith("nonvanishing in H^12")


def test_massey_bad_input(capsys):
    code, _, err = run(capsys, "massey", FIXTURES / "figure-1.1.json", "--classes", "[[1,2]]")
    assert code == EXIT_INPUT and "error" in err
    code, _, _ = run(capsys, "massey", FIXTURES / "figure-1.1.json")
    assert code == EXIT_INPUT


def test_scan_file(capsys):
    code, out, _ = run(capsys, "scan", FIXTURES / "figure-1.1.json")
    data = json.loads(out)
    assert code == EXIT_OK and data["nonformal_certified"] and len(data["hits"]) == 1


def test_scan_directory_with_bad_file(capsys, tmp_path):
    (tmp_path / "a.json").write_text((FIXTURES / "figure-1.1.json").read_text())
    (tmp_path / "b.json").write_text((FIXTURES / "polygon-5.json").read_text())
    (tmp_path / "c.json").write_text("{not json")
    code, out, _ = run(capsys, "scan", tmp_path)
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["counts"] == {"non-formal (certified)": 1, "no lowest-degree obstruction": 1, "error": 1}
    assert [r["file"] for r in data["files"]] == ["a.json", "b.json", "c.json"]


def test_scan_empty_directory(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", tmp_path, "--text")
    assert code == EXIT_OK and out.strip().endswith("0 error")


def test_ranks(capsys):
    code, out, _ = run(capsys, "ranks", FIXTURES / "polygon-4.json", "-N", "6", "--text")
    assert code == EXIT_OK and out == "r:   2 3 4 5 6\nphi: 0 2 0 0 0\n"
    code, out, _ = run(capsys, "ranks", FIXTURES / "example-7.7.json",
                       "--poincare", FIXTURES / "example-7.7-poincare.json")
    phi = json.loads(out)["phi"]
    assert [phi[str(r)] for r in range(3, 14)] == list(fixtures.MASSEY8_RANKS.values())


def test_ranks_non_flag_without_series(capsys):
    code, _, err = run(capsys, "ranks", FIXTURES / "example-7.7.json")
    assert code == EXIT_INPUT and "Poincar" in err


def test_ranks_bad_series(capsys, tmp_path):
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"num": [[0, 0, "1"], [1, 1, "-1"]]}))
    code, _, _ = run(capsys, "ranks", FIXTURES / "polygon-4.json", "--poincare", bad)
    assert code == EXIT_INPUT


def test_constructions(capsys, tmp_path):
    code, out, _ = run(capsys, "bier", FIXTURES / "polygon-4.json")
    B = from_dict(json.loads(out))
    assert code == EXIT_OK and B.n == 8 and B.f_vector == (1, 8, 18, 12)
    path = tmp_path / "bier.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify-sphere", path)
    assert json.loads(out)["passes_sphere_checks"] is True
    code, out, _ = run(capsys, "dual", FIXTURES / "polygon-5.json")
    assert from_dict(json.loads(out)).f_vector == (1, 5, 10, 5)
    code, out, _ = run(capsys, "join", FIXTURES / "polygon-4.json", FIXTURES / "polygon-4.json")
    assert from_dict(json.loads(out)).n == 8
    code, out, _ = run(capsys, "cut", FIXTURES / "polygon-4.json", "--face", "1,2")
    assert from_dict(json.loads(out)).n == 5
    code, _, _ = run(capsys, "cut", FIXTURES / "polygon-4.json", "--face", "1,3")
    assert code == EXIT_INPUT


def test_arrangement_and_hilbert(capsys):
    code, out, _ = run(capsys, "arrangement", FIXTURES / "polygon-4.json", "--text")
    assert out.split() == ["{z1=z3=0}", "{z2=z4=0}"]
    code, out, _ = run(capsys, "hilbert", FIXTURES / "polygon-4.json")
    data = json.loads(out)
    assert data["f_vector"] == [1, 4, 4] and data["denominator_power"] == 2


def test_input_errors(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    assert run(capsys, "betti", missing)[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "facets": [[1, 2, 7]]}))
    assert run(capsys, "betti", bad)[0] == EXIT_INPUT
    ghost = tmp_path / "ghost.json"
    ghost.write_text(json.dumps({"n": 3, "facets": [[1, 2]]}))
    assert run(capsys, "betti", ghost)[0] == EXIT_INPUT
    assert run(capsys, "betti", FIXTURES / "polygon-4.json", "--field", "GF(2)")[0] == EXIT_INPUT


def test_reproduce_single(capsys):
    code, out, _ = run(capsys, "reproduce", "figure-1.1", "--text")
    assert code == EXIT_OK and out.strip().endswith("PASS")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "momentangle", "reproduce", "example-6.2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["pass"] is True
