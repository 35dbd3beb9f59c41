import json

import pytest

from ssetkit.cli import main
from ssetkit.core import isomorphic, map_to_point, same_structure
from ssetkit.build import boundary, standard_simplex, subcomplex_inclusion
from ssetkit.jsonio import map_to_json, set_from_json, set_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_and_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "wjoin(delta 0, delta 1)")
    assert code == 0
    X = set_from_json(out)
    assert X.nondeg_counts() == (3, 4, 2)
    # bit-exact round trip through export/import
    assert set_to_json(X) == out.strip()

    target = tmp_path / "out.json"
    code, _, _ = run(capsys, "build", "delta 2", "-o", str(target))
    assert code == 0
    assert set_from_json(target.read_text()).nondeg_counts() == (3, 3, 1)


def test_count_examples(capsys):
    code, out, _ = run(capsys, "count", "wjoin(delta 0, delta 1)",
                       "--dim", "2", "--nondeg")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "count", "delta 1", "--dim", "2")
    assert code == 0 and out.strip() == "4"


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "build", "join(delta 0,")
    assert code == 2
    assert "offset 13" in err


def test_check_command(capsys, tmp_path):
    mapfile = tmp_path / "incl.json"
    incl = subcomplex_inclusion(boundary(2), 2)
    mapfile.write_text(map_to_json(incl))
    code, out, _ = run(capsys, "check", str(mapfile),
                       "--class", "trivial", "--max-dim", "2")
    assert code == 1
    body = json.loads(out)
    assert body["holds"] is False and body["witness"] is not None

    ident = tmp_path / "id.json"
    from ssetkit.core import identity_map
    ident.write_text(map_to_json(identity_map(standard_simplex(2))))
    code, out, _ = run(capsys, "check", str(ident),
                       "--class", "trivial", "--max-dim", "2")
    assert code == 0 and "holds" in out


def test_certify_command(capsys):
    code, out, _ = run(capsys, "certify", "spine 3", "delta 3",
                       "--class", "inner", "--budget", "10000")
    assert code == 0
    cert = json.loads(out)
    assert len(cert["steps"]) == 4

    code, _, err = run(capsys, "certify", "delta 0", "delta 1",
                       "--class", "inner", "--budget", "100")
    assert code == 1 and "exhausted" in err

    code, _, err = run(capsys, "certify", "spine 4", "delta 4",
                       "--class", "inner", "--budget", "2")
    assert code == 3


def test_slice_commands(capsys, tmp_path):
    d2 = standard_simplex(2)
    setfile = tmp_path / "set.json"
    setfile.write_text(set_to_json(d2))
    from ssetkit.build import vertex_map
    mapfile = tmp_path / "map.json"
    mapfile.write_text(map_to_json(vertex_map(0, 2)))
    code, out, _ = run(capsys, "slice", str(setfile), str(mapfile),
                       "--max-dim", "1")
    assert code == 0
    s = set_from_json(out)
    assert s.truncation_dim == 1 and s.nondeg_count(0) == 3

    code, out, _ = run(capsys, "wide-slice", str(setfile), str(mapfile),
                       "--max-dim", "0")
    assert code == 0
    s = set_from_json(out)
    assert s.nondeg_count(0) == 3


def test_slice_target_mismatch(capsys, tmp_path):
    setfile = tmp_path / "set.json"
    setfile.write_text(set_to_json(standard_simplex(1)))
    from ssetkit.build import vertex_map
    mapfile = tmp_path / "map.json"
    mapfile.write_text(map_to_json(vertex_map(0, 2)))
    code, _, err = run(capsys, "slice", str(setfile), str(mapfile),
                       "--max-dim", "1")
    assert code == 2 and "target" in err


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "prism", "--n", "3")
    assert code == 0
    assert "prism[n=3] pass" in out
    assert "4" not in "" or True
    code, out, _ = run(capsys, "verify", "wjcounts", "--n", "2")
    assert code == 0


def test_export_command(capsys):
    code, out, _ = run(capsys, "export", "delta 2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export", "horn 2 1", "--format", "json")
    assert code == 0
    assert set_from_json(out).nondeg_counts() == (3, 2)


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "check", "/nonexistent.json",
                       "--class", "inner", "--max-dim", "2")
    assert code == 2
