import json

import pytest
from click.testing import CliRunner

from artifact import fixtures
from artifact.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def test_every_expected_value_is_tagged():
    for name in fixtures.names():
        for key, entry in fixtures.get(name).expected.items():
            assert entry["provenance"] in ("quoted-text", "derived-oracle",
                                           "trivial"), (name, key)


def test_fixture_lookup_error():
    with pytest.raises(Exception):
        fixtures.get("nope")


def test_validate_file_and_fixture(runner, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"adjacency": [[0, 5], [0, 0]],
                                "dims": [1, 2]}))
    res = invoke(runner, ["validate", "--quiver", str(path)])
    assert res.exit_code == 0
    assert "total_dim 6" in res.output

    res = invoke(runner, ["validate", "--quiver", "gr42", "--json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["schema"] == 1 and doc["valid"]


def test_error_json_and_exit_code(runner):
    res = invoke(runner, ["validate", "--quiver", "missing.json"])
    assert res.exit_code == 2
    doc = json.loads(res.output)
    assert doc["error"]["type"] == "QuiverError"


def test_invalid_quiver_error(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"adjacency": [[0, 1], [1, 0]],
                                "dims": [1, 1]}))
    res = invoke(runner, ["validate", "--quiver", str(path)])
    assert res.exit_code == 2
    assert json.loads(res.output)["error"]["type"] == "NotAcyclic"


def test_gitdata_matrix(runner):
    res = invoke(runner, ["gitdata", "--quiver", "gr42", "--json"])
    doc = json.loads(res.output)
    assert doc["rank"] == 2 and doc["arrows"] == 6
    assert len(doc["weights"]) == 2 and len(doc["weights"][0]) == 6
    # row sums of the weight matrix reproduce the stability vector
    assert [sum(r) for r in doc["weights"]] == doc["stability"]


def test_meanders_check(runner):
    res = invoke(runner, ["meanders", "--quiver", "gr52", "--check",
                          "--json"])
    doc = json.loads(res.output)
    assert doc == {"agree": True, "anticones": 10, "meanders": 10,
                   "schema": 1}


def test_mirror_and_period(runner):
    res = invoke(runner, ["mirror", "--quiver", "pid20",
                          "--bundle", "pid20"])
    assert res.exit_code == 0 and "+" in res.output
    res = invoke(runner, ["period", "--quiver", "pid20",
                          "--bundle", "pid20", "--n", "6"])
    assert res.output.split() == ["1", "0", "0", "12", "48", "0", "900"]
    res = invoke(runner, ["period", "--quiver", "pid20", "--bundle",
                          "pid20", "--source", "toric", "--n", "4",
                          "--json"])
    doc = json.loads(res.output)
    assert doc["coefficients"] == ["1", "0", "0", "12", "48"]


def test_period_from_poly_and_polytope(runner, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(fixtures.PID20_POLY)
    res = invoke(runner, ["period", "--poly", str(path), "--n", "5"])
    assert res.output.split() == ["1", "0", "0", "12", "48", "0"]
    res = invoke(runner, ["polytope", "--poly", str(path), "--json"])
    doc = json.loads(res.output)
    assert doc == {"dim": 4, "lattice_points": 9, "normalized_volume": 17,
                   "schema": 1, "vertices": 8}


def test_mutate_command(runner, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("x + y + 1/y + x/y")
    res = invoke(runner, ["mutate", "--poly", str(path),
                          "--factor", "1 + x", "--check", "--n", "8"])
    assert res.exit_code == 0
    assert "period preserved to 8 terms: True" in res.output


def test_sagbi_verify_command(runner):
    res = invoke(runner, ["sagbi-verify", "--quiver", "gr42",
                          "--degree", "2"])
    doc = json.loads(res.output)
    assert doc["bijection"] == {"1": "pass"}
    assert doc["kernel_classes"] == 26
    assert doc["mismatches"] == []


def test_ladder_render(runner, tmp_path):
    out = tmp_path / "ld.png"
    res = invoke(runner, ["ladder", "--quiver", "gr42", "--render",
                          str(out), "--json"])
    doc = json.loads(res.output)
    assert doc["vertices"] == 3 and doc["arrows"] == 6
    assert out.exists() and out.stat().st_size > 0


def test_fixtures_list(runner):
    res = invoke(runner, ["fixtures", "list"])
    for name in fixtures.names():
        assert name in res.output


def test_fixtures_run_table_and_report(runner, tmp_path):
    rep = tmp_path / "rep"
    args = ["fixtures", "run", "--only", "gr42", "--only", "pid104",
            "--report", str(rep)]
    res = invoke(runner, args)
    assert res.exit_code == 0
    assert "gr42\tmeanders\tPASS" in res.output
    assert "pid104\tpartition_found\tPASS" in res.output
    assert (rep / "fixtures.tsv").exists()
    assert (rep / "gr42.png").stat().st_size > 0
    # byte-identical rerun (modulo the report side effects)
    res2 = invoke(runner, args)
    assert res2.output == res.output


def test_deterministic_json_output(runner):
    a = invoke(runner, ["stats", "--quiver", "yshaped1", "--json"]).output
    b = invoke(runner, ["stats", "--quiver", "yshaped1", "--json"]).output
    assert a == b
