import io
import json

import pytest

from biquotient.catalog import UPPER4
from biquotient.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_series_json_schema():
    code, out = run("series", "winkelmann8", "--json")
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"command", "inputs", "verdict", "data", "provenance", "seed", "versions"}
    assert report["data"]["dims"] == [8, 4, 1, 0]


def test_file_input_and_slice(tmp_path):
    path = tmp_path / "upper4.lie"
    path.write_text(UPPER4)
    code, out = run("slice", str(path), "--chart", "twoblock", "--json")
    report = json.loads(out)
    assert report["verdict"] == "SliceFound"
    assert report["data"]["functions"] == ["-y2*y3 + z"]


def test_refuted_exit_code():
    code, out = run("freeness", "winkelmann8", "--v", "h", "--json")
    assert json.loads(out)["verdict"] == "Refuted"
    assert code != 0


def test_bad_input_exits_one(tmp_path):
    path = tmp_path / "bad.lie"
    path.write_text("algebra bad dim 3\nbasis X1 X2 X3\n[X1,X2] = X3\n[X1,X3] = X1\n")
    code, out = run("validate", str(path), "--json")
    assert code == 1
    assert "Jacobi" in json.loads(out)["data"]["error"]


def test_depth_note():
    code, out = run("depth", "yoshino-quotient", "--json")
    data = json.loads(out)["data"]
    assert data["results"][0]["note"] == "g^(6) ≠ 0"


def test_seed_changes_only_seed_field():
    _, a = run("freeness", "upper4", "--json", "--seed", "3")
    _, b = run("freeness", "upper4", "--json", "--seed", "3")
    assert a == b


@pytest.mark.parametrize("cmd", ["induced", "reduce", "validate"])
def test_human_output(cmd):
    code, out = run(cmd, "upper4")
    assert code == 0 and out.startswith(cmd)
