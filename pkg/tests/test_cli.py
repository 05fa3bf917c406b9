import io
import json
import subprocess
import sys

import pytest

from flasque.cli import run
from flasque.cyclo import emit_table


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv", [[], ["bogus"], ["group"], ["group", "X7"], ["tower", "D15"],
                                  ["cohomology", "C2", "--kind", "nope"],
                                  ["selftest", "--criteria", "a"]])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 1 and "usage error" in err


def test_group_json():
    code, out, _ = call("group", "D6", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["result"]["order"] == 12 and data["exit"] == 0


def test_classify_in_list():
    code, out, _ = call("classify", "C9xD5", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["in_list"] is True


def test_tower_and_classgroup_codes():
    assert call("tower", "D15", "--n", "15")[0] == 0
    assert call("classgroup", "SD32")[0] == 3
    assert call("classgroup", "D9")[0] == 0


def test_cohomology_exit_codes():
    code, out, _ = call("cohomology", "C2", "--kind", "sign")
    assert code == 0 and "flabby: False" in out
    assert call("cohomology", "Q16", "--kind", "trivial")[0] == 3


def test_resolve_certifies_sign():
    code, out, _ = call("resolve", "C2", "--kind", "sign", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["class_trivial"] is True


def test_json_is_reproducible():
    a = call("classgroup", "C9xD5", "--format", "json")[1]
    assert a == call("classgroup", "C9xD5", "--format", "json")[1]


def test_lattice_file_round_trip(tmp_path):
    code, out, _ = call("lattice", "D3", "--kind", "permutation", "--subgroup", "tau")
    assert code == 0
    path = tmp_path / "m.json"
    path.write_text(out)
    code2, out2, _ = call("lattice", "D3", "--lattice", str(path))
    assert code2 == 0 and out2 == out
    assert call("lattice", "D3", "--lattice", str(tmp_path / "missing.json"))[0] == 1


def test_table_override(tmp_path):
    path = tmp_path / "t.tsv"
    path.write_text(emit_table([23]).replace("23\t3\t", "23\t5\t"))
    code, out, _ = call("classgroup", "C23", "--table", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["result"]["total"] == "Known(5)"
    bad = tmp_path / "bad.tsv"
    bad.write_text("garbage\n")
    assert call("classgroup", "C23", "--table", str(bad))[0] == 1


def test_devissage_verb():
    code, out, _ = call("devissage", "D3", "--n", "3", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["psi_certified"] and res["split_certified"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "flasque", "classgroup", "C23"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "3" in p.stdout
