import json
import re
import subprocess
import sys

import pytest

from tripartite import reproduce
from tripartite.cli import main
from tripartite.gates import constant
from tripartite.linalg import identity, matrix_to_json
from tripartite.qubits import b_state, state_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def a4_gens(tmp_path):
    p = tmp_path / "a4.json"
    p.write_text(json.dumps([matrix_to_json(constant("x_a4")), matrix_to_json(constant("y_a4"))]))
    return str(p)


def test_tangle(capsys, tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps(state_to_json(b_state())))
    code, out, _ = run(capsys, "tangle", "--state", str(p), "--json")
    d = json.loads(out)
    assert code == 0 and d["tau3"] == "1/4" and d["tau_A(BC)"] == "3/4"


def test_group_order_methods_agree(capsys, a4_gens):
    for method in ("bsgs", "enumerate"):
        code, out, _ = run(capsys, "group", "order", "--gens", a4_gens, "--method", method, "--json")
        assert code == 0 and json.loads(out)["order"] == 12


def test_group_derived_writes_generators(capsys, a4_gens, tmp_path):
    out_path = tmp_path / "d.json"
    code, out, _ = run(capsys, "group", "derived", "--gens", a4_gens, "--out", str(out_path), "--json")
    assert code == 0 and json.loads(out)["derived_order"] == 4
    code, out, _ = run(capsys, "group", "order", "--gens", str(out_path), "--json")
    assert json.loads(out)["order"] == 4


def test_group_limit_is_input_error(capsys, tmp_path):
    p = tmp_path / "shear.json"
    p.write_text(json.dumps([{"rows": 2, "cols": 2, "field": {"type": "rational"}, "entries": [["1", "1"], ["0", "1"]]}]))
    code, _, err = run(capsys, "group", "order", "--gens", str(p), "--method", "enumerate", "--limit", "20")
    assert code == 2 and "20" in err


def test_lie_commands(capsys, a4_gens, tmp_path):
    closure = tmp_path / "g.json"
    code, out, _ = run(capsys, "lie", "closure", "--basis", a4_gens, "--out", str(closure), "--json")
    assert code == 0 and json.loads(out)["dim"] == 9

    code, _, _ = run(capsys, "constants", "ga4", "--dump")
    ga4 = tmp_path / "ga4.json"
    code, out, _ = run(capsys, "constants", "ga4", "--dump")
    ga4.write_text(out)
    code, out, _ = run(capsys, "lie", "table", "--basis", str(ga4), "--json")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "lie", "roots", "--basis", str(ga4), "--cartan", "h1,h2", "--json")
    d = json.loads(out)
    assert code == 0 and sorted(map(tuple, d["roots"])) == sorted(
        [("2", "-1"), ("-1", "2"), ("1", "1"), ("-2", "1"), ("1", "-2"), ("-1", "-1")]
    )
    code, out, _ = run(capsys, "lie", "signature", "--basis", str(ga4), "--json")
    assert code == 0


def test_lie_table_mismatch_exit(capsys, tmp_path):
    code, out, _ = run(capsys, "constants", "sl3", "--dump")
    arr = json.loads(out)
    arr[0]["name"], arr[1]["name"] = arr[1]["name"], arr[0]["name"]
    p = tmp_path / "swapped.json"
    p.write_text(json.dumps(arr))
    code, out, _ = run(capsys, "lie", "table", "--basis", str(p))
    assert code == 1


def test_eigencheck(capsys, tmp_path):
    code, out, _ = run(capsys, "eigencheck", "s2", "--json")
    assert code == 0 and json.loads(out)["signs"] == [[1, -1, -1], [-1, 1, -1], [-1, -1, 1], [1, 1, 1]]
    eye = tmp_path / "eye.json"
    eye.write_text(json.dumps(matrix_to_json(identity(4))))
    code, out, _ = run(capsys, "eigencheck", str(eye), "--json")
    assert code == 1 and json.loads(out) == {"eigenvectors": False, "row": 1, "observable": 1}
    code, _, _ = run(capsys, "eigencheck", "s3")
    assert code == 2  # 8 columns against the 4 x 4 triple
    code, out, _ = run(capsys, "eigencheck", "s3", "--triple", "three_qubit")
    assert code == 0
    code, _, err = run(capsys, "eigencheck", "w7.b")
    assert code == 2 and "external reference" in err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "sl3.ad.")
    assert code == 0 and len(out.strip().splitlines()) == 8
    code, out, _ = run(capsys, "constants", "s2", "--dump")
    assert json.loads(out)["rows"] == 4


def test_bad_json_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('[\n  {"rows": 2,,}\n]')
    code, _, err = run(capsys, "group", "order", "--gens", str(p))
    assert code == 2 and re.search(r"line 2, column \d+", err)
    code, _, err = run(capsys, "tangle", "--state", str(tmp_path / "missing.json"))
    assert code == 2


def test_seed_env(capsys, a4_gens, monkeypatch):
    monkeypatch.setenv("TRIPARTITE_SEED", "17")
    code, out, _ = run(capsys, "group", "order", "--gens", a4_gens, "--json")
    assert code == 0 and json.loads(out)["order"] == 12
    monkeypatch.setenv("TRIPARTITE_SEED", "abc")
    code, _, err = run(capsys, "group", "order", "--gens", a4_gens)
    assert code == 2 and "TRIPARTITE_SEED" in err


# -- reproduce ---------------------------------------------------------------------

def test_reproduce_exit_codes(capsys):
    code, _, _ = run(capsys, "reproduce", "entanglement")
    assert code == 0
    code, out, _ = run(capsys, "reproduce", "gates")
    assert code == 1 and "FAIL" in out


def test_reproduce_is_deterministic_without_timings(capsys):
    _, a, _ = run(capsys, "reproduce", "--json", "--no-timings")
    _, b, _ = run(capsys, "reproduce", "--json", "--no-timings")
    assert a == b
    assert all(e["runtime_ms"] == 0 for e in json.loads(a)["entries"])


def test_report_covers_every_criterion():
    r = reproduce.run_report(tier="fast")
    ids = [e.claim_id for e in r.entries]
    assert ids == sorted(ids, key=reproduce.claim_sort_key)
    assert {i.split(".")[0] for i in ids} == {f"ac{k}" for k in range(1, 11)}
    assert all(e.status in reproduce.STATUSES for e in r.entries)
    assert all(e.paper_location and "Eq." not in e.paper_location for e in r.entries)


def test_section_filter():
    r = reproduce.run_report(sections=["lie"])
    assert r.entries and {e.claim_id.split(".")[0] for e in r.entries} < {f"ac{k}" for k in range(1, 11)}
    full = {e.claim_id for e in reproduce.run_report().entries}
    assert {e.claim_id for e in r.entries} < full


def test_positional_sections(capsys):
    _, out, _ = run(capsys, "reproduce", "entanglement", "--json", "--no-timings")
    ids = [e["claim_id"] for e in json.loads(out)["entries"]]
    assert ids and all(i.startswith(("ac1.", "ac2.", "ac10.")) for i in ids)
    code, _, err = run(capsys, "reproduce", "nosuch")
    assert code == 2 and "nosuch" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "tripartite", "constants", "x_a4"], capture_output=True, text=True)
    assert p.returncode == 0 and "x_a4" in p.stdout
