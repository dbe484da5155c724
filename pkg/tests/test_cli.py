"""End-to-end CLI behavior: verbs, exit codes, canonical output."""

import json
import subprocess
import sys

import gsrec.cli as cli_mod
from gsrec.cli import main

RUN_DELTA = {
    "schema": "gsrec-config/1",
    "group": {"kind": "cyclic", "n": 6},
    "family": {"kind": "min_size", "k": 2},
    "sets": {"A": [0, 1, 3]},
    "command": "delta",
}


def _invoke(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "gsrec.cli", *args],
        capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_run_delta_worked_example(tmp_path):
    cfg = _write(tmp_path, "job.json", RUN_DELTA)
    code, out, err = _invoke("run", cfg)
    assert code == 0 and err == ""
    report = json.loads(out)
    assert report["schema"] == "gsrec-report/1"
    assert report["result"]["delta"]["elements"] == [0, 3]
    assert report["timing"]["mode"] == "deterministic"
    assert report["inputs"]["sets"] == {"A": [0, 1, 3]}
    # byte-identical on repetition
    code2, out2, _ = _invoke("run", cfg)
    assert (code2, out2) == (code, out)


def test_run_output_file(tmp_path):
    cfg = _write(tmp_path, "job.json", RUN_DELTA)
    out_path = tmp_path / "report.json"
    code, out, _ = _invoke("run", cfg, "--output", str(out_path))
    assert code == 0 and out == ""
    report = json.loads(out_path.read_text(encoding="utf-8"))
    assert report["result"]["delta"]["elements"] == [0, 3]


def test_exit_codes_parse_validation_sizelimit(tmp_path):
    # undefined label -> parse error 2
    doc = dict(RUN_DELTA, parameters={"a": "B"})
    code, out, err = _invoke("run", _write(tmp_path, "a.json", doc))
    assert code == 2 and out == ""
    assert "gsrec: error:" in err and "undefined set label 'B'" in err
    # missing file -> parse error 2
    code, _, err = _invoke("run", str(tmp_path / "missing.json"))
    assert code == 2
    # asymmetric connection set -> validation error 3
    doc = {
        "schema": "gsrec-config/1",
        "group": {"kind": "cyclic", "n": 6},
        "sets": {"A": [0, 1]},
        "command": "independence_number",
    }
    code, _, err = _invoke("run", _write(tmp_path, "b.json", doc))
    assert code == 3 and "symmetri" in err
    # symmetric group past the hard bound -> size limit 4
    doc = {
        "schema": "gsrec-config/1",
        "group": {"kind": "symmetric", "n": 8},
        "sets": {"A": [0]},
        "command": "delta_parameter",
    }
    code, _, err = _invoke("run", _write(tmp_path, "c.json", doc))
    assert code == 4


def test_property_failure_maps_to_exit_five(tmp_path, monkeypatch):
    """No honest input produces a failed property verdict (the kernel
    product law is a finite-scale theorem), so the exit-5 path is driven
    by stubbing the executor."""
    cfg = _write(tmp_path, "job.json", dict(RUN_DELTA, command="is_left_topological",
                                            sets={}))
    monkeypatch.setattr(cli_mod, "execute",
                        lambda job: ({"left_topological": False}, 1, False))
    assert main(["run", cfg]) == 5


def test_export_graph(tmp_path):
    doc = {
        "schema": "gsrec-config/1",
        "group": {"kind": "cyclic", "n": 5},
        "sets": {"A": [0, 1, 4]},
        "command": "independence_number",
    }
    code, out, _ = _invoke("export-graph", _write(tmp_path, "g.json", doc))
    assert code == 0
    assert out == "0 1\n0 4\n1 2\n2 3\n3 4\n"


def test_scan(tmp_path):
    doc = {"schema": "gsrec-config/1", "group": {"kind": "cyclic", "n": 12}}
    cfg = _write(tmp_path, "scan.json", doc)
    code, out, _ = _invoke("scan", cfg, "--alpha-bound", "3")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "scan"
    assert report["result"]["scanned"] == 64
    hits = report["result"]["hits"]
    assert {"connection": {"elements": [0, 2, 4, 6, 8, 10]}, "alpha": 2} in [
        {"connection": h["connection"], "alpha": h["alpha"]} for h in hits
    ]
    code, out, _ = _invoke("scan", cfg, "--alpha-bound", "3", "--budget", "5")
    assert json.loads(out)["result"]["scanned"] == 5


def test_suite_small_and_deterministic(tmp_path):
    code, out, err = _invoke("suite", "--max-order", "5")
    assert code == 0, err
    report = json.loads(out)
    assert report["result"]["ok"]
    assert [e["group"] for e in report["result"]["entries"]] == [
        "Z2", "Z3", "Z4", "Z5",
    ]
    code2, out2, _ = _invoke("suite", "--max-order", "5")
    assert out2 == out
    # parallel scheduler: echoed inputs differ, result payload must not
    code3, out3, _ = _invoke("suite", "--max-order", "5", "--jobs", "3")
    assert code3 == 0
    par = json.loads(out3)
    assert par["inputs"]["jobs"] == 3
    assert par["result"] == report["result"]


def test_suite_catalogue_error_isolation(tmp_path):
    catalogue = [
        {"kind": "cyclic", "n": 4},
        {"kind": "explicit", "table": [[0, 1], [1, 1]]},  # 1 has no inverse
        {"kind": "cyclic", "n": 5},
    ]
    path = _write(tmp_path, "cat.json", catalogue)
    code, out, _ = _invoke("suite", "--catalogue", path)
    assert code == 3  # first error's class
    report = json.loads(out)
    entries = report["result"]["entries"]
    assert [e["status"] for e in entries] == ["ok", "error", "ok"]
    assert entries[1]["group"] == "catalogue[1]"
    assert "no inverse" in entries[1]["error"]
    assert report["result"]["summary"]["errors"] == 1
    assert not report["result"]["ok"]


def test_suite_empty_catalogue(tmp_path):
    path = _write(tmp_path, "cat.json", {"schema": "gsrec-config/1", "groups": []})
    code, out, _ = _invoke("suite", "--catalogue", path)
    assert code == 0
    report = json.loads(out)
    assert report["result"]["entries"] == []
    assert report["result"]["ok"]


def test_suite_rejects_malformed_catalogue(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text("{broken", encoding="utf-8")
    code, _, err = _invoke("suite", "--catalogue", str(path))
    assert code == 2 and "gsrec: error:" in err
    path.write_text(json.dumps({"schema": "gsrec-config/1", "entries": []}),
                    encoding="utf-8")
    code, _, _ = _invoke("suite", "--catalogue", str(path))
    assert code == 2
