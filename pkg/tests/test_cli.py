import json
from pathlib import Path

import pytest

from gengraph.cli import (
    EXIT_CAP,
    EXIT_INPUT,
    EXIT_MEMBERSHIP,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    compute,
    main,
)
from gengraph.cache import ResultCache, request_key

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("group, n", [("sym", 3), ("alt", 4), ("sym", 4)])
def test_degrees_json_matches_golden(capsys, group, n):
    code, out, _ = run(capsys, "degrees", "--group", group, "--n", str(n), "--format", "json")
    assert code == EXIT_OK
    golden = json.loads((GOLDEN / f"degrees_{group}{n}.json").read_text())
    assert json.loads(out) == golden


def test_golden_schema_fields():
    for path in GOLDEN.glob("degrees_*.json"):
        d = json.loads(path.read_text())
        assert set(d) == {"group", "family", "n", "order", "edge_count", "rows"}
        for row in d["rows"]:
            assert set(row) == {"class", "representative", "shape", "class_size", "degree",
                                "parity", "predicted_parity", "source"}


def test_degrees_csv_sym7(capsys):
    code, out, _ = run(capsys, "degrees", "--group", "sym", "--n", "7", "--format", "csv")
    assert code == EXIT_OK
    assert "7,720,2499,odd,odd,classification" in out.splitlines()


def test_euler_certificate(capsys, tmp_path):
    cert = tmp_path / "out.json"
    code, out, _ = run(capsys, "euler", "--group", "alt", "--n", "5", "--certificate", str(cert))
    assert code == EXIT_OK and "Eulerian" in out
    walk = json.loads(cert.read_text())
    assert len(walk) == 1141 and walk[0] == walk[-1]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "12", "--group", "alt")
    assert code == EXIT_OK
    assert "12 = 3^2 + 3^1, shape {9, 3}" in out.splitlines()


def test_single_element_commands(capsys):
    code, out, _ = run(capsys, "degree", "--group", "alt", "--n", "4", "--element", "(1 2 3)", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["degree"] == 9
    code, out, _ = run(capsys, "mobius", "--group", "alt", "--n", "7", "--element", "(1 2 3 4 5 6 7)",
                       "--format", "json")
    assert json.loads(out)["degree_via_mobius"] == 2205
    code, out, _ = run(capsys, "normalizer", "--group", "sym", "--n", "7", "--element", "(1 2 3 4 5 6 7)",
                       "--format", "json")
    assert json.loads(out)["normalizer_order"] == 42
    code, out, _ = run(capsys, "prob", "--group", "sym", "--n", "7", "--format", "json")
    assert json.loads(out)["probability"] == "720/5039"
    code, out, _ = run(capsys, "lattice", "--group", "alt", "--n", "7", "--element", "(1 2 3 4 5 6 7)",
                       "--format", "dot")
    assert code == EXIT_OK and out.startswith("graph lattice")
    code, out, _ = run(capsys, "lattice", "--symbolic", "Alt_11")
    assert code == EXIT_OK and "symbolic" in out and "(odd)" in out


@pytest.mark.parametrize("argv, code", [
    (["degree", "--group", "alt", "--n", "5", "--element", "(1 2 3"], EXIT_PARSE),
    (["degree", "--group", "alt", "--n", "5", "--element", "(1 2)"], EXIT_MEMBERSHIP),
    (["degrees", "--group", "sym", "--n", "10"], EXIT_CAP),
    (["prob", "--group", "sym", "--n", "5"], EXIT_INPUT),
    (["degrees", "--group", "foo", "--n", "5"], EXIT_USAGE),
    (["lattice", "--symbolic", "Alt_99"], EXIT_INPUT),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    if code != EXIT_USAGE:
        assert err.startswith("error:")


def test_help_documents_exit_codes(capsys):
    assert main(["--help"]) == EXIT_OK
    out = capsys.readouterr().out
    for code in range(8):
        assert f"  {code}  " in out


def test_cache_lifecycle(capsys, tmp_path):
    d = str(tmp_path / "c")
    code, out, _ = run(capsys, "cache", "stats", "--cache-dir", d)
    assert json.loads(out)["entries"] == 0
    _, first, _ = run(capsys, "degrees", "--group", "sym", "--n", "5", "--cache-dir", d)
    _, second, _ = run(capsys, "degrees", "--group", "sym", "--n", "5", "--cache-dir", d)
    _, fresh, _ = run(capsys, "degrees", "--group", "sym", "--n", "5", "--cache-dir", d, "--no-cache")
    assert first == second == fresh
    assert json.loads(run(capsys, "cache", "stats", "--cache-dir", d)[1])["entries"] == 1
    code, out, _ = run(capsys, "cache", "audit", "--cache-dir", d)
    assert code == EXIT_OK and json.loads(out) == {"audited": 1, "mismatches": []}
    run(capsys, "cache", "clear", "--cache-dir", d)
    assert json.loads(run(capsys, "cache", "stats", "--cache-dir", d)[1])["entries"] == 0


def test_cache_audit_detects_tampering(tmp_path):
    cache = ResultCache(tmp_path)
    req = {"op": "decompose", "format": "text", "group": "sym", "n": 8}
    cache.put(req, "tampered\n")
    (res,) = cache.audit(compute)
    assert not res["match"]


def test_cache_key_depends_on_version():
    req = {"op": "prob", "group": "sym", "n": 7, "format": "json"}
    assert request_key(req, "1") != request_key(req, "2")


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GENGRAPH_CACHE_DIR", str(tmp_path / "env"))
    run(capsys, "prob", "--group", "alt", "--n", "7")
    assert len(list((tmp_path / "env").glob("*.json"))) == 1


def test_threads_flag_gives_identical_output(capsys):
    outs = [run(capsys, "degrees", "--group", "alt", "--n", "6", "--format", "json", "--threads", str(k),
                "--no-cache")[1] for k in (1, 2, 3)]
    assert outs[0] == outs[1] == outs[2]


def test_verify_subcommand(capsys, tmp_path):
    out_file = tmp_path / "ledger.md"
    code, out, _ = run(capsys, "verify", "--suite", "small_cases", "--output", str(out_file))
    assert code == EXIT_OK and "fail=0" in out
    assert out_file.read_text().startswith("| fact_id")


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "caps.json"
    cfg.write_text(json.dumps({"enumeration_cap": 4}))
    code, _, err = run(capsys, "degrees", "--group", "sym", "--n", "5", "--config", str(cfg))
    assert code == EXIT_CAP and "enumeration_cap=4" in err
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "degrees", "--group", "sym", "--n", "5", "--config", str(cfg))[0] == EXIT_INPUT
