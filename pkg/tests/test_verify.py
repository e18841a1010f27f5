import csv
import io
import json

import pytest

from gengraph.config import Caps, InputError
from gengraph.verify import SUITES, FactEntry, FactLedger, export_ledger, run_suite


@pytest.fixture(scope="module")
def small():
    return run_suite("small_cases")


def test_small_cases_pass(small):
    assert small.ok and small.counts()["pass"] == len(small.entries) >= 6
    ids = {e.fact_id for e in small.entries}
    assert {"small-sym4-isolated", "small-alt4-order3-degree", "small-sym3-involution-degree"} <= ids


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("everything")


@pytest.mark.parametrize("suite", ["small_cases", "probability", "decomposition_biconditional"])
def test_ledger_is_deterministic(suite):
    assert run_suite(suite).without_timings() == run_suite(suite).without_timings()


def test_caps_turn_facts_into_skips():
    ledger = run_suite("normalizer_laws", Caps(scan_cap=5))
    skipped = [e for e in ledger.entries if e.status == "skipped"]
    assert skipped and all("scan_cap=5" in e.reason for e in skipped)
    assert ledger.ok


def test_symbolic_lattices_are_skipped_for_enumeration():
    ledger = run_suite("mobius_agreement")
    assert ledger.ok
    skipped = {e.fact_id for e in ledger.entries if e.status == "skipped"}
    assert "lattice-alt_11-enumeration" in skipped
    assert any(e.fact_id == "lattice-alt_24-symbolic-parity" and e.status == "pass" for e in ledger.entries)


def test_entry_validation():
    with pytest.raises(ValueError):
        FactEntry("x", "a", "s", "fail")
    with pytest.raises(ValueError):
        FactEntry("x", "a", "s", "skipped")
    with pytest.raises(ValueError):
        FactEntry("x", "a", "s", "maybe")


def test_exports(small):
    js = json.loads(export_ledger(small, "json"))
    assert js["counts"]["fail"] == 0 and len(js["entries"]) == len(small.entries)
    assert list(js["entries"][0]) == ["fact_id", "anchor", "scope", "status", "observed", "expected",
                                      "runtime_ms", "reason"]
    rows = list(csv.DictReader(io.StringIO(export_ledger(small, "csv"))))
    assert len(rows) == len(small.entries)
    md = export_ledger(small, "markdown")
    assert md.startswith("| fact_id | anchor |")
    assert small.entries[0].anchor in md
    with pytest.raises(InputError):
        export_ledger(small, "xml")


def test_all_suites_registered():
    assert len(SUITES) == 9
