import json

import pytest

from gengraph.config import DEFAULT_CAPS, Caps, InputError


def test_defaults():
    assert DEFAULT_CAPS.as_dict() == {"enumeration_cap": 9, "scan_cap": 8, "lattice_cap": 10_000,
                                      "connectivity_cap": 7, "circuit_cap": 5, "threads": 1}


def test_file_then_overrides(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"scan_cap": 6, "threads": 2}))
    caps = Caps.load(path, threads=4)
    assert caps.scan_cap == 6 and caps.threads == 4 and caps.enumeration_cap == 9


def test_rejects_unknown_and_nonpositive(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"speed": "fast"}))
    with pytest.raises(InputError):
        Caps.load(path)
    with pytest.raises(InputError):
        Caps.load(threads=0)
