"""Size caps shared by every module, plus the error types tied to them."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path


class InputError(ValueError):
    """Caller supplied an invalid element, group or option."""


class MembershipError(InputError):
    """An element does not lie in the ambient group (e.g. odd element of Alt_n)."""


class ResourceError(RuntimeError):
    """A requested computation exceeds a configured cap."""

    def __init__(self, cap: str, limit: int, value: int, hint: str = ""):
        self.cap, self.limit, self.value = cap, limit, value
        msg = f"{cap}={limit} exceeded (got {value})"
        super().__init__(msg + (f"; {hint}" if hint else ""))


@dataclass(frozen=True)
class Caps:
    enumeration_cap: int = 9      # max n for element enumeration / class degrees
    scan_cap: int = 8             # max n for normalizer scans
    lattice_cap: int = 10_000     # max |G| for overgroup lattices
    connectivity_cap: int = 7     # max n for BFS connectivity
    circuit_cap: int = 5          # max n for Euler circuits
    threads: int = 1

    @classmethod
    def load(cls, path: str | os.PathLike | None = None, **overrides) -> "Caps":
        """Defaults, then a JSON config file, then explicit keyword overrides."""
        caps = cls()
        if path is not None:
            data = json.loads(Path(path).read_text())
            unknown = set(data) - {f.name for f in fields(cls)}
            if unknown:
                raise InputError(f"unknown config keys: {sorted(unknown)}")
            caps = replace(caps, **data)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        caps = replace(caps, **overrides)
        for f in fields(caps):
            if getattr(caps, f.name) < 1:
                raise InputError(f"{f.name} must be positive")
        return caps

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_CAPS = Caps()
