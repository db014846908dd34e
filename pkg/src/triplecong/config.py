"""Settings resolution: command-line flag > TCL_* environment variable > tcl.toml > default."""
from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .tensorrep import DEFAULT_DIM_BUDGET
from .theoremcheck import DEFAULT_TUPLE_BUDGET

ENV_PREFIX = "TCL_"
DEFAULT_CONFIG_FILE = "tcl.toml"

DEFAULTS: dict[str, Any] = {
    "format": "text",
    "history": "runs.jsonl",
    "jobs": 1,
    "p_max": 23,
    "max_cd": 12,
    "tuple_budget": DEFAULT_TUPLE_BUDGET,
    "dim_budget": DEFAULT_DIM_BUDGET,
}

_CASTS: dict[str, Callable[[str], Any]] = {
    "format": str,
    "history": str,
    "jobs": int,
    "p_max": int,
    "max_cd": int,
    "tuple_budget": int,
    "dim_budget": int,
}


def load_file(path: Optional[str]) -> dict[str, Any]:
    """Read a flat TOML table.  A missing default file is not an error."""
    if path is None:
        candidate = Path(DEFAULT_CONFIG_FILE)
        if not candidate.is_file():
            return {}
    else:
        candidate = Path(path)
    with candidate.open("rb") as fh:
        data = tomllib.load(fh)
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ValueError(f"unknown config keys in {candidate}: {sorted(unknown)}")
    return data


class Settings:
    def __init__(
        self,
        flags: Mapping[str, Any],
        env: Optional[Mapping[str, str]] = None,
        file_values: Optional[Mapping[str, Any]] = None,
    ) -> None:
        self._flags = flags
        self._env = os.environ if env is None else env
        self._file = file_values or {}

    def get(self, key: str) -> Any:
        flag = self._flags.get(key)
        if flag is not None:
            return flag
        raw = self._env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            try:
                return _CASTS[key](raw)
            except ValueError as exc:
                raise ValueError(f"bad {ENV_PREFIX}{key.upper()}={raw!r}") from exc
        if key in self._file:
            return _CASTS[key](self._file[key])
        return DEFAULTS[key]
