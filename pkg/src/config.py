"""
Scan Configuration

ScanConfig is validated by pydantic. Values come from (lowest to highest
priority) field defaults, environment variables loaded through
python-dotenv, a key=value config file, and CLI flags.
"""

import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from src.errors import ConfigError
from src.tools.torus import CheckerboardTorus

WORKERS_ENV = "DIRECTIONAL_WORKERS"
WMAX_ENV = "DIRECTIONAL_WMAX"

_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}

# config-file key -> ScanConfig field
FILE_KEYS = {
    "min_len": "min_len",
    "max_len": "max_len",
    "lx": "lx",
    "ly": "ly",
    "layout": "layout_rule",
    "wmax": "w_max",
    "no_backtrack": "no_backtrack",
    "distinct_offsets": "distinct_offsets",
    "fix_first_n": "fix_first_n",
    "include_cyclic": "include_cyclic",
    "strict_wrap": "strict_wrap",
    "workers": "workers",
}
BOOL_FIELDS = {"no_backtrack", "distinct_offsets", "fix_first_n", "include_cyclic", "strict_wrap"}
INT_FIELDS = {"min_len", "max_len", "lx", "ly", "w_max", "workers"}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"{name} must be non-negative, got {value}")
    return value


def default_workers() -> int:
    load_dotenv()
    return max(1, _env_int(WORKERS_ENV, 1))


def default_w_max() -> int:
    load_dotenv()
    return _env_int(WMAX_ENV, 4)


class ScanConfig(BaseModel):
    """
    Parameters of a word scan.

    Attributes:
        min_len, max_len: word length range (inclusive)
        lx, ly: torus size
        layout_rule: "row-alt" or "coset" (every canonical coset-constant layout)
        w_max: distance screen cutoff
        no_backtrack: drop words with a letter followed by its inverse
        distinct_offsets: require |P(W)| = w with no mod-2 cancellation
        fix_first_n: only words starting with N
        include_cyclic: quotient closed routes by cyclic shifts as well
        strict_wrap: reject instances whose offsets collide on the torus
        workers: evaluation parallelism
    """

    model_config = ConfigDict(frozen=True)

    min_len: int = 4
    max_len: int = 8
    lx: int = 16
    ly: int = 8
    layout_rule: Literal["row-alt", "coset"] = "row-alt"
    w_max: int = 4
    no_backtrack: bool = True
    distinct_offsets: bool = False
    fix_first_n: bool = True
    include_cyclic: bool = True
    strict_wrap: bool = False
    workers: int = 1

    @field_validator("min_len")
    @classmethod
    def _min_len_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("min_len must be at least 1")
        return v

    @field_validator("lx", "ly")
    @classmethod
    def _even_side(cls, v: int) -> int:
        if v < 2 or v % 2:
            raise ValueError("torus sides must be even and at least 2")
        return v

    @field_validator("w_max")
    @classmethod
    def _w_max_non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("w_max must be non-negative")
        return v

    @field_validator("workers")
    @classmethod
    def _workers_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @model_validator(mode="after")
    def _length_range(self) -> "ScanConfig":
        # max_len = min_len - 1 is the empty range
        if self.max_len < self.min_len - 1:
            raise ValueError("max_len must be at least min_len - 1")
        return self

    @property
    def torus(self) -> CheckerboardTorus:
        return CheckerboardTorus(self.lx, self.ly)

    @property
    def lengths(self) -> range:
        return range(self.min_len, self.max_len + 1)


def _parse_value(field: str, raw: str, line: int) -> Any:
    if field in BOOL_FIELDS:
        lowered = raw.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ConfigError(f"expected a boolean for {field}, got {raw!r}", line)
    if field in INT_FIELDS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"expected an integer for {field}, got {raw!r}", line) from None
    return raw


def parse_config_text(text: str) -> Dict[str, Any]:
    """key=value lines to ScanConfig field values, with 1-based line numbers in errors."""
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw_line.strip()!r}", number)
        key, raw = (part.strip() for part in line.split("=", 1))
        field = FILE_KEYS.get(key.lower())
        if field is None:
            raise ConfigError(f"unknown key {key!r}", number)
        if field in values:
            raise ConfigError(f"duplicate key {key!r} (first set on line {lines[field]})", number)
        values[field] = _parse_value(field, raw, number)
        lines[field] = number
    values["__lines__"] = lines
    return values


def build_scan_config(
    config_path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None
) -> ScanConfig:
    """Merge env defaults, an optional config file and CLI overrides into a validated ScanConfig."""
    values: Dict[str, Any] = {"workers": default_workers(), "w_max": default_w_max()}
    lines: Dict[str, int] = {}
    if config_path is not None:
        try:
            text = Path(config_path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {config_path}: {e}") from None
        parsed = parse_config_text(text)
        lines = parsed.pop("__lines__")
        values.update(parsed)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
            lines.pop(key, None)
    try:
        return ScanConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        location = first["loc"][0] if first["loc"] else None
        raise ConfigError(first["msg"], lines.get(location)) from None
