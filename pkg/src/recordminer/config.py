"""Runtime configuration for the command line tool.

Settings merge in three layers: built-in defaults, then an optional
``key=value`` config file (``--config`` flag or the RECORDMINER_CONFIG
environment variable), then explicit command line flags.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from .errors import UsageError
from .layout import LayoutConfig
from .records import DEFAULT_NESTED_RATIO, FieldTagSet

ENV_CONFIG = "RECORDMINER_CONFIG"

OUTPUT_FORMATS = ("json", "ndjson")


@dataclass(frozen=True)
class CliConfig:
    layout: LayoutConfig = LayoutConfig()
    field_tags: FieldTagSet = FieldTagSet()
    nested_ratio: Fraction = DEFAULT_NESTED_RATIO
    output_format: str = "json"
    fetch_timeout: float = 15.0
    user_agent: str = "recordminer/0.1"

    def __post_init__(self) -> None:
        if self.nested_ratio <= 1:
            raise ValueError("nested_ratio must exceed 1")
        if self.fetch_timeout <= 0:
            raise ValueError("fetch_timeout must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}")


def _positive_int(value: str, key: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise UsageError(f"config key {key}: expected an integer, got {value!r}") from None
    if number <= 0:
        raise UsageError(f"config key {key}: must be positive, got {number}")
    return number


def _non_negative_int(value: str, key: str) -> int:
    number = _positive_int(value, key) if value.strip() != "0" else 0
    return number


def parse_ratio(value: str) -> Fraction:
    try:
        ratio = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid nested ratio: {value!r}") from None
    if ratio <= 1:
        raise UsageError(f"nested ratio must exceed 1, got {value}")
    return ratio


def read_config_file(path: str | Path) -> dict[str, str]:
    """Raw key=value pairs; '#' starts a comment, blank lines are skipped."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        pairs[key.strip()] = value.strip()
    return pairs


def apply_config(base: CliConfig, pairs: dict[str, str]) -> CliConfig:
    layout = base.layout
    cfg = base
    for key, value in pairs.items():
        if key == "viewport_width":
            layout = replace(layout, viewport_width=_positive_int(value, key))
        elif key == "line_height":
            layout = replace(layout, line_height=_positive_int(value, key))
        elif key == "char_width":
            layout = replace(layout, char_width=_positive_int(value, key))
        elif key == "default_image_width":
            layout = replace(layout, default_image_size=(
                _positive_int(value, key), layout.default_image_size[1]))
        elif key == "default_image_height":
            layout = replace(layout, default_image_size=(
                layout.default_image_size[0], _positive_int(value, key)))
        elif key == "block_gap":
            layout = replace(layout, block_gap=_non_negative_int(value, key))
        elif key == "field_tags":
            try:
                cfg = replace(cfg, field_tags=FieldTagSet.from_csv(value))
            except ValueError as exc:
                raise UsageError(f"config key field_tags: {exc}") from None
        elif key == "nested_ratio":
            cfg = replace(cfg, nested_ratio=parse_ratio(value))
        elif key == "output_format":
            if value not in OUTPUT_FORMATS:
                raise UsageError(f"config key output_format: must be one of "
                                 f"{OUTPUT_FORMATS}, got {value!r}")
            cfg = replace(cfg, output_format=value)
        elif key == "fetch_timeout":
            try:
                timeout = float(value)
            except ValueError:
                raise UsageError(f"config key fetch_timeout: expected a number, "
                                 f"got {value!r}") from None
            if timeout <= 0:
                raise UsageError("config key fetch_timeout: must be positive")
            cfg = replace(cfg, fetch_timeout=timeout)
        elif key == "user_agent":
            cfg = replace(cfg, user_agent=value)
        else:
            raise UsageError(f"unknown config key: {key!r}")
    return replace(cfg, layout=layout)


def load_config(path: str | Path | None) -> CliConfig:
    base = CliConfig()
    if path is None:
        return base
    return apply_config(base, read_config_file(path))
