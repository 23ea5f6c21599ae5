"""
Run Configuration
A CLI run is one subcommand plus its physical inputs. Inputs come from an optional JSON
config file whose keys mirror the long flag names; flags given on the command line win.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from src.errors import InvalidArgument

logger = logging.getLogger("ecat.cli.run_config")

OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    data_dir: str | None = None
    output: str | None = None
    fmt: str = "csv"
    timestamp: bool = False

    def __post_init__(self):
        if self.fmt not in OUTPUT_FORMATS:
            raise InvalidArgument("format", f"must be one of {OUTPUT_FORMATS}, got {self.fmt!r}")

    def get(self, key: str, default=None):
        value = self.params.get(key)
        return default if value is None else value

    def canonical(self) -> str:
        """Config JSON recorded in output headers; the output path is not part of it."""
        return json.dumps(
            {"subcommand": self.subcommand, "params": self.params, "data_dir": self.data_dir},
            sort_keys=True, separators=(",", ":"), default=str,
        )

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()


def load_config_file(path: str | Path) -> dict:
    """
    Read a JSON run configuration.

    Raises:
        FileNotFoundError: if the file does not exist
        InvalidArgument: if it is not a JSON object
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidArgument("config", f"{path.name} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise InvalidArgument("config", f"{path.name} must hold a JSON object")
    logger.info(f"Run configuration loaded from {path}")
    return data


def merge_params(file_values: dict, flag_values: dict) -> dict:
    """File values overridden by every flag that was actually given."""
    merged = {key.replace("-", "_"): value for key, value in file_values.items()}
    merged.update({key: value for key, value in flag_values.items() if value is not None})
    return dict(sorted(merged.items()))


def parse_int_list(text) -> list[int]:
    """'20..200:20', '20..200' (step 1) or '40,60,80'; lists pass through."""
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    if isinstance(text, int):
        return [text]
    text = str(text).strip()
    try:
        if ".." in text:
            span, _, step = text.partition(":")
            start, stop = (int(v) for v in span.split(".."))
            step = int(step) if step else 1
            if step <= 0 or stop < start:
                raise ValueError("need start <= stop and a positive step")
            return list(range(start, stop + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidArgument("range", f"cannot parse {text!r}: {e}") from e


def parse_float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    if isinstance(text, (int, float)):
        return [float(text)]
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as e:
        raise InvalidArgument("list", f"cannot parse {text!r}: {e}") from e
