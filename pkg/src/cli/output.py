"""
Output Writers
CSV and JSON artifacts with a header block citing the run configuration and the data
files that were read.
"""
import io
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pandas as pd

from src.cli.run_config import RunConfig
from src.config import CSV_FLOAT_FORMAT, TOOL_NAME
from src.ingestion.data_loader import data_checksums

logger = logging.getLogger("ecat.cli.output")


def build_header(config: RunConfig) -> dict:
    header = {
        "tool": TOOL_NAME,
        "subcommand": config.subcommand,
        "config": json.loads(config.canonical()),
        "config_sha256": config.sha256,
        "data_sha256": data_checksums(),
    }
    if config.timestamp:
        header["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return header


def _header_lines(header: dict) -> list[str]:
    lines = [
        f"# {header['tool']} {header['subcommand']}",
        f"# config {json.dumps(header['config'], sort_keys=True, separators=(',', ':'))}",
        f"# config_sha256 {header['config_sha256']}",
    ]
    lines += [f"# data_sha256 {name} {digest}" for name, digest in header["data_sha256"].items()]
    if "generated" in header:
        lines.append(f"# generated {header['generated']}")
    return lines


def _jsonable(value):
    """numpy scalars and arrays, non-finite floats and dataclass dicts to plain JSON."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    return value


def render_csv(frame: pd.DataFrame, header: dict) -> str:
    buffer = io.StringIO()
    buffer.write("\n".join(_header_lines(header)) + "\n")
    frame.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def render_json(data, header: dict) -> str:
    if isinstance(data, pd.DataFrame):
        data = data.to_dict(orient="records")
    return json.dumps({"header": _jsonable(header), "data": _jsonable(data)}, indent=2, sort_keys=True) + "\n"


def write_output(data, config: RunConfig) -> None:
    """
    Write one artifact to config.output (stdout when unset).

    Tables honour config.fmt; dict results are always JSON.
    """
    header = build_header(config)
    if isinstance(data, pd.DataFrame) and config.fmt == "csv":
        text = render_csv(data, header)
    else:
        text = render_json(data, header)

    if config.output is None:
        sys.stdout.write(text)
        return
    path = Path(config.output)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"{config.subcommand} output written to {path}")
