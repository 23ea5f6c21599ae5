"""
Data Loader
Reads the plain-text data tables (quantum defects, C6 coefficients, measured constants)
and records a checksum of every file read so outputs can cite their inputs.
"""
import hashlib
import logging
import threading
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from src.config import C6_FILE, CONSTANTS_OVERRIDES_FILE, DATA_DIR, QUANTUM_DEFECTS_FILE
from src.errors import InvalidArgument

logger = logging.getLogger("ecat.ingestion.data_loader")

_lock = threading.Lock()
_checksums: dict[str, str] = {}
_tables: dict[tuple[str, str], object] = {}


@dataclass(frozen=True)
class DefectSeries:
    """Rydberg-Ritz coefficients of one series."""
    series: str
    l: int
    s_total: int
    l_total: int
    j_total: int
    delta0: float
    delta2: float
    delta4: float
    n_min: int

    def defect(self, n: int) -> float:
        reduced = n - self.delta0
        return self.delta0 + self.delta2 / reduced ** 2 + self.delta4 / reduced ** 4


def resolve_data_dir(data_dir: Path | str | None = None) -> Path:
    return Path(data_dir) if data_dir is not None else DATA_DIR


def file_checksum(path: Path) -> str:
    """SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _read_table(path: Path, names: list[str]) -> pd.DataFrame:
    if not path.exists():
        raise FileNotFoundError(f"Data file not found at {path}")
    frame = pd.read_csv(path, sep=r"\s+", comment="#", header=None, names=names)
    with _lock:
        _checksums[path.name] = file_checksum(path)
    logger.debug(f"Loaded {len(frame)} rows from {path}")
    return frame


def _cached(kind: str, path: Path, build):
    key = (kind, str(path.resolve()))
    with _lock:
        if key in _tables:
            return _tables[key]
    value = build(path)
    with _lock:
        _tables[key] = value
    return value


def load_quantum_defects(data_dir: Path | str | None = None) -> dict[str, DefectSeries]:
    """
    Load quantum_defects.dat.

    Returns:
        Dict of {series label: DefectSeries}
    """
    def build(path: Path) -> dict[str, DefectSeries]:
        frame = _read_table(
            path, ["series", "l", "S", "L", "J", "delta0", "delta2", "delta4", "n_min"]
        )
        table = {}
        for row in frame.itertuples(index=False):
            table[str(row.series)] = DefectSeries(
                series=str(row.series),
                l=int(row.l),
                s_total=int(row.S),
                l_total=int(row.L),
                j_total=int(row.J),
                delta0=float(row.delta0),
                delta2=float(row.delta2),
                delta4=float(row.delta4),
                n_min=int(row.n_min),
            )
        if not table:
            raise InvalidArgument("quantum_defects", f"no series found in {path}")
        return table

    return _cached("defects", resolve_data_dir(data_dir) / QUANTUM_DEFECTS_FILE, build)


def load_c6_table(data_dir: Path | str | None = None) -> dict[int, float]:
    """Load c6.dat as {n: C6/2pi in Hz um^6}."""
    def build(path: Path) -> dict[int, float]:
        frame = _read_table(path, ["n", "c6_over_2pi_hz_um6"])
        return {int(r.n): float(r.c6_over_2pi_hz_um6) for r in frame.itertuples(index=False)}

    return _cached("c6", resolve_data_dir(data_dir) / C6_FILE, build)


def load_constants_overrides(data_dir: Path | str | None = None) -> dict[str, float]:
    """Load constants_overrides.dat as {key: value}."""
    def build(path: Path) -> dict[str, float]:
        frame = _read_table(path, ["key", "value"])
        return {str(r.key): float(r.value) for r in frame.itertuples(index=False)}

    return _cached("overrides", resolve_data_dir(data_dir) / CONSTANTS_OVERRIDES_FILE, build)


def data_checksums() -> dict[str, str]:
    """Checksums of every data file read so far in this process, by file name."""
    with _lock:
        return dict(sorted(_checksums.items()))


def reset_data_cache() -> None:
    """Forget loaded tables and checksums (used between CLI runs and in tests)."""
    with _lock:
        _tables.clear()
        _checksums.clear()
