"""
Memo Cache Module
Persists the w*(N) memo tables to disk so repeated cat-size scans skip the root searches.
"""
import json
import logging
from pathlib import Path

from src.config import CACHE_DIR

logger = logging.getLogger("ecat.ingestion.memo_cache")

CACHE_FILE_NAME = "w_star_memo.json"


def _cache_file(cache_dir: Path | str | None) -> Path:
    return Path(cache_dir if cache_dir is not None else CACHE_DIR) / CACHE_FILE_NAME


def memo_key(f_target: float, grid_settings: dict) -> str:
    """Stable key for one memo table: the target and the optimizer grid it was built with."""
    return json.dumps({"f_target": round(float(f_target), 12), **grid_settings}, sort_keys=True)


def save_memo_table(
    f_target: float,
    grid_settings: dict,
    table: dict[int, float],
    cache_dir: Path | str | None = None,
) -> None:
    """
    Save one w*(N) table, merged into any tables already on disk.

    Args:
        f_target: F_nl target the table was built for
        grid_settings: optimizer grid sizes (part of the key)
        table: {N: w*}
        cache_dir: Optional override of the cache directory
    """
    path = _cache_file(cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)

    data = _read(path) or {}
    data[memo_key(f_target, grid_settings)] = {str(n): float(w) for n, w in sorted(table.items())}

    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)

    logger.info(f"w* memo table ({len(table)} entries, F_nl={f_target}) saved to {path}")


def _read(path: Path) -> dict | None:
    if not path.exists():
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (json.JSONDecodeError, IOError) as e:
        logger.warning(f"Failed to load memo cache: {e}")
        return None
    if not isinstance(data, dict):
        logger.warning("Memo cache is malformed, ignoring")
        return None
    return data


def load_memo_table(
    f_target: float,
    grid_settings: dict,
    n_grid: tuple[int, ...],
    cache_dir: Path | str | None = None,
) -> dict[int, float] | None:
    """
    Load a cached w*(N) table.

    Returns:
        {N: w*} covering every N of n_grid, or None if the cache is missing, corrupt
        or incomplete
    """
    data = _read(_cache_file(cache_dir))
    if data is None:
        logger.info("No memo cache found")
        return None
    entry = data.get(memo_key(f_target, grid_settings))
    if not isinstance(entry, dict):
        return None
    try:
        table = {int(n): float(w) for n, w in entry.items()}
    except (TypeError, ValueError) as e:
        logger.warning(f"Memo cache entry is corrupt, ignoring: {e}")
        return None

    # Validate coverage
    if any(n not in table for n in n_grid):
        logger.warning("Memo cache is incomplete, ignoring")
        return None

    logger.info(f"w* memo table (F_nl={f_target}) loaded from cache")
    return table


def clear_memo_cache(cache_dir: Path | str | None = None) -> None:
    """Delete the cache file."""
    path = _cache_file(cache_dir)
    if path.exists():
        path.unlink()
        logger.info("Memo cache cleared")
