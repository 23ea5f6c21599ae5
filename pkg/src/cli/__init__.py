"""CLI module - Run configuration, subcommand dispatch and CSV/JSON artifact writers."""
from src.cli.main import main, run
from src.cli.run_config import RunConfig

__all__ = ["RunConfig", "main", "run"]
