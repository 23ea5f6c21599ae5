"""Evaluation module - Realization-anchor report."""
from src.evaluation.realization import realization_report

__all__ = ["realization_report"]
