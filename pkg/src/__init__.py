"""ECAT - Energy cat states by Rydberg dressing: simulation library and batch CLI."""
