"""
C6 Coefficients
van der Waals coefficients C6(n) for the dressed Rydberg level: tabulated values from
c6.dat, otherwise the n^11 scaling model anchored on the nearest tabulated entry.
"""
import numpy as np

from src.config import C6_SCALING_EXPONENT
from src.errors import InvalidArgument
from src.ingestion.data_loader import load_c6_table

_HZ_UM6_TO_SI = 2 * np.pi * 1e-36   # (C6/2pi in Hz um^6) -> rad/s m^6


def c6_coefficient(n: int, data_dir=None) -> float:
    """C6 for principal number n in rad/s * m^6."""
    if n < 1:
        raise InvalidArgument("n", f"principal quantum number must be >= 1, got {n}")
    table = load_c6_table(data_dir)
    if n in table:
        return table[n] * _HZ_UM6_TO_SI
    if not table:
        raise InvalidArgument("c6", "C6 table is empty")
    ns = np.array(sorted(table))
    if ns[0] < n < ns[-1]:
        # log-log interpolation between tabulated neighbours
        log_c6 = np.interp(np.log(n), np.log(ns), np.log([table[int(k)] for k in ns]))
        return float(np.exp(log_c6)) * _HZ_UM6_TO_SI
    anchor = int(ns[np.argmin(np.abs(ns - n))])
    return table[anchor] * (n / anchor) ** C6_SCALING_EXPONENT * _HZ_UM6_TO_SI
