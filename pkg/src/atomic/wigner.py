"""
Wigner 6j Symbols
Racah's single-sum formula with log-factorial accumulation; arguments are
non-negative integers or half-integers.
"""
import math

import numpy as np
from scipy.special import gammaln

from src.errors import InvalidArgument


def _doubled(name: str, value: float) -> int:
    twice = 2 * float(value)
    if not np.isfinite(twice) or abs(twice - round(twice)) > 1e-9 or twice < 0:
        raise InvalidArgument(name, f"must be a non-negative integer or half-integer, got {value}")
    return int(round(twice))


def _log_factorial(n: int) -> float:
    return float(gammaln(n + 1))


def _triad(a: int, b: int, c: int) -> bool:
    """Triangle rule on doubled values, with an integer perimeter."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def _log_delta(a: int, b: int, c: int) -> float:
    return 0.5 * (
        _log_factorial((a + b - c) // 2)
        + _log_factorial((a - b + c) // 2)
        + _log_factorial((-a + b + c) // 2)
        - _log_factorial((a + b + c) // 2 + 1)
    )


def wigner6j(j1: float, j2: float, j3: float, j4: float, j5: float, j6: float) -> float:
    """{j1 j2 j3; j4 j5 j6}; zero when any triad breaks the triangle rule."""
    d = [_doubled(f"j{i + 1}", j) for i, j in enumerate((j1, j2, j3, j4, j5, j6))]
    a, b, c, e, f, g = d
    triads = ((a, b, c), (a, f, g), (e, b, g), (e, f, c))
    if not all(_triad(*t) for t in triads):
        return 0.0

    log_prefactor = sum(_log_delta(*t) for t in triads)
    lower = [sum(t) // 2 for t in triads]
    upper = [(a + b + e + f) // 2, (b + c + f + g) // 2, (c + a + g + e) // 2]

    terms = []
    for t in range(max(lower), min(upper) + 1):
        log_term = _log_factorial(t + 1)
        log_term -= sum(_log_factorial(t - x) for x in lower)
        log_term -= sum(_log_factorial(y - t) for y in upper)
        terms.append((-1) ** t * math.exp(log_term + log_prefactor))
    return math.fsum(terms)
