"""
Collective Spin States
Symmetric Dicke-basis states of N two-level atoms: coherent spin states, rotations,
ideal cat states and overlaps.

Basis index k = N_e runs over 0..N (number of atoms in |e>). Single-atom operators are the
factor-1/2 Pauli operators, S_z = N_e - N/2, and rotations are exp(-i a S_axis).
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln, xlogy

from src.config import MAX_ATOMS
from src.errors import InvalidArgument

_RENORMALIZE_TOLERANCE = 1e-9


def _check_atoms(n_atoms: int) -> int:
    if isinstance(n_atoms, bool) or int(n_atoms) != n_atoms:
        raise InvalidArgument("n_atoms", f"must be an integer, got {n_atoms!r}")
    n_atoms = int(n_atoms)
    if n_atoms < 1:
        raise InvalidArgument("n_atoms", f"must be >= 1, got {n_atoms}")
    if n_atoms > MAX_ATOMS:
        raise InvalidArgument("n_atoms", f"must be <= {MAX_ATOMS}, got {n_atoms}")
    return n_atoms


def _check_angle(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InvalidArgument(name, f"must be finite, got {value}")
    return value


@dataclass(frozen=True)
class CSSParams:
    """Bloch-sphere direction of a coherent spin state."""
    theta: float            # polar angle, 0 = all atoms in |g>
    phi: float              # azimuth

    def __post_init__(self):
        theta = _check_angle("theta", self.theta)
        phi = _check_angle("phi", self.phi)
        if theta < 0 or theta > np.pi:
            raise InvalidArgument("theta", f"must lie in [0, pi], got {theta}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", float(np.mod(phi, 2 * np.pi)))

    @property
    def eta(self) -> complex:
        """Stereographic parameter tan(theta/2) e^{-i phi}."""
        return complex(np.tan(self.theta / 2) * np.exp(-1j * self.phi))

    @classmethod
    def from_eta(cls, eta: complex) -> "CSSParams":
        return cls(theta=2 * np.arctan(abs(eta)), phi=float(-np.angle(eta)))

    def antipode(self) -> "CSSParams":
        return CSSParams(theta=np.pi - self.theta, phi=self.phi + np.pi)


@dataclass(frozen=True)
class IdealCatParams:
    """Two antipodal coherent states with relative phase alpha."""
    theta: float
    phi: float
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", _check_angle("theta", self.theta))
        object.__setattr__(self, "phi", float(np.mod(_check_angle("phi", self.phi), 2 * np.pi)))
        object.__setattr__(self, "alpha", float(np.mod(_check_angle("alpha", self.alpha), 2 * np.pi)))

    def to_dict(self) -> dict:
        return {"theta": self.theta, "phi": self.phi, "alpha": self.alpha}


@dataclass(frozen=True)
class CollectiveState:
    """Normalized amplitude vector over the Dicke states |N; N_e>, N_e = 0..N."""
    n_atoms: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        n_atoms = _check_atoms(self.n_atoms)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != n_atoms + 1:
            raise InvalidArgument(
                "amplitudes", f"expected {n_atoms + 1} entries for N={n_atoms}, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidArgument("amplitudes", "contain non-finite values")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > _RENORMALIZE_TOLERANCE:
            raise InvalidArgument("amplitudes", f"state is not normalized (norm^2 = {norm:.3e})")
        amps = amps / np.sqrt(norm)
        amps.setflags(write=False)
        object.__setattr__(self, "n_atoms", n_atoms)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_unnormalized(cls, n_atoms: int, amplitudes) -> "CollectiveState":
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.sqrt(np.vdot(amps, amps).real)
        if norm == 0 or not np.isfinite(norm):
            raise InvalidArgument("amplitudes", "cannot normalize a zero or non-finite vector")
        return cls(n_atoms, amps / norm)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.populations)))

    def to_dict(self) -> dict:
        """Convert to a JSON-serializable dict of (re, im) pairs."""
        return {
            "n_atoms": self.n_atoms,
            "amplitudes": [[float(c.real), float(c.imag)] for c in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CollectiveState":
        try:
            pairs = np.asarray(data["amplitudes"], dtype=float)
            n_atoms = data["n_atoms"]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidArgument("state", f"malformed state record: {e}") from e
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise InvalidArgument("amplitudes", "expected a list of [re, im] pairs")
        return cls(n_atoms, pairs[:, 0] + 1j * pairs[:, 1])


def log_binomial(n_atoms: int) -> np.ndarray:
    """ln C(N, k) for k = 0..N."""
    k = np.arange(n_atoms + 1)
    return gammaln(n_atoms + 1) - gammaln(k + 1) - gammaln(n_atoms - k + 1)


def css_amplitudes(n_atoms: int, theta: float, phi: float) -> np.ndarray:
    """
    Dicke amplitudes of |theta, phi>.

    Uses (1+|eta|^2)^{-N/2} |eta|^k = cos(theta/2)^{N-k} sin(theta/2)^k, accumulated in
    log space and exponentiated after subtracting the maximum.
    """
    k = np.arange(n_atoms + 1)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    with np.errstate(divide="ignore"):
        log_mag = 0.5 * log_binomial(n_atoms) + xlogy(n_atoms - k, abs(c)) + xlogy(k, abs(s))
    log_mag = log_mag - np.max(log_mag)
    mags = np.exp(log_mag)
    mags /= np.sqrt(np.sum(mags ** 2))
    return mags * np.exp(-1j * k * phi)


def css_state(n_atoms: int, params: CSSParams) -> CollectiveState:
    """Coherent spin state |theta, phi> in the Dicke basis."""
    n_atoms = _check_atoms(n_atoms)
    return CollectiveState(n_atoms, css_amplitudes(n_atoms, params.theta, params.phi))


def pole_state(n_atoms: int, excited: bool = False) -> CollectiveState:
    """All atoms in |g> (or all in |e> when excited)."""
    n_atoms = _check_atoms(n_atoms)
    amps = np.zeros(n_atoms + 1, dtype=complex)
    amps[-1 if excited else 0] = 1.0
    return CollectiveState(n_atoms, amps)


def sx_offdiagonal(n_atoms: int) -> np.ndarray:
    """<N_e+1| S_x |N_e> = sqrt((N_e+1)(N-N_e)) / 2."""
    k = np.arange(n_atoms)
    return 0.5 * np.sqrt((k + 1.0) * (n_atoms - k))


@lru_cache(maxsize=64)
def _sx_eigensystem(n_atoms: int) -> tuple[np.ndarray, np.ndarray]:
    evals, evecs = eigh_tridiagonal(np.zeros(n_atoms + 1), sx_offdiagonal(n_atoms))
    evals.setflags(write=False)
    evecs.setflags(write=False)
    return evals, evecs


def _apply_x_rotation(n_atoms: int, amps: np.ndarray, angle: float) -> np.ndarray:
    evals, evecs = _sx_eigensystem(n_atoms)
    return evecs @ (np.exp(-1j * angle * evals) * (evecs.T @ amps))


def rotate_x(state: CollectiveState, angle: float) -> CollectiveState:
    """Apply exp(-i angle S_x)."""
    angle = _check_angle("angle", angle)
    return CollectiveState(state.n_atoms, _apply_x_rotation(state.n_atoms, state.amplitudes, angle))


def rotate_y(state: CollectiveState, angle: float) -> CollectiveState:
    """Apply exp(-i angle S_y), using S_y = e^{-i pi/2 S_z} S_x e^{i pi/2 S_z}."""
    angle = _check_angle("angle", angle)
    k = np.arange(state.n_atoms + 1)
    frame = np.exp(-0.5j * np.pi * k)
    rotated = _apply_x_rotation(state.n_atoms, np.conj(frame) * state.amplitudes, angle)
    return CollectiveState(state.n_atoms, frame * rotated)


def rotate_z(state: CollectiveState, angle: float) -> CollectiveState:
    """Apply exp(-i angle S_z) up to a global phase: c_k -> e^{-i angle k} c_k."""
    angle = _check_angle("angle", angle)
    k = np.arange(state.n_atoms + 1)
    return CollectiveState(state.n_atoms, np.exp(-1j * angle * k) * state.amplitudes)


def ideal_cat(n_atoms: int, params: IdealCatParams) -> CollectiveState:
    """(|theta, phi> + e^{i alpha} |pi - theta, phi + pi>), normalized including the CSS overlap."""
    n_atoms = _check_atoms(n_atoms)
    first = css_amplitudes(n_atoms, params.theta, params.phi)
    second = css_amplitudes(n_atoms, np.pi - params.theta, params.phi + np.pi)
    return CollectiveState.from_unnormalized(n_atoms, first + np.exp(1j * params.alpha) * second)


def overlap(a: CollectiveState, b: CollectiveState) -> complex:
    """<a|b>."""
    if a.n_atoms != b.n_atoms:
        raise InvalidArgument("n_atoms", f"mismatched atom numbers {a.n_atoms} and {b.n_atoms}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: CollectiveState, b: CollectiveState) -> float:
    """|<a|b>|^2, clipped to [0, 1]."""
    return float(np.clip(abs(overlap(a, b)) ** 2, 0.0, 1.0))


def energy_cat(state: CollectiveState) -> CollectiveState:
    """
    Second pi/2 pulse: undoes the preparation pulse, so a cat along the +-y axis
    (eta = -i and +i) is mapped onto the poles |g>^N and |e>^N.
    """
    return rotate_x(state, -np.pi / 2)


def ghz_weight(state: CollectiveState) -> float:
    """Total population on N_e = 0 and N_e = N."""
    pops = state.populations
    return float(pops[0] + pops[-1])
