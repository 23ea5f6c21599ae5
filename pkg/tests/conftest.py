import numpy as np
import pytest

from src.config import ANCHOR_DELTA, ANCHOR_N_ATOMS, ANCHOR_OMEGA_R, DATA_DIR
from src.dressing.params import DressingParams
from src.ingestion.data_loader import reset_data_cache
from src.spinsim.states import CollectiveState


@pytest.fixture(autouse=True)
def _fresh_data_cache():
    reset_data_cache()
    yield
    reset_data_cache()


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def anchor_params() -> DressingParams:
    """Omega_r / 2pi = 15 MHz, Delta / 2pi = 270 MHz."""
    return DressingParams(omega_r=ANCHOR_OMEGA_R, delta=ANCHOR_DELTA)


@pytest.fixture
def anchor_n_atoms() -> int:
    return ANCHOR_N_ATOMS


@pytest.fixture
def random_state():
    def build(n_atoms: int, seed: int = 7) -> CollectiveState:
        rng = np.random.default_rng(seed)
        amps = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
        return CollectiveState.from_unnormalized(n_atoms, amps)

    return build
