"""
ECAT Configuration Module
Centralizes all configuration: data paths, physical anchors, optimizer grids, and constants.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

import numpy as np

# Load environment variables
load_dotenv()

# ─── Paths ───────────────────────────────────────────────────────────────────
BASE_DIR = Path(__file__).parent.parent
DATA_DIR = Path(os.getenv("ECAT_DATA_DIR", str(BASE_DIR / "data")))
CACHE_DIR = Path(os.getenv("ECAT_CACHE_DIR", str(BASE_DIR / "cache")))

QUANTUM_DEFECTS_FILE = "quantum_defects.dat"
C6_FILE = "c6.dat"
CONSTANTS_OVERRIDES_FILE = "constants_overrides.dat"

# ─── Logging ─────────────────────────────────────────────────────────────────
LOG_LEVEL = os.getenv("ECAT_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"

# ─── Collective spin ─────────────────────────────────────────────────────────
MAX_ATOMS = 5000              # symmetric sector only

# ─── Dressing ────────────────────────────────────────────────────────────────
WEAK_DRESSING_LIMIT = 0.3     # sqrt(N) * w
RAMP_MIN_POINTS = 1000
RAMP_RK4_STEPS_PER_PERIOD = 40  # RK4 steps per 2*pi/E_plus

# Realization anchor (Sr, 5s80s 3S1)
ANCHOR_OMEGA_R = 2 * np.pi * 15e6       # rad/s
ANCHOR_DELTA = 2 * np.pi * 270e6        # rad/s
ANCHOR_N_ATOMS = 165
ANCHOR_PRINCIPAL_N = 80
ANCHOR_RAMP_DURATION = 18e-9            # s
ANCHOR_RATIO_RAMP = "linear"            # shape quoted for the adiabaticity ratio
ANCHOR_RETURN_RAMP = "cosine"           # shape used for the on/hold/off ground return
ANCHOR_TAU_C = 1.4e-3                   # s, quoted cat creation time
ANCHOR_TIMING_PRECISION = 7.5e-9        # s
DETUNING_RANGE = (2 * np.pi * 4e6, 2 * np.pi * 340e6)  # rad/s, operating window

# C6(n) default model, calibrated so that R_b = 3.6 um at n = 80 for ANCHOR_DELTA
BLOCKADE_ANCHOR_RADIUS = 3.6e-6         # m
C6_SCALING_EXPONENT = 11

# ─── Kerr evolution / nonlinearity fidelity ──────────────────────────────────
FNL_THETA_POINTS = 16
FNL_PHI_POINTS = 16
FNL_ALPHA_POINTS = 16         # only used by the exhaustive cross-check scan
FNL_TAU_POINTS = 21
FNL_TAU_WINDOW = 0.10         # +/- fraction around the curvature-matched time
FNL_SIMPLEX_XATOL = 1e-7
FNL_SIMPLEX_FATOL = 1e-10
FNL_SIMPLEX_MAXITER = 2000
W_BISECTION_TOL = 1e-3        # on |f_nl - target|
W_BISECTION_MAXITER = 60
W_UPPER_BRACKET = 0.49
DEFAULT_PHASE_ERROR_FACTOR = 5  # delta_phi = 1 / (5 sqrt(N))

# w*(N) memo table used inside the cat-size optimizer
W_MEMO_N_GRID = (2, 4, 6, 8, 10, 14, 20, 28, 40, 56, 80, 112, 160, 224, 320, 448, 640, 1000)

# ─── Inhomogeneity ───────────────────────────────────────────────────────────
LATTICE_SPACING = 200e-9      # m
EXACT_ORACLE_MAX_ATOMS = 20
EXACT_ORACLE_CHUNK = 1 << 14  # bitstrings per chunk
PERTURBATIVE_WARN_PHASE = 0.3  # max|eps| * tau_c

# ─── Atomic structure ────────────────────────────────────────────────────────
NUMEROV_STEP = 0.005          # step in x = ln(r) for the log grid
NUMEROV_INNER_CUTOFF_FACTOR = 0.5  # fraction of the inner classical turning point
NUMEROV_OUTER_FACTOR = 2.0    # r_max = OUTER_FACTOR * n*(n* + 15)
CHANNEL_N_ABOVE = 20          # include n' up to n + 20

# ─── Decoherence ─────────────────────────────────────────────────────────────
# Rydberg decay branching from 5sns 3S1 (fractions of the total depopulation)
TRAPPED_3P2_FRACTION = 0.55
TO_3P1_FRACTION = 0.35
TO_3P0_FRACTION = 0.10
P0_LOSS_SHARE = 0.5           # half of the 3P0 share ends up lost, half returns to |e>

LOSS_FRACTION = TRAPPED_3P2_FRACTION + P0_LOSS_SHARE * TO_3P0_FRACTION      # 0.60
DEEXCITATION_FRACTION = TO_3P1_FRACTION                                     # 0.35
DEPHASING_FRACTION = (1 - P0_LOSS_SHARE) * TO_3P0_FRACTION                  # 0.05

SINGLE_EVENT_WARN = 0.5       # lambda_l + lambda_de
FDE_QUADRATURE_POINTS = 257   # Simpson nodes over t_de in [0, tau_c]
COLLECTIVE_SURVIVAL_THRESHOLD = 0.82

# ─── Cat-size optimizer ──────────────────────────────────────────────────────
DEFAULT_F_IH_TARGET = 0.99
DEFAULT_F_DC_TARGET = 0.8
S_CHARACTER = 0.9
NEIGHBOUR_COUPLING_RATIO = 5.0  # dressing Rabi frequency of the neighbour relative to the target
N_CEILING = 1000
MAX_FIXED_POINT_ITER = 100

# ─── Metrology ───────────────────────────────────────────────────────────────
DELTA_E_EV = 1.8              # per-atom clock splitting
TRAP_LOSS_RATE = 10e-3        # 1/s
LASER_LINEWIDTH = 2 * np.pi * 10e-3  # rad/s, correlated
VISIBILITY_THRESHOLD = np.exp(-1.0)
WAITING_TIME_GRID = (1e-6, 1e6, 241)  # log grid bounds (s) and points
# BBR-shift noise dphi/dt = coeff * T^3 * dT, calibrated to 1 mHz at 95 K with dT = 1 K
BBR_NOISE_CAL_LINEWIDTH = 2 * np.pi * 1e-3   # rad/s
BBR_NOISE_CAL_TEMPERATURE = 95.0             # K
BBR_NOISE_CAL_DELTA_T = 1.0                  # K
BBR_SHIFT_NOISE_COEFF = BBR_NOISE_CAL_LINEWIDTH / (BBR_NOISE_CAL_TEMPERATURE ** 3 * BBR_NOISE_CAL_DELTA_T)  # rad/s per K^4

# Motion in the lattice
ROTATION_RABI = 2 * np.pi * 1e3
LAMB_DICKE = 0.1
TRAP_FREQUENCY = 2 * np.pi * 400e3
LAMB_DICKE_LIMIT = 0.3

# ─── CLI output ──────────────────────────────────────────────────────────────
TOOL_NAME = "ecat"
CSV_FLOAT_FORMAT = "%.8e"     # 9 significant digits
