"""
config.py - shared configuration for hk-lab
"""
import os

# ---- groebner engine budgets ----
REDUCTION_BUDGET = int(os.environ.get('HKLAB_BUDGET', 10**7))  # reduction steps per engine call
PAIR_BUDGET = int(os.environ.get('HKLAB_PAIR_BUDGET', 10**6))  # s-pairs per buchberger run

# ---- estimator defaults ----
DEFAULT_E_MAX = int(os.environ.get('HKLAB_EMAX', 3))
DEFAULT_Q_LADDER = (2, 4, 8, 16, 32, 64)

# ---- combinatorics ----
STIRLING_N_MAX = int(os.environ.get('HKLAB_STIRLING_NMAX', 64))
ENUMERATION_BUDGET = int(os.environ.get('HKLAB_ENUM_BUDGET', 5 * 10**6))  # lattice / tuple points
CONVERGENCE_THRESHOLD = 0.01

# ---- arithmetic limits ----
MAX_EXPONENT = 2**31 - 1
MAX_CHARACTERISTIC = 2**31

# ---- output ----
DECIMAL_PLACES = 12

# ---- logging ----
LOG_LEVEL = os.environ.get('HKLAB_LOG_LEVEL', 'WARNING')
LOG_FORMAT = '[%(name)s] %(message)s'

# ---- benchmarks ----
RESULTS_FILE = os.environ.get('HKLAB_RESULTS_FILE', 'hk_lab_results.json')
