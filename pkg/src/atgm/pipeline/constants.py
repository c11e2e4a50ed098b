"""
Constant definitions for the pipeline package
"""

DEFAULT_LAMBDA = 1.0
DEFAULT_LAMBDA1 = 1e3
DEFAULT_LAMBDA2 = 1.0
DEFAULT_RATIO_K = 1.5
DEFAULT_ROUNDS = 2

SPARSITY_THRESHOLD = 0.9

# node shifting solves must reach this duality gap before their ratio test
REMOVAL_GAP_TOLERANCE = 1e-6
