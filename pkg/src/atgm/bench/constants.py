"""
Constant definitions for the bench package
"""

DEFAULT_TRIALS = 10
DEFAULT_SEED = 0
SPARSITY_THRESHOLD = 0.9
SYNTHETIC_DIMENSION = 2

# spectral baseline on raw synthetic coordinates
SPECTRAL_LENGTH_SCALE = 0.15

TABLE1_INLIERS = (100, 300, 500, 1000)
TABLE1_NOISE = (0.02, 0.04, 0.06, 0.08, 0.10)
TABLE1_OUTLIER_RATIOS = (0.2, 0.4, 0.6, 0.8, 1.0)
