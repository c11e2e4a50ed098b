"""
Constant definitions for the baseline package
"""

POWER_ITERATION_MAX_ITERATIONS = 1000
POWER_ITERATION_TOLERANCE = 1e-10

BRUTE_FORCE_QAP_MAX_SOURCES = 7
BRUTE_FORCE_QAP_BATCH = 20000
