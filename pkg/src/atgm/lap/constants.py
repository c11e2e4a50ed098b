"""
Constant definitions for the lap package
"""

BRUTE_FORCE_MAX_TARGETS = 8
DUMMY_ROW_COST = 0.0
# reduced costs up to this fraction of the cost scale count as tight
TIGHT_TOLERANCE = 1e-10
