"""
Constant definitions for the core package
"""

# SoftAssignment feasibility
ROW_SUM_TOLERANCE = 1e-9
COLUMN_SUM_TOLERANCE = 1e-9
ENTRY_TOLERANCE = 1e-12

# edge pruning: below this length variance all edges are kept
PRUNE_VARIANCE_FLOOR = 1e-12
PRUNE_MAX_ITERATIONS = 100

# Delaunay
INCIRCLE_TOLERANCE = 1e-12
COLLINEAR_TOLERANCE = 1e-12
