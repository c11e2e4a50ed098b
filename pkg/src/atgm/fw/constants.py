"""
Constant definitions for the fw package
"""

# nonconvex edge discrepancy solves
NONCONVEX_MAX_ITERATIONS = 200
NONCONVEX_RELATIVE_TOLERANCE = 1e-9

# convex node shifting solves, absolute duality gap
CONVEX_MAX_ITERATIONS = 100
CONVEX_GAP_TOLERANCE = 1e-7

# weight corrections over the active vertices of convex solves
CORRECTION_GAP_FRACTION = 1e-2
CORRECTION_MAX_ITERATIONS = 2000

# line searches
ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
BACKTRACKING_MAX_HALVINGS = 60
QUADRATIC_CURVATURE_FLOOR = 1e-14

# relative round-off allowed in objective values of convex solves and traces
ROUNDOFF_TOLERANCE = 1e-12
