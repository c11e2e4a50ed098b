"""
Constant definitions for the objectives package
"""

DEFAULT_EPSILON = 1e-8

# shape context descriptor
SHAPE_CONTEXT_ANGLE_BINS = 12
SHAPE_CONTEXT_RADIUS_BINS = 5
SHAPE_CONTEXT_INNER_RADIUS = 0.125
SHAPE_CONTEXT_OUTER_RADIUS = 2.0

# affinity matrix
AFFINITY_MAX_SIZE = 2500
LENGTH_ONLY_SCALE = 0.15
