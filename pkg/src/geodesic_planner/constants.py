"""Centralized constants for Geodesic Planner.

This module contains all shared tolerances, sample counts and defaults used
across the library and the command-line front end.
"""

from __future__ import annotations

import math


# =============================================================================
# Tolerances
# =============================================================================

# Unit-norm check for points and unit velocities
UNIT_TOL = 1e-12

# Accepted deviation of a unit velocity from norm 1
VELOCITY_UNIT_TOL = 1e-9

# Tangency check <base, vec> = 0
TANGENT_TOL = 1e-10

# Minimizer ties are decided on distances at this absolute tolerance
TIE_TOL = 1e-9

# Multiplier defining the AmbiguousNearCut band (tie_tol, AMBIGUITY_FACTOR * tie_tol)
AMBIGUITY_FACTOR = 10.0

# Two points are the same class below this distance
COINCIDENT_TOL = 1e-10

# 1 + <x, y> below this triggers the antipodal family branch on spheres
ANTIPODAL_TOL = 1e-12

# Sign-pattern tolerance on <u_k, x> for the lens fundamental domain
BOUNDARY_TOL = 1e-9

# Orthogonality and structure checks on isometry matrices
UNITARY_TOL = 1e-10

# Strict margin demanded by the tangent comparison in the half-angle inequality
TRIG_MARGIN_TOL = 1e-12

# Rank decisions on root data
ROOT_RANK_TOL = 1e-10

# A homogeneous coordinate counts as zero below this modulus
CELL_ZERO_TOL = 1e-12


# =============================================================================
# Sampling and Discretization Defaults
# =============================================================================

DEFAULT_SEED = 20240531

# Samples along a discretized motion plan
PATH_SAMPLES = 64

# Uniform S^3 samples drawn by the emptiness sweep
EMPTINESS_SAMPLES = 10_000

# Points on the solution circle checked per constraint set
SOLUTION_CIRCLE_SAMPLES = 4096

# Above this p only singleton, pair and full constraint sets are enumerated
EXHAUSTIVE_SUBSET_P_MAX = 14

# Largest p swept by the half-angle inequality check
TRIG_P_MAX = 500

# Boundary points drawn for cross-module consistency checks
CONSISTENCY_SAMPLES = 1_000

# Perturbed pairs per radius when measuring section continuity
CONTINUITY_SAMPLES = 200

# Perturbation radii, each double the last
CONTINUITY_RADII = (1e-3, 2e-3, 4e-3)

# Largest accepted velocity deviation per unit of perturbation radius
CONTINUITY_GAIN = 10.0

# Deviation may grow by the radius ratio times this slack, plus CONTINUITY_FLOOR
CONTINUITY_SLACK = 1.25
CONTINUITY_FLOOR = 1e-12


# =============================================================================
# Oracle
# =============================================================================

DEFAULT_GRID_SIZE = 20_000
MIN_GRID_SIZE = 1_000
LAND_TOL = 5e-3

# Refined landings must reach this chordal error
REFINE_TOL = 1e-10

# Cluster radius as a multiple of land_tol
CLUSTER_FACTOR = 10.0

# Linked clusters needed before a continuous family is reported: at least
# FAMILY_MIN_CHAIN, at most FAMILY_MIN_CLUSTERS, otherwise half the fewest
# clusters a great circle of directions can split into
FAMILY_MIN_CHAIN = 3
FAMILY_MIN_CLUSTERS = 10

# Single-linkage threshold as a multiple of the cluster radius
FAMILY_LINK_FACTOR = 2.5

# Oracle accepts tangent spaces up to this real dimension
ORACLE_MAX_TANGENT_DIM = 4


# =============================================================================
# Output
# =============================================================================

JSON_SIGNIFICANT_DIGITS = 17

# Sentinel returned when a geodesic never leaves a half-space on (0, pi]
NO_CROSSING = math.inf
