"""Numeric tolerances shared across the package.

Single point of truth: every comparison threshold used by the library
lives here, so the arithmetic kernel can be retuned in one place.
"""

# Coefficients with magnitude below DEGREE_TRIM_REL * max|coeff| count as
# zero when a polynomial's degree is read off.
DEGREE_TRIM_REL = 1e-12

# Node equality for matrices parsed from files. Constructed matrices use
# exact floating-point comparison (tolerance 0).
FILE_NODE_TOL = 1e-12

# Sum of the fundamental values against 1 (partition of unity).
PARTITION_TOL = 1e-10

# Closed form against enumeration oracles.
ORACLE_TOL = 1e-10

# Width at which the bracketed sup search stops refining, and the
# tie-break window for reporting the smallest maximizing x.
SUP_REFINE_TOL = 1e-8

# Samples per inter-node segment are at least SEGMENT_SAMPLES_PER_NODE
# times the row length.
SEGMENT_SAMPLES_PER_NODE = 8

# Zero-pattern verdicts, relative to each polynomial's max coefficient
# magnitude.
ZERO_PATTERN_TOL = 1e-9

# Residual threshold when recovering nodes from basis roots.
ROOT_RESIDUAL_TOL = 1e-8

# A previously recovered node must reappear among the next polynomial's
# roots within this distance; root positions are less accurate than
# residuals for clustered roots, hence looser than ROOT_RESIDUAL_TOL.
ROOT_MATCH_TOL = 1e-6

# Projection-chain and partial-sum comparisons at sample points.
CHAIN_TOL = 1e-8

# Explicit versus recursive divided differences (relative).
DD_AGREE_TOL = 1e-8

# Agreement between basis changes of the same polynomial (relative).
BASIS_CHANGE_TOL = 1e-9

# Porosity estimates count as converged when stable within this window
# across the last two grid refinements.
POROSITY_STABLE = 0.02

# Geometric grid factor for porosity radius sweeps.
POROSITY_GRID_FACTOR = 0.9
