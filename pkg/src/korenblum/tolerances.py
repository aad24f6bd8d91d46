"""Tolerances and default parameters, kept in one place.

Verifiers, certificates and the test suite all read from here.
"""

# truncation of infinite products
TRUNC_EPSILON = 1e-12
TRUNC_MAX_TERMS = 64

# quadrature
QUAD_TOL = 1e-9
QUAD_MAX_INTERVALS = 10_000
GAUSSIAN_TAIL_CUTOFF = 8.0

# constant search
BISECTION_WIDTH = 1e-4
SEARCH_SCAN_POINTS = 16

# F >= 1 boundary scan for the Bergman integrand
KINK_SCAN_POINTS = 1000

# elementary identities on the disk (moduli <= DISK_TEST_RADIUS)
DISK_TEST_RADIUS = 0.99
SYMMETRY_TOL = 0.0
ORIGIN_DISTANCE_TOL = 1e-15
RATIO_IDENTITY_TOL = 1e-12
SQUARE_GAP_TOL = 1e-15
QUOTIENT_IDENTITY_TOL = 1e-10

# claim verifiers
FN_BOUND_TOL = 1e-12
GN_THETA_TOL = 1e-12
FG_PRODUCT_TOL = 1e-14
TAIL_BOUND_TOL = 1e-12
TEDIOUS_TOL = 1e-10
F_DOMINATION_TOL = 1e-8

# annulus pseudodistance cross-checks
CROSS_FORMULA_TOL = 1e-10
DISK_LOWER_BOUND_TOL = 1e-10
INVERSION_TOL = 1e-8
LOWER_BOUND_SLACK = 1e-6

# fock denominator: quadrature vs closed form
FOCK_CLOSED_FORM_TOL = 1e-8

# grids below these densities are flagged as low-density in reports
LOW_DENSITY_RHO = 20
LOW_DENSITY_THETA = 36
