import math

#
# Grid defaults
#
DEFAULT_N_R = 64
DEFAULT_N_THETA = 128
DEFAULT_FD_ORDER = 8
# convergence ladders differentiate up to four times, order 4 keeps the roundoff floor below the truncation error
LADDER_FD_ORDER = 4
DEFAULT_LADDER = (32, 64, 128, 256)
MIN_N_THETA = 8
# angular modes whose radial factor r^m falls below this are treated as noise by the angular derivative
ANGULAR_MODE_CUTOFF = 1e-14
MIN_ANGULAR_MODES = 8

#
# Tolerances
#
POISSON_TOL = 1e-10
HODGE_TOL = 1e-8
SCHEME_AGREEMENT_TOL = 1e-6
ITERATION_TOL = 1e-10
MAX_ITERATIONS = 200
NEUMANN_COMPAT_TOL = 1e-4
# neumann data smaller than this is roundoff, the compatibility check measures mismatches against it
NEUMANN_COMPAT_FLOOR = 1e-8
CONFORMAL_DEFECT_TOL = 1e-6
DEGENERATE_GRADIENT_TOL = 1e-10
FRAME_DEGENERACY_TOL = 1e-8
# basis pairs whose projection off the tangent plane gets shorter than this are passed over
FRAME_SELECTION_TOL = 0.1
SMALL_ENERGY_EPSILON = 0.05
RESIDUE_SPREAD_FLAG = 0.1
RESIDUE_FLOOR = 1e-8
EIGEN_TOL = 1e-10

#
# Direct solves
#
# above this many unknowns the direct scheme switches from sparse assembly to preconditioned gmres
DIRECT_ASSEMBLY_LIMIT = 4096
ASSEMBLY_BATCH = 256

#
# Geometry
#
LI_YAU_THRESHOLD = 8 * math.pi
# inversion centers keep at least this many image diameters away from the surface
MOBIUS_CLEARANCE = 0.5
RESIDUE_GRID_N_R = 256
RESIDUE_RADII = tuple(0.8 * 2.0 ** -k for k in range(4))
# an annulus (r/2, r) is resolved when it holds this many radial nodes
RESIDUE_MIN_ANNULUS_NODES = 8
# radii adapted to a coarse grid still span at least this factor
RESIDUE_MIN_SPAN = 2.0
BOOTSTRAP_RADII = (0.5, 0.25, 0.125)

#
# Reports and io
#
SCHEMA_VERSION = '1.0'
BINARY_MAGIC = b'WLFIELD1'
REPORT_DIR_ENV = 'WILLMORE_LAB_REPORT_DIR'
RNG_ALGORITHM = 'philox-4x64'
