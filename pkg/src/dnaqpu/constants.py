"""Physical constants (SI, CODATA via scipy) and numerical tolerances."""

from scipy import constants as _sc

HBAR = _sc.hbar                # J s
K_B = _sc.k                    # J / K
EV = _sc.electron_volt         # J
C_LIGHT = _sc.c                # m / s
MU0_OVER_4PI = _sc.mu_0 / (4 * _sc.pi)
GAMMA_PROTON = _sc.physical_constants["proton gyromag. ratio"][0]  # rad s^-1 T^-1
ANGSTROM = 1e-10

HERM_TOL = 1e-12
UNIT_TOL = 1e-10
EIG_TOL = 1e-10
