"""Physical constants used across the package.

Values follow the 2018 CODATA adjustment. The first four are exact by
definition in the current SI.
"""

LIGHT_SPEED = 2.99792458e8          # m/s
PLANCK = 6.62607015e-34             # J s
ELEMENTARY_CHARGE = 1.602176634e-19 # C
HBAR = 1.054571817e-34              # J s  (h / 2 pi, rounded at CODATA precision)
ELECTRON_MASS = 9.1093837015e-31    # kg

# Convenience for reporting cross sections the way the experimental
# literature quotes them.
M2_TO_CM2 = 1.0e4
