"""Two laboratory-facing numbers that follow from the kinematics alone.

The dressed particle's interaction cross-section is bracketed between
the squared spatial period and the squared cloud amplitude.  For an
electron at atomic speed the bracket spans 1e-16 to 1e-12 cm^2, the
window where anomalous scattering would have to show up.  Separately,
any spherical body acts as a resonator for cloud waves with two closed
path lengths in the fixed ratio pi/2.
"""

from inertonsim import (
    cross_section_bounds,
    derive_kinematics,
    quantize,
    resonator_dimensions,
)
from inertonsim.constants import ELECTRON_MASS, LIGHT_SPEED, PLANCK

v0 = LIGHT_SPEED / 100.0
q = quantize(ELECTRON_MASS, v0, LIGHT_SPEED, PLANCK)
params, _ = derive_kinematics(M0=ELECTRON_MASS, v0=v0, c=LIGHT_SPEED, T=q.T)

print("electron at v0 = c/100:")
print(f"  spatial period  = {params.lam:.4e} m")
print(f"  cloud amplitude = {params.Lam:.4e} m")

bounds = cross_section_bounds(params)
lo, hi = bounds.to_cm2()
print(f"  cross-section bracket: [{lo:.3e}, {hi:.3e}] cm^2")
print(f"  upper/lower ratio = (c/v0)^2 = {bounds.upper / bounds.lower:.1f}")

print("\nspherical resonator, Earth-sized (R = 6.371e6 m):")
geo = resonator_dimensions(6.371e6)
print(f"  circumference path L1 = {geo.L1:.6e} m")
print(f"  diametral path L2     = {geo.L2:.6e} m")
print(f"  ratio L1/L2           = {geo.ratio}")

print("\nthe ratio is pi/2 for any radius:")
for R in (0.05, 1.0, 6.371e6):
    print(f"  R = {R:9.3e}  ->  {resonator_dimensions(R).ratio}")
