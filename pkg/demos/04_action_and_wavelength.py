"""Work from the action integrals down to laboratory numbers.

The oscillator's cyclic action equals M v0^2 T exactly, and setting that
quantity to Planck's constant turns the period and spatial period into a
frequency and a wavelength.  For an electron at 1e6 m/s the wavelength
lands at 0.7274 nm, the familiar de Broglie value.
"""

from inertonsim import (
    OscillatorSpec,
    cyclic_action,
    derive_kinematics,
    hj_residual,
    lab_frame_action,
    quantize,
)
from inertonsim.constants import ELECTRON_MASS, LIGHT_SPEED, PLANCK

params, kin = derive_kinematics(M0=1.0, v0=1.0, c=10.0, T=1.0)
spec = OscillatorSpec.from_params(params)

S_cyc = cyclic_action(spec)
print("cyclic action over one full period:", S_cyc)
print("M v0^2 T =", params.M * params.v0 ** 2 * params.T)
print("lab frame action over a period:", lab_frame_action(params))

# Hamilton-Jacobi consistency of the shortened action, sampled inside
# the classically allowed region
worst = max(abs(hj_residual(f * spec.amplitude, spec)) for f in (0.0, 0.3, 0.6, 0.9))
print("worst Hamilton-Jacobi residual (fraction of E):", worst / spec.E)

print("\nelectron at v0 = 1e6 m/s:")
q = quantize(ELECTRON_MASS, 1.0e6, LIGHT_SPEED, PLANCK)
print(f"  period T        = {q.T:.6e} s")
print(f"  wavelength      = {q.lambda_dB:.6e} m")
print(f"  cloud amplitude = {q.Lambda:.6e} m")
print(f"  frequency nu    = {q.nu:.6e} Hz")
print(f"  check: nu * 2T  = {q.nu * 2.0 * q.T}")
