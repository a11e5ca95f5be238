"""
Timescales of an eV neutron collision
=====================================

Order-of-magnitude estimates for the scattering window, the neutron transit
time across the nuclear range and the light-cone radius that follows.
"""

from attoscatter import timescales as ts
from attoscatter.core import UNITS

q = 100.0
v0 = ts.oscillator_rms_velocity(0.2)
kin = ts.KinematicsInput(q=q, v0=v0, deltaE=10.0, Es=ts.recoil_energy(q), E0=10.0, range=1e-5)

for name, value in ts.estimate_all(kin).items():
    print(f"{name:14s} {value:.4g}")

# %%
print(f"1/(q v0) = {UNITS.s_to_as(ts.scattering_time_ia(q, v0)):.0f} as")
print(f"c * 1e-19 s = {ts.causal_radius(1e-19):.3f} A")
