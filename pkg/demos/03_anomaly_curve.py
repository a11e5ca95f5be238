"""
Shortfall of the scattering rate under decoherence
==================================================

The rate ratio W(K)/W(0) for a proton in a 0.2 eV well at room temperature.
Off-diagonal contributions are damped by exp(-K dx^2 t), so the ratio drops
once K^-1 becomes comparable with the scattering time.
"""

import numpy as np

from attoscatter.core import UNITS
from attoscatter.models import OscillatorSpec, build_oscillator, thermal_state
from attoscatter.scattering import anomaly_curve, rate_decohered

mass = UNITS.mass_to_natural(UNITS.proton_mass_kg)
spec = OscillatorSpec(omega=0.2, mass=mass, dim=40)
q = 6.0
model = build_oscillator(spec, [q])
rho = thermal_state(model, UNITS.temperature_to_beta(300.0))

tau_as = 1000.0
tau = UNITS.as_to_natural(tau_as)
ks = np.concatenate([[0.0], np.logspace(-2, 4, 13)])

print(f"q = {q} 1/A, tau_sc = {tau_as} as")
print("   K [eV]     K*tau    ratio")
for K, ratio in anomaly_curve(model, rho, q, tau, ks):
    print(f"{K:9.3g}  {K * tau:8.3g}  {ratio:.4f}")

# %%
# The full result also carries the exact transition probability.
r = rate_decohered(model.with_k(1.0), rho, q, tau)
print(f"K=1 eV: rate={r.rate:.5g}  W={r.w_total:.5g}  ratio={r.anomaly_ratio:.4f}")
