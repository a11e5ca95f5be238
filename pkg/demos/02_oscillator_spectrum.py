"""
Phonon ladder of a harmonic oscillator
======================================

For a ground-state oscillator the structure factor is a comb of lines at
n*omega whose weights follow a Poisson law with mean q^2/(2 m omega).
Dephasing in the position basis smears the comb.
"""

import math

import numpy as np

from attoscatter.models import OscillatorSpec, build_oscillator, thermal_state
from attoscatter.scattering import dynamic_structure_factor, intermediate_function

spec = OscillatorSpec(omega=1.0, mass=1.0, dim=40)
eta = 0.5
q = math.sqrt(2 * spec.mass * spec.omega * eta)
model = build_oscillator(spec, [q])
rho = thermal_state(model, math.inf)

# %%
# 189 points of the symmetric time grid cover three periods, so the
# frequency grid has spacing omega/3 and every line sits on a bin.
t = np.arange(95) * 2 * math.pi / 63
sqw = dynamic_structure_factor(intermediate_function(model, rho, q, t))

print(" n   weight    Poisson")
for n in range(6):
    ref = math.exp(-eta) * eta**n / math.factorial(n)
    print(f"{n:2d}  {sqw.peak_weight(n, 0.5):.6f}  {ref:.6f}")
print("sum rule:", sqw.total_weight())

# %%
# With K > 0 the lines acquire width; a Gaussian window keeps the total.
t = np.arange(400) * 0.2
for K in (0.0, 0.05):
    series = intermediate_function(model.with_k(K), rho, q, t)
    s = dynamic_structure_factor(series, "gaussian", sigma=20.0)
    peak = s.s_values[np.argmin(np.abs(s.omegas - 1.0))]
    print(f"K={K:4.2f}  S(q, omega=1)={peak:.4f}  total={s.total_weight():.6f}")
