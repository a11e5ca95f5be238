"""
Dephasing of a three-level density matrix
=========================================

A pure state spread over three pointer positions loses its coherences at a
rate set by K times the squared separation of the positions.  Populations
never move.
"""

import numpy as np

from attoscatter.lindblad import evolve_analytic, evolve_superop_oracle
from attoscatter.models import build_custom

# %%
# Three levels at x = 0, 1, 3 with a small energy spread.
energies = [0.0, 0.1, 0.25]
positions = [0.0, 1.0, 3.0]
model = build_custom(energies, positions, 0.5, {1.0: np.eye(3)})

psi = np.ones(3) / np.sqrt(3)
rho0 = np.outer(psi, psi.conj())

# %%
# The analytic propagator multiplies each entry by its own exponential.
for t in (0.0, 0.5, 1.0, 2.0):
    rho = evolve_analytic(model, rho0, t).entries
    print(f"t={t:3.1f}  |rho01|={abs(rho[0, 1]):.4f}  |rho02|={abs(rho[0, 2]):.2e}  "
          f"trace={np.trace(rho).real:.12f}")

# %%
# The dense superoperator exponential gives the same answer.
a = evolve_analytic(model, rho0, 2.0).entries
b = evolve_superop_oracle(model, rho0, 2.0).entries
print("max |analytic - superoperator| =", np.max(np.abs(a - b)))
