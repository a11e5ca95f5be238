"""Neutron Compton scattering from a dephasing open quantum system."""
from .core import (UNITS, ComplexMatrix, DensityMatrix, HermitianMatrix,
                   UnitsContext, matmul, matrix_exp, trace)
from .lindblad import (evolve_analytic, evolve_rho_b, evolve_superop_oracle,
                       propagate)
from .models import (ModelSystem, OscillatorSpec, build_custom,
                     build_oscillator, thermal_state)
from .scattering import (RateResult, anomaly_curve, correlation,
                         dynamic_structure_factor, intermediate_function,
                         rate_decohered, rate_standard, w_exact)

__version__ = "0.1.0"
