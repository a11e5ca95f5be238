"""
Dense complex operators, physical constants and unit conversions.

Everything downstream works in natural units with hbar = 1, energies in eV,
lengths in Angstrom.  The time unit is therefore hbar/eV (about 658 as) and
the mass unit is hbar^2 / (eV * Angstrom^2).  Conversions happen only at the
input/output boundary through :data:`UNITS`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# CODATA 2018 values, 10 significant digits.
HBAR_EV_S = 6.582119569e-16
HBAR_J_S = 1.054571817e-34
EV_J = 1.602176634e-19
C_M_S = 2.997924580e8
NEUTRON_MASS_KG = 1.674927498e-27
PROTON_MASS_KG = 1.672621924e-27
BOLTZMANN_EV_K = 8.617333262e-5

DEFAULT_ATOL = 1e-12


class DimensionError(ValueError):
    pass


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class UnitsContext:
    hbar_eV_s: float = HBAR_EV_S
    hbar_J_s: float = HBAR_J_S
    eV_J: float = EV_J
    c_m_s: float = C_M_S
    neutron_mass_kg: float = NEUTRON_MASS_KG
    proton_mass_kg: float = PROTON_MASS_KG
    k_B_eV_K: float = BOLTZMANN_EV_K

    def ev_to_inv_s(self, energy_eV):
        return energy_eV / self.hbar_eV_s

    def inv_s_to_ev(self, rate_s):
        return rate_s * self.hbar_eV_s

    @staticmethod
    def angstrom_to_m(x):
        return x * 1e-10

    @staticmethod
    def m_to_angstrom(x):
        return x * 1e10

    @staticmethod
    def s_to_as(t):
        return t * 1e18

    @staticmethod
    def as_to_s(t):
        return t * 1e-18

    def natural_time_s(self):
        """Length of one natural time unit (hbar/eV) in seconds."""
        return self.hbar_eV_s

    def as_to_natural(self, t_as):
        return t_as * 1e-18 / self.hbar_eV_s

    def natural_to_as(self, t):
        return t * self.hbar_eV_s * 1e18

    def mass_to_natural(self, mass_kg):
        """Mass in units of hbar^2 / (eV Angstrom^2)."""
        return mass_kg * 1e-20 * self.eV_J / self.hbar_J_s**2

    def temperature_to_beta(self, temperature_K):
        """Inverse temperature in 1/eV; T = 0 maps to ``inf``."""
        if temperature_K == 0:
            return math.inf
        return 1.0 / (self.k_B_eV_K * temperature_K)


UNITS = UnitsContext()


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Square complex matrix, stored dense and read-only."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def allclose(self, other, atol: float = DEFAULT_ATOL) -> bool:
        b = np.asarray(other)
        return b.shape == self.entries.shape and bool(np.all(np.abs(self.entries - b) <= atol))

    @property
    def H(self) -> "ComplexMatrix":
        return ComplexMatrix(self.entries.conj().T)


class HermitianMatrix(ComplexMatrix):
    def __post_init__(self):
        super().__post_init__()
        a = self.entries
        err = np.max(np.abs(a - a.conj().T))
        if err > DEFAULT_ATOL:
            raise InvariantError(f"matrix is not Hermitian (max |A - A^H| = {err:.3e})")


class DensityMatrix(HermitianMatrix):
    """Hermitian, unit trace, positive semidefinite."""

    def __post_init__(self):
        super().__post_init__()
        a = self.entries
        tr = np.trace(a)
        if abs(tr - 1.0) > 1e-10:
            raise InvariantError(f"density matrix trace is {tr:.12g}, expected 1")
        lo = np.linalg.eigvalsh(a).min()
        if lo < -1e-10:
            raise InvariantError(f"density matrix has negative eigenvalue {lo:.3e}")


def as_array(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def matmul(a, b) -> ComplexMatrix:
    x, y = as_array(a), as_array(b)
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape[0]} vs {y.shape[0]}")
    return ComplexMatrix(x @ y)


def trace(a) -> complex:
    return complex(np.trace(as_array(a)))


def _taylor(b: np.ndarray, order: int) -> np.ndarray:
    # Horner form of sum_{k<=order} b^k / k!
    eye = np.eye(b.shape[0], dtype=complex)
    out = eye.copy()
    for k in range(order, 0, -1):
        out = eye + (b @ out) / k
    return out


def expm_array(a: np.ndarray, t: float = 1.0, tol: float = 1e-12) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential of ``a * t``.

    The argument is scaled by ``2**-s`` until its 1-norm is at most 1/2.  The
    Taylor order starts at 8 and is doubled until a further doubling moves no
    entry by more than `tol`; the result is then squared `s` times.
    """
    m = np.asarray(a, dtype=complex) * t
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix_exp: non-finite entries in generator")
    norm = np.linalg.norm(m, 1)
    s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    b = m / 2.0**s
    order = 8
    cur = _taylor(b, order)
    while True:
        nxt = _taylor(b, 2 * order)
        done = np.max(np.abs(nxt - cur)) <= tol or order >= 64
        cur, order = nxt, 2 * order
        if done:
            break
    for _ in range(s):
        cur = cur @ cur
    return cur


def matrix_exp(a, t: float = 1.0) -> ComplexMatrix:
    return ComplexMatrix(expm_array(as_array(a), t))
