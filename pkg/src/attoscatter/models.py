"""
Finite model systems for the scattering engine.

A model lives in its pointer basis, where the Hamiltonian and the single
Lindblad variable are both diagonal.  It also carries the matrices of the
density operator n(q) = exp(-i q X) for a fixed set of momentum transfers.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .core import ComplexMatrix, DensityMatrix, InvariantError

_Q_RTOL = 1e-12


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class OscillatorSpec:
    """Harmonic oscillator in natural units (energy eV, length Angstrom).

    Parameters
    ----------
    omega : float
        Oscillator quantum in eV.
    mass : float
        Mass in hbar^2/(eV Angstrom^2); see ``UNITS.mass_to_natural``.
    dim : int
        Number of retained Fock states.
    x_coupling : {"index", "energy"}
        Eigenvalue of the Lindblad variable on level n: ``n`` or ``E_n``.
    """

    omega: float
    mass: float
    dim: int = 40
    x_coupling: str = "index"

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        if not self.mass > 0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")
        if self.x_coupling not in ("index", "energy"):
            raise ValueError(f"x_coupling must be 'index' or 'energy', got {self.x_coupling!r}")

    def recoil_ratio(self, q: float) -> float:
        """q^2 / (2 m omega): recoil energy in units of the oscillator quantum."""
        return q * q / (2.0 * self.mass * self.omega)


@dataclass(frozen=True, eq=False)
class ModelSystem:
    energies: np.ndarray
    lindblad_values: np.ndarray
    decoherence_k: float
    n_of_q: Mapping[float, ComplexMatrix]
    coupling_lambda: float = 1.0
    oscillator: Optional[OscillatorSpec] = field(default=None, repr=False)

    def __post_init__(self):
        e = np.array(self.energies, dtype=float)
        x = np.array(self.lindblad_values, dtype=float)
        if e.ndim != 1 or x.shape != e.shape:
            raise InvariantError(
                f"energies and lindblad_values must have equal length, got {e.shape} and {x.shape}"
            )
        if not (self.decoherence_k >= 0 and np.isfinite(self.decoherence_k)):
            raise InvariantError(f"decoherence constant K must be real and >= 0, got {self.decoherence_k}")
        dim = e.size
        nq = {}
        for q, mat in self.n_of_q.items():
            m = mat if isinstance(mat, ComplexMatrix) else ComplexMatrix(mat)
            if m.dim != dim:
                raise InvariantError(f"n(q={q}) has dim {m.dim}, model has dim {dim}")
            nq[float(q)] = m
        for q, m in nq.items():
            partner = _lookup(nq, -q)
            if partner is not None and q > 0:
                err = np.max(np.abs(np.asarray(partner) - m.entries.conj().T))
                if err > 1e-10:
                    raise InvariantError(
                        f"n†(q)=n(-q) violated at q={q} (max deviation {err:.3e})"
                    )
        for a in (e, x):
            a.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "lindblad_values", x)
        object.__setattr__(self, "n_of_q", nq)

    @property
    def dim(self) -> int:
        return self.energies.size

    @property
    def q_values(self):
        return sorted(self.n_of_q)

    def n(self, q: float) -> np.ndarray:
        m = _lookup(self.n_of_q, q)
        if m is None:
            raise KeyError(f"model has no n(q) matrix for q={q}")
        return m.entries

    def with_k(self, k: float) -> "ModelSystem":
        return dataclasses.replace(self, decoherence_k=float(k))

    def hamiltonian(self) -> np.ndarray:
        return np.diag(self.energies).astype(complex)

    def lindblad_operator(self) -> np.ndarray:
        return np.diag(self.lindblad_values).astype(complex)


def _lookup(table, q):
    for key, val in table.items():
        if key == q or abs(key - q) <= _Q_RTOL * max(abs(key), abs(q)):
            return val
    return None


def position_operator(spec: OscillatorSpec) -> np.ndarray:
    """Truncated X = (a + a^dag)/sqrt(2 m omega) in the Fock basis."""
    a = np.diag(np.sqrt(np.arange(1, spec.dim)), 1)
    return (a + a.T) / np.sqrt(2.0 * spec.mass * spec.omega)


def build_oscillator(spec: OscillatorSpec, q_list, decoherence_k: float = 0.0,
                     coupling_lambda: float = 1.0, check_levels: int = 1) -> ModelSystem:
    """Single harmonic oscillator with n(q) = exp(-i q X) for every +/-q in `q_list`.

    The exponential is taken of the truncated position operator (exactly,
    through its eigendecomposition).  The lowest `check_levels` columns of
    each n(q) must leave less than 1e-8 of their weight in the two highest
    Fock states; otherwise the truncation is rejected.
    """
    n = np.arange(spec.dim)
    energies = spec.omega * (n + 0.5)
    xi = n.astype(float) if spec.x_coupling == "index" else energies

    w, v = np.linalg.eigh(position_operator(spec))
    table = {}
    for q in q_list:
        q = float(q)
        for qq in {q, -q}:
            if qq == 0.0:
                table[0.0] = np.eye(spec.dim, dtype=complex)
                continue
            mat = (v * np.exp(-1j * qq * w)) @ v.conj().T
            tail = np.sum(np.abs(mat[-2:, :check_levels]) ** 2, axis=0)
            if np.any(tail >= 1e-8):
                raise TruncationError(
                    f"n(q={qq}) leaks {tail.max():.2e} of its weight into the top two levels "
                    f"at dim={spec.dim}; increase dim"
                )
            table[qq] = mat
    return ModelSystem(energies, xi, decoherence_k, table, coupling_lambda, oscillator=spec)


def build_custom(energies, lindblad_values, K, n_matrices, lam: float = 1.0) -> ModelSystem:
    for q, m in n_matrices.items():
        shape = np.shape(m)
        if len(shape) != 2 or shape[0] != shape[1] or shape[0] != len(energies):
            raise InvariantError(f"n(q={q}) has shape {shape}, expected square of size {len(energies)}")
    return ModelSystem(energies, lindblad_values, K, dict(n_matrices), lam)


def thermal_state(model: ModelSystem, beta: float) -> DensityMatrix:
    """Diagonal Gibbs state exp(-beta E)/Z; ``beta=inf`` gives the ground state."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    shifted = model.energies - model.energies.min()
    if np.isinf(beta):
        p = (shifted == 0).astype(float)
    else:
        p = np.exp(-beta * shifted)
    return DensityMatrix(np.diag(p / p.sum()))
