"""
Dephasing dynamics  d/dt rho = -i[H, rho] - K [X, [X, rho]].

H and X are diagonal in the pointer basis, so the generator acts on each
matrix element separately:

    rho_ab(t) = exp[(-i(E_a - E_b) - K (x_a - x_b)^2) t] rho_ab(0)

:func:`evolve_analytic` uses that.  :func:`evolve_superop_oracle` builds the
full dim^2 x dim^2 Liouvillian and exponentiates it; it is kept for testing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexMatrix, as_array, expm_array
from .models import ModelSystem

SUPEROP_MAX_DIM = 8


@dataclass(frozen=True)
class PropagationResult:
    state: ComplexMatrix
    time: float
    method: str


def generator_exponents(model: ModelSystem) -> np.ndarray:
    """Matrix of rates g_ab with rho_ab(t) = exp(g_ab t) rho_ab(0)."""
    e, x = model.energies, model.lindblad_values
    de = e[:, None] - e[None, :]
    dx = x[:, None] - x[None, :]
    return -1j * de - model.decoherence_k * dx**2


def _check(model, rho0, t):
    if t < 0:
        raise ValueError(f"propagation time must be >= 0, got {t}")
    r = as_array(rho0)
    if r.shape != (model.dim, model.dim):
        raise ValueError(f"state has shape {r.shape}, model dim is {model.dim}")
    return r


def evolve_analytic(model: ModelSystem, rho0, t: float) -> ComplexMatrix:
    r = _check(model, rho0, t)
    return ComplexMatrix(np.exp(generator_exponents(model) * t) * r)


def evolve_rho_b(model: ModelSystem, B, rho0, t: float) -> ComplexMatrix:
    """rho_B(t) = e^{Lt}(B rho0), so that <A(t) B> = Tr(A rho_B(t))."""
    b = as_array(B)
    r = as_array(rho0)
    if b.shape != r.shape:
        raise ValueError(f"B has shape {b.shape}, state has shape {r.shape}")
    return evolve_analytic(model, b @ r, t)


def superoperator(model: ModelSystem) -> np.ndarray:
    """Row-major Liouvillian: vec(A rho B) = kron(A, B.T) vec(rho)."""
    d = model.dim
    h = model.hamiltonian()
    x = model.lindblad_operator()
    eye = np.eye(d)
    x2 = x @ x
    comm_h = np.kron(h, eye) - np.kron(eye, h.T)
    double_x = np.kron(x2, eye) + np.kron(eye, x2.T) - 2 * np.kron(x, x.T)
    return -1j * comm_h - model.decoherence_k * double_x


def adjoint_superoperator(model: ModelSystem) -> np.ndarray:
    """Dual generator with Tr((L X) Y) = Tr(X (L' Y))."""
    d = model.dim
    # permutation vec(Y) -> vec(Y.T)
    perm = np.arange(d * d).reshape(d, d).T.ravel()
    lt = superoperator(model).T
    return lt[np.ix_(perm, perm)]


def _guard(model):
    if model.dim > SUPEROP_MAX_DIM:
        raise ValueError(
            f"superoperator oracle is limited to dim <= {SUPEROP_MAX_DIM} (got {model.dim})"
        )


def evolve_superop_oracle(model: ModelSystem, rho0, t: float) -> ComplexMatrix:
    _guard(model)
    r = _check(model, rho0, t)
    prop = expm_array(superoperator(model), t)
    return ComplexMatrix((prop @ r.ravel()).reshape(r.shape))


def heisenberg_oracle(model: ModelSystem, A, t: float) -> ComplexMatrix:
    """A(t) = exp(L' t) A with the dual generator, via the dense exponential."""
    _guard(model)
    a = _check(model, A, t)
    prop = expm_array(adjoint_superoperator(model), t)
    return ComplexMatrix((prop @ a.ravel()).reshape(a.shape))


def propagate(model: ModelSystem, rho0, t: float, method: str = "analytic") -> PropagationResult:
    if method == "analytic":
        state = evolve_analytic(model, rho0, t)
    elif method == "superoperator":
        state = evolve_superop_oracle(model, rho0, t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PropagationResult(state, float(t), method)
