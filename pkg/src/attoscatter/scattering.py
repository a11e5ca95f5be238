"""
Correlation functions, structure factor and finite-time transition rates.

With rho_B(0) = n(q) rho the density-density correlation is

    C(q, tau) = Tr[n(-q) e^{L tau}(n(q) rho)]
              = sum_ab M_ab exp(-z_ab tau),

    M_ab = <a|n(-q)|b><b|n(q) rho|a>,
    z_ab = i(E_b - E_a) + K (x_b - x_a)^2.

Every time integral of C is therefore a sum of elementary integrals of
exp(-z tau), done here in closed form.  For Hermitian rho the backward
correlation Tr[rho n(-q) n(q, tau)] equals conj(C(q, tau)); the structure
factor and the double integral W use this.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DensityMatrix, InvariantError, trace
from .lindblad import evolve_analytic, evolve_rho_b, generator_exponents
from .models import ModelSystem

_Z_EPS = 1e-10


@dataclass(frozen=True)
class CorrelationSeries:
    q: float
    taus: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.taus) <= 0):
            raise ValueError("taus must be strictly increasing")


@dataclass(frozen=True)
class SpectrumSeries:
    q: float
    omegas: np.ndarray
    s_values: np.ndarray

    @property
    def d_omega(self) -> float:
        return float(self.omegas[1] - self.omegas[0])

    def total_weight(self) -> float:
        return self.d_omega * float(np.sum(self.s_values))

    def peak_weight(self, center: float, half_width: float) -> float:
        sel = np.abs(self.omegas - center) < half_width
        return self.d_omega * float(np.sum(self.s_values[sel]))


@dataclass(frozen=True)
class RateResult:
    q: float
    tau_sc: float
    K: float
    w_total: float
    rate: float
    rate_decoherence_free: float
    anomaly_ratio: float
    rate_imag: float = 0.0


def _rho(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return DensityMatrix(rho).entries


def pair_terms(model: ModelSystem, rho, q: float):
    """Weights M_ab and exponents z_ab of the forward correlation."""
    r = _rho(rho)
    nq, nmq = model.n(q), model.n(-q)
    m = nmq * (nq @ r).T
    z = -generator_exponents(model).T
    return m, z


def backward_pair_terms(model: ModelSystem, rho, q: float):
    """Same for Tr[n(q) e^{L tau}(rho n(-q))], i.e. C(q, -tau)."""
    r = _rho(rho)
    nq, nmq = model.n(q), model.n(-q)
    m = nq.T * (r @ nmq)
    z = -generator_exponents(model)
    return m, z


def _phi1(z, tau):
    """int_0^tau exp(-z s) ds."""
    x = z * tau
    small = np.abs(x) < _Z_EPS
    safe = np.where(small, 1.0, x)
    return tau * np.where(small, 1.0, -np.expm1(-safe) / safe)


_PHI2_SERIES = np.array([(-1.0) ** k / math.factorial(k + 2) for k in range(14)])


def _phi2(z, tau):
    """int_0^tau (tau - s) exp(-z s) ds = int_0^tau dt int_0^t exp(-z s) ds."""
    x = np.asarray(z * tau, dtype=complex)
    small = np.abs(x) < 0.1
    safe = np.where(small, 1.0, x)
    direct = (safe - 1.0 + np.exp(-safe)) / safe**2
    series = np.polynomial.polynomial.polyval(x, _PHI2_SERIES)
    return tau * tau * np.where(small, series, direct)


def correlation(model: ModelSystem, rho, q: float, tau: float) -> complex:
    """C(q, tau) = Tr[n(-q) rho_B(tau)] with rho_B(0) = n(q) rho."""
    r = _rho(rho)
    return trace(model.n(-q) @ evolve_rho_b(model, model.n(q), r, tau).entries)


def backward_correlation(model: ModelSystem, rho, q: float, tau: float) -> complex:
    """Tr[rho n(-q) n(q, tau)], the correlation at negative lag -tau."""
    r = _rho(rho)
    return trace(model.n(q) @ evolve_analytic(model, r @ model.n(-q), tau).entries)


def intermediate_function(model: ModelSystem, rho, q: float, tau_grid) -> CorrelationSeries:
    taus = np.asarray(tau_grid, dtype=float)
    if np.any(taus < 0):
        raise ValueError("tau grid must be non-negative")
    m, z = pair_terms(model, rho, q)
    mask = m != 0
    mv, zv = m[mask], z[mask]
    values = np.exp(-np.multiply.outer(taus, zv)) @ mv
    return CorrelationSeries(float(q), taus, values)


def dynamic_structure_factor(series: CorrelationSeries, window=None, sigma=None) -> SpectrumSeries:
    """S(q, w) = (1/2pi) int exp(i w t) F(q, t) dt on the FFT grid of the series.

    The series must start at t = 0 on a uniform grid; negative times are filled
    in with F(-t) = conj F(t).  Positive w is energy transferred to the target.
    On this grid d_omega * sum(S) equals F(q, 0) exactly.
    """
    t = series.taus
    if t[0] != 0:
        raise ValueError("tau grid must start at 0")
    dt = np.diff(t)
    if not np.allclose(dt, dt[0], rtol=1e-9, atol=0):
        raise ValueError("dynamic_structure_factor needs a uniform tau grid")
    dt = float(dt[0])
    f = np.array(series.values, dtype=complex)
    if window == "gaussian":
        if not sigma or sigma <= 0:
            raise ValueError("gaussian window needs sigma > 0")
        f = f * np.exp(-0.5 * (t / sigma) ** 2)
    elif window is not None:
        raise ValueError(f"unknown window {window!r}")
    full = np.concatenate([f, np.conj(f[:0:-1])])
    size = full.size
    s = np.fft.ifft(full) * size * dt / (2 * np.pi)
    omegas = 2 * np.pi * np.fft.fftfreq(size, dt)
    order = np.argsort(omegas)
    if np.max(np.abs(s.imag)) > 1e-9 * max(np.max(np.abs(s.real)), 1e-300):
        raise InvariantError("structure factor has a non-negligible imaginary part")
    return SpectrumSeries(series.q, omegas[order], s.real[order])


def w_exact(model: ModelSystem, rho, q: float, tau_sc: float) -> float:
    """Transition probability lambda^2 int_0^T int_0^T C(q, t'' - t') dt' dt''.

    Positive lags use the forward correlation and negative lags the backward
    one; both halves are integrated in closed form pair by pair.
    """
    if not tau_sc > 0:
        raise ValueError(f"tau_sc must be > 0, got {tau_sc}")
    m, z = pair_terms(model, rho, q)
    mb, zb = backward_pair_terms(model, rho, q)
    total = np.sum(m * _phi2(z, tau_sc)) + np.sum(mb * _phi2(zb, tau_sc))
    total *= model.coupling_lambda**2
    if abs(total.imag) > 1e-9 * max(abs(total.real), 1e-300):
        raise InvariantError(f"W has imaginary residue {total.imag:.3e} (real part {total.real:.3e})")
    return float(total.real)


def _rate_complex(model, rho, q, tau_sc) -> complex:
    if not tau_sc > 0:
        raise ValueError(f"tau_sc must be > 0, got {tau_sc}")
    m, z = pair_terms(model, rho, q)
    return 2 * model.coupling_lambda**2 * complex(np.sum(m * _phi1(z, tau_sc)))


def rate_standard(model: ModelSystem, rho, q: float, tau_sc: float) -> float:
    """2 lambda^2 Re int_0^T C(q, eta) d eta at the model's K.

    The real part is the symmetrised integrand (C(eta) + C(-eta))/2; the
    finite-window step assumes C has died out by T.
    """
    return _rate_complex(model, rho, q, tau_sc).real


def rate_decohered(model: ModelSystem, rho, q: float, tau_sc: float) -> RateResult:
    full = _rate_complex(model, rho, q, tau_sc)
    if model.decoherence_k == 0:
        free = full.real
    else:
        free = rate_standard(model.with_k(0.0), rho, q, tau_sc)
    ratio = full.real / free if free != 0 else math.nan
    return RateResult(
        q=float(q),
        tau_sc=float(tau_sc),
        K=float(model.decoherence_k),
        w_total=w_exact(model, rho, q, tau_sc),
        rate=full.real,
        rate_decoherence_free=free,
        anomaly_ratio=ratio,
        rate_imag=full.imag,
    )


def rate_closed_system(model: ModelSystem, rho, q: float, tau_sc: float) -> float:
    """Decoherence-free reference from the Heisenberg-picture spectral sum.

    C0(t) = Tr[n(q) rho U(t)^dag n(-q) U(t)] with U = exp(-iHt); the K of the
    model is ignored.
    """
    r = _rho(rho)
    e = model.energies
    nq_rho = model.n(q) @ r
    nmq = model.n(-q)
    gap = e[:, None] - e[None, :]  # E_a - E_b for <a|n(-q)|b>
    weight = nq_rho.T * nmq
    x = gap * tau_sc
    small = np.abs(x) < _Z_EPS
    # int_0^T exp(i g t) dt = sin(gT)/g + i (1 - cos(gT))/g
    safe_gap = np.where(small, 1.0, gap)
    integral = np.where(small, tau_sc, (np.sin(x) + 1j * (1 - np.cos(x))) / safe_gap)
    return float(2 * model.coupling_lambda**2 * np.sum(weight * integral).real)


def diagonal_limit_rate(model: ModelSystem, rho, q: float, tau_sc: float) -> float:
    """K -> infinity limit: only the terms with equal Lindblad eigenvalue survive."""
    m, z = pair_terms(model, rho, q)
    x = model.lindblad_values
    same = np.abs(x[:, None] - x[None, :]) == 0
    return float(2 * model.coupling_lambda**2 * np.sum(np.where(same, m * _phi1(z, tau_sc), 0)).real)


def anomaly_curve(model: ModelSystem, rho, q: float, tau_sc: float, k_grid):
    """Pairs (K, rate(K)/rate(0)) at fixed q and tau_sc."""
    ks = [float(k) for k in k_grid]
    if any(k < 0 for k in ks) or any(b < a for a, b in zip(ks, ks[1:])):
        raise ValueError("k_grid must be non-negative and ascending")
    free = rate_standard(model.with_k(0.0), rho, q, tau_sc)
    if not free > 0:
        raise ValueError(f"decoherence-free rate is not positive ({free:.3e}); ratio undefined")
    out = []
    for k in ks:
        r = free if k == 0 else rate_standard(model.with_k(k), rho, q, tau_sc)
        out.append((k, r / free))
    return out
