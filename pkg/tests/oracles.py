"""Brute-force reference computations used only by the tests.

Nothing here calls into the package's numerical code paths: superoperators
are assembled column by column, exponentials come from scipy or plain power
series, and time integrals from the trapezoid rule.
"""
import math

import numpy as np
import scipy.linalg

from attoscatter import build_custom


def matmul_loops(a, b):
    n = len(a)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i, j] += a[i, k] * b[k, j]
    return out


def taylor_exp(a, t, terms=200):
    a = np.asarray(a, dtype=complex) * t
    out = np.eye(len(a), dtype=complex)
    term = np.eye(len(a), dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


def liouvillian_columns(energies, xi, K):
    """Dense generator built by applying the master equation to each |k><l|."""
    d = len(energies)
    h = np.diag(energies).astype(complex)
    x = np.diag(xi).astype(complex)
    cols = []
    for k in range(d):
        for l in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[k, l] = 1.0
            out = -1j * (h @ e - e @ h) - K * (x @ (x @ e - e @ x) - (x @ e - e @ x) @ x)
            cols.append(out.ravel())
    return np.array(cols).T


def random_density(rng, d, diagonal=False):
    if diagonal:
        p = rng.random(d) + 0.05
        return np.diag(p / p.sum()).astype(complex)
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    r = g @ g.conj().T
    return r / np.trace(r).real


def random_position(rng, d, scale=0.6):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (g + g.conj().T) / 2


def random_model(rng, d, q=1.0, e_span=1.0, xi_span=1.0, k_max=1.0):
    """Custom model with unitary n(q) = expm(-i q X) for a random Hermitian X."""
    e = rng.random(d) * e_span
    xi = rng.random(d) * xi_span
    K = rng.random() * k_max
    xpos = random_position(rng, d)
    nq = scipy.linalg.expm(-1j * q * xpos)
    return build_custom(e, xi, K, {q: nq, -q: nq.conj().T})


def correlation_superop(model, rho, q, taus):
    """Forward and backward two-time correlations on a uniform grid.

    Forward  C(+t) = Tr[n(-q) e^{Lt}(n(q) rho)],
    backward C(-t) = Tr[n(q)  e^{Lt}(rho n(-q))],
    stepping with one scipy exponential of the column-built generator.
    """
    lv = liouvillian_columns(model.energies, model.lindblad_values, model.decoherence_k)
    h = taus[1] - taus[0]
    step = scipy.linalg.expm(lv * h)
    nq, nmq = model.n(q), model.n(-q)
    d = model.dim
    fwd, bwd = [], []
    v = (nq @ rho).ravel()
    w = (rho @ nmq).ravel()
    for _ in taus:
        fwd.append(np.trace(nmq @ v.reshape(d, d)))
        bwd.append(np.trace(nq @ w.reshape(d, d)))
        v = step @ v
        w = step @ w
    return np.array(fwd), np.array(bwd)


def trapezoid_weights(n, h):
    w = np.full(n, h)
    w[0] = w[-1] = h / 2
    return w


def rate_quadrature(model, rho, q, tau_sc, nodes=5000, corr=None):
    """2 lambda^2 Re int_0^T C(eta) d eta by the trapezoid rule."""
    taus = np.linspace(0.0, tau_sc, nodes)
    vals = np.array([corr(model, rho, q, t) for t in taus])
    w = trapezoid_weights(nodes, taus[1] - taus[0])
    return 2 * model.coupling_lambda**2 * np.sum(w * vals)


def w_quadrature(model, rho, q, tau_sc, nodes=2000):
    """lambda^2 int_0^T int_0^T C(t'' - t') dt' dt'' on an nodes x nodes grid."""
    taus = np.linspace(0.0, tau_sc, nodes)
    fwd, bwd = correlation_superop(model, rho, q, taus)
    lag_vals = np.concatenate([bwd[:0:-1], fwd])  # index nodes-1 is lag 0
    i = np.arange(nodes)
    lag = i[None, :] - i[:, None] + nodes - 1  # t''_j - t'_i
    w = trapezoid_weights(nodes, taus[1] - taus[0])
    total = w @ lag_vals[lag] @ w
    return model.coupling_lambda**2 * total


def heisenberg_correlation(model, rho, q, tau):
    """Closed-system C(q, tau) = Tr[n(q) rho U^dag n(-q) U], U = expm(-iH tau)."""
    h = np.diag(model.energies).astype(complex)
    u = scipy.linalg.expm(-1j * h * tau)
    return np.trace(model.n(q) @ rho @ u.conj().T @ model.n(-q) @ u)


def poisson(eta, n):
    return math.exp(-eta) * eta**n / math.factorial(n)
