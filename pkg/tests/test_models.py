import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attoscatter.core import InvariantError
from attoscatter.models import (OscillatorSpec, TruncationError, build_custom, build_oscillator,
                                position_operator, thermal_state)


def _spec(dim=40, omega=1.0, mass=1.0, **kw):
    return OscillatorSpec(omega=omega, mass=mass, dim=dim, **kw)


def q_for(spec, eta):
    """Momentum transfer with q^2/(2 m omega) = eta."""
    return math.sqrt(2 * spec.mass * spec.omega * eta)


@pytest.mark.parametrize("kw", [dict(omega=0), dict(mass=-1), dict(dim=1), dict(x_coupling="position")])
def test_spec_validation(kw):
    args = dict(omega=1.0, mass=1.0, dim=10)
    args.update(kw)
    with pytest.raises(ValueError):
        OscillatorSpec(**args)


def test_position_operator_ladder():
    x = position_operator(_spec(dim=5, omega=2.0, mass=0.5))
    # sqrt(n) / sqrt(2 m omega) with 2 m omega = 2
    assert x[0, 1] == pytest.approx(math.sqrt(0.5))
    assert x[3, 4] == pytest.approx(math.sqrt(2.0))
    assert np.allclose(x, x.T)


def test_zero_q_is_identity():
    model = build_oscillator(_spec(), [0.0])
    assert np.array_equal(model.n(0.0), np.eye(40))


def test_ground_state_form_factor():
    spec = _spec(dim=30)
    q = q_for(spec, 1.0)
    model = build_oscillator(spec, [q])
    # <0|exp(-iqX)|0> = exp(-q^2/(4 m omega)) from the Gaussian integral
    assert model.n(q)[0, 0] == pytest.approx(math.exp(-0.5), abs=1e-6)


def test_displaced_ground_state_is_poisson():
    spec = _spec(dim=40)
    q = q_for(spec, 1.5)
    col = build_oscillator(spec, [q]).n(q)[:, 0]
    ref = [math.exp(-1.5) * 1.5**n / math.factorial(n) for n in range(12)]
    assert np.allclose(np.abs(col[:12]) ** 2, ref, atol=1e-10)


@pytest.mark.parametrize("eta", [0.25, 1.0, 2.0])
def test_unitarity(eta):
    spec = _spec(dim=40)
    q = q_for(spec, eta)
    n = build_oscillator(spec, [q]).n(q)
    assert np.max(np.abs(n @ n.conj().T - np.eye(40))) < 1e-8


def test_truncation_guard():
    spec = _spec(dim=8)
    with pytest.raises(TruncationError, match="increase dim"):
        build_oscillator(spec, [q_for(spec, 3.0)])


@settings(max_examples=25, deadline=None)
@given(omega=st.floats(0.1, 5), mass=st.floats(0.5, 50), eta=st.floats(0.0, 2.0),
       coupling=st.sampled_from(["index", "energy"]))
def test_oscillator_invariants(omega, mass, eta, coupling):
    spec = OscillatorSpec(omega, mass, 40, coupling)
    q = q_for(spec, eta)
    model = build_oscillator(spec, [q])
    assert np.max(np.abs(model.n(-q) - model.n(q).conj().T)) < 1e-10
    gaps = np.diff(model.energies)
    assert np.allclose(gaps, omega, rtol=1e-14, atol=0)
    expected = np.arange(40) if coupling == "index" else model.energies
    assert np.array_equal(model.lindblad_values, expected)


def test_build_custom():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    model = build_custom([0, 0], [0, 1], 0.5, {1.0: sx, -1.0: sx})
    assert model.dim == 2 and model.decoherence_k == 0.5
    with pytest.raises(InvariantError, match="equal length"):
        build_custom([0, 0], [0, 1, 2], 0.5, {1.0: sx})
    with pytest.raises(InvariantError, match="shape"):
        build_custom([0, 0, 1], [0, 1, 2], 0.5, {1.0: sx})
    bad = np.array([[0, 1], [0.5, 0]], dtype=complex)
    with pytest.raises(InvariantError, match=r"n†\(q\)=n\(-q\)"):
        build_custom([0, 0], [0, 1], 0.5, {1.0: bad, -1.0: bad})
    with pytest.raises(InvariantError, match="K must be real"):
        build_custom([0, 0], [0, 1], -1.0, {1.0: sx})
    with pytest.raises(InvariantError, match="shape"):
        build_custom([0, 0], [0, 1], 0.0, {1.0: np.eye(3)})


def test_missing_q_lookup():
    model = build_oscillator(_spec(dim=10), [0.5])
    assert np.max(np.abs(model.n(-0.5) - model.n(0.5).conj().T)) < 1e-12
    with pytest.raises(KeyError):
        model.n(0.7)


def test_with_k_is_a_copy():
    model = build_oscillator(_spec(dim=10), [0.5])
    other = model.with_k(3.0)
    assert model.decoherence_k == 0.0 and other.decoherence_k == 3.0
    assert other.n_of_q is model.n_of_q or other.n_of_q == model.n_of_q


def test_thermal_state():
    model = build_custom([0.0, 1.0, 2.0], [0, 1, 2], 0.0, {1.0: np.eye(3)})
    rho = thermal_state(model, 1.0).entries
    ref = np.array([1, math.exp(-1), math.exp(-2)])
    assert np.allclose(np.diag(rho), ref / ref.sum(), atol=1e-15)
    assert np.trace(rho) == pytest.approx(1.0)
    assert np.allclose(thermal_state(model, 0.0).entries, np.eye(3) / 3)
    cold = thermal_state(model, 1e3).entries
    assert np.max(np.abs(cold - np.diag([1, 0, 0]))) < 1e-10
    assert np.array_equal(thermal_state(model, math.inf).entries, np.diag([1.0, 0, 0]))
    with pytest.raises(ValueError):
        thermal_state(model, -1.0)


@given(beta=st.floats(0, 1e4), shift=st.floats(-1e3, 1e3))
def test_thermal_state_is_always_valid(beta, shift):
    model = build_custom(np.array([0.0, 0.3, 0.7, 5.0]) + shift, [0, 1, 2, 3], 0.0, {1.0: np.eye(4)})
    rho = thermal_state(model, beta).entries
    assert abs(np.trace(rho) - 1) < 1e-10
    assert np.all(np.diag(rho) >= 0)
