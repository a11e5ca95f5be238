import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from attoscatter import timescales as ts
from attoscatter.core import UNITS


def test_ia_time():
    assert ts.scattering_time_ia(1.0, 1.0) == 1.0
    assert ts.scattering_time_ia(2.0, 3.0) == pytest.approx(ts.scattering_time_ia(1.0, 3.0) / 2)
    with pytest.raises(ValueError):
        ts.scattering_time_ia(0.0, 1.0)


def test_ia_time_for_proton_well():
    # 0.2 eV well: zero-point kinetic energy 0.05 eV, v0 = sqrt(omega/2m)
    v0 = ts.oscillator_rms_velocity(0.2)
    assert v0 == pytest.approx(math.sqrt(0.1 * UNITS.eV_J / UNITS.proton_mass_kg) * 1e10, rel=1e-12)
    tau = ts.scattering_time_ia(100.0, v0)
    assert tau == pytest.approx(3.2297e-16, rel=1e-4)
    assert 100 <= UNITS.s_to_as(tau) <= 1000


def test_rms_velocity_temperature():
    cold = ts.oscillator_rms_velocity(0.2)
    hot = ts.oscillator_rms_velocity(0.2, beta=0.1)
    # coth(0.01) ~ 100
    assert hot / cold == pytest.approx(math.sqrt(1 / math.tanh(0.01)), rel=1e-12)


def test_width_time():
    assert ts.scattering_time_width(10.0) == pytest.approx(6.582119569e-17, rel=1e-10)
    assert ts.scattering_time_width(UNITS.hbar_eV_s) == pytest.approx(1.0, rel=1e-15)
    assert ts.scattering_time_width(5.0) == pytest.approx(2 * ts.scattering_time_width(10.0))


def test_margolus_levitin():
    assert ts.margolus_levitin(10.0) == pytest.approx(1.0339169e-16, rel=1e-7)
    assert ts.margolus_levitin(20.0) == pytest.approx(ts.margolus_levitin(10.0) / 2)
    assert ts.margolus_levitin(1e30) < 1e-44


def test_transit_time():
    v = math.sqrt(2 * 10 * UNITS.eV_J / UNITS.neutron_mass_kg)
    assert ts.transit_time(10.0, 1e-5) == pytest.approx(1e-15 / v, rel=1e-12)
    assert ts.transit_time(40.0, 1e-5) == pytest.approx(ts.transit_time(10.0, 1e-5) / 2)
    with pytest.raises(ValueError):
        ts.transit_time(10.0, 0.0)
    # v/c stays below 1e-3 for eV neutrons
    assert ts.neutron_speed(100.0) / UNITS.c_m_s < 1e-3


def test_causal_radius():
    assert ts.causal_radius(1e-18) == pytest.approx(2.99792458, rel=1e-9)
    assert ts.causal_radius(2e-18) == pytest.approx(2 * ts.causal_radius(1e-18))


def test_recoil_energy():
    # hbar^2 q^2 / 2 m_p at 100 1/A
    assert ts.recoil_energy(100.0) == pytest.approx(20.7498, rel=1e-5)


def test_estimate_all_ordering():
    kin = ts.KinematicsInput(q=100.0, v0=ts.oscillator_rms_velocity(0.2), deltaE=10.0,
                             Es=ts.recoil_energy(100.0), E0=10.0, range=1e-5)
    est = ts.estimate_all(kin, tau_sc=3e-16)
    assert est["tau_act"] < est["t_orthogonal"] <= est["tau_width"]
    assert est["tau_q_v0"] == pytest.approx(3e-16 * 100.0 * kin.v0)


@given(st.floats(1e-3, 1e3))
def test_dimensional_round_trip(e):
    t = ts.scattering_time_width(e)
    assert UNITS.inv_s_to_ev(1.0 / t) == pytest.approx(e, rel=1e-12)
    assert UNITS.natural_to_as(UNITS.as_to_natural(UNITS.s_to_as(t))) == pytest.approx(
        UNITS.s_to_as(t), rel=1e-12)
