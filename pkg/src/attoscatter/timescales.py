"""
Order-of-magnitude time and length scales of an eV neutron-proton collision.

Inputs are in eV, Angstrom and seconds; every function returns seconds
except :func:`causal_radius` (Angstrom) and :func:`oscillator_rms_velocity`
(Angstrom per second).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import UNITS


def _positive(**kw):
    for name, val in kw.items():
        if not (val > 0 and math.isfinite(val)):
            raise ValueError(f"{name} must be finite and > 0, got {val}")


@dataclass(frozen=True)
class KinematicsInput:
    q: float            # momentum transfer, 1/Angstrom
    v0: float           # rms nuclear velocity, Angstrom/s
    deltaE: float       # width of S(q, w), eV
    Es: float           # mean energy above the ground state, eV
    E0: float           # incident neutron energy, eV
    range: float = 1e-5  # interaction range, Angstrom


def scattering_time_ia(q: float, v0: float) -> float:
    """Impulse-approximation scattering time 1/(q v0)."""
    _positive(q=q, v0=v0)
    return 1.0 / (q * v0)


def scattering_time_width(deltaE: float) -> float:
    _positive(deltaE=deltaE)
    return UNITS.hbar_eV_s / deltaE


def margolus_levitin(Es: float) -> float:
    """Minimum time pi*hbar/(2 Es) to reach an orthogonal state."""
    _positive(Es=Es)
    return math.pi * UNITS.hbar_eV_s / (2.0 * Es)


def neutron_speed(E0: float) -> float:
    """Nonrelativistic neutron speed in m/s."""
    _positive(E0=E0)
    return math.sqrt(2.0 * E0 * UNITS.eV_J / UNITS.neutron_mass_kg)


def transit_time(E0: float, range: float) -> float:
    """Classical time for a neutron of energy E0 to cross `range` Angstrom."""
    _positive(E0=E0, range=range)
    return UNITS.angstrom_to_m(range) / neutron_speed(E0)


def causal_radius(tau_act: float) -> float:
    _positive(tau_act=tau_act)
    return UNITS.m_to_angstrom(UNITS.c_m_s * tau_act)


def recoil_energy(q: float, mass_kg: float = UNITS.proton_mass_kg) -> float:
    """hbar^2 q^2 / 2m in eV for q in 1/Angstrom."""
    _positive(q=q, mass_kg=mass_kg)
    return q * q / (2.0 * UNITS.mass_to_natural(mass_kg))


def oscillator_rms_velocity(omega: float, mass_kg: float = UNITS.proton_mass_kg,
                            beta: float = math.inf) -> float:
    """sqrt(<v^2>) of a 1-D oscillator of quantum `omega` eV at inverse temperature `beta` (1/eV).

    <v^2> = (omega / 2m) coth(beta omega / 2).
    """
    _positive(omega=omega, mass_kg=mass_kg)
    coth = 1.0 if math.isinf(beta) else 1.0 / math.tanh(0.5 * beta * omega)
    v2 = omega * UNITS.eV_J / (2.0 * mass_kg) * coth
    return UNITS.m_to_angstrom(math.sqrt(v2))


def estimate_all(kin: KinematicsInput, tau_sc: Optional[float] = None) -> dict:
    """Every estimator evaluated on one set of kinematics, keyed by name.

    If `tau_sc` (seconds) is given, the product tau_sc*q*v0 is included.
    """
    tau_ia = scattering_time_ia(kin.q, kin.v0)
    tau_act = transit_time(kin.E0, kin.range)
    out = {
        "tau_ia": tau_ia,
        "tau_width": scattering_time_width(kin.deltaE),
        "t_orthogonal": margolus_levitin(kin.Es),
        "tau_act": tau_act,
        "causal_radius": causal_radius(tau_act),
    }
    if tau_sc is not None:
        out["tau_q_v0"] = tau_sc * kin.q * kin.v0
    return out
