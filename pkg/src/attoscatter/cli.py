"""
Config-driven batch front end.

    attoscatter run <config> [--out-dir DIR] [--threads N] [--tolerance-report]
    attoscatter timescales <config> [--out-dir DIR]
    attoscatter limits <config>
    attoscatter validate <config>

<config> is an INI file with sections [model], [state], [sweep], [outputs]
and optional [spectrum], [timescales]; ``demo_anomaly`` names the bundled
demo.  Units at this boundary: eV, Angstrom, attoseconds.  Unit-carrying keys
spell their unit as a suffix (``tau_sc_as``, ``q_invA``, ``K_eV``).
"""
from __future__ import annotations

import argparse
import configparser
import csv
import datetime as _dt
import hashlib
import io
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .core import UNITS, DensityMatrix
from .models import ModelSystem, OscillatorSpec, build_custom, build_oscillator, thermal_state
from .scattering import (diagonal_limit_rate, dynamic_structure_factor, intermediate_function,
                         rate_closed_system, rate_decohered)
from . import timescales as ts

CSV_SCHEMA_VERSION = 1
HEADERS = {
    "anomaly": ["K", "tau_sc_as", "q_invA", "rate", "rate_k0", "ratio"],
    "rates": ["q_invA", "tau_sc_as", "K", "rate", "rate_imag", "rate_k0", "w_exact"],
    "sqw": ["q_invA", "K", "omega_eV", "S"],
    "correlation": ["q_invA", "K", "t_as", "F_re", "F_im"],
    "timescales": ["quantity", "value", "unit"],
}
REQUIRED_SECTIONS = ("model", "state", "sweep", "outputs")
LIMIT_A_TOL = 1e-12
LIMIT_B_TOL = 1e-6


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

# key -> (section, unit description); a key sharing the stem with another
# suffix, or lacking it, is a unit violation
_UNIT_KEYS = {
    "model": {"omega_eV": "eV", "energies_eV": "eV"},
    "state": {"temperature_K": "kelvin", "beta_per_eV": "1/eV"},
    "sweep": {"q_invA": "1/Angstrom", "tau_sc_as": "attoseconds", "K_eV": "eV"},
    "spectrum": {"dt_as": "attoseconds", "sigma_as": "attoseconds", "K_eV": "eV"},
    "timescales": {"q_invA": "1/Angstrom", "v0_A_per_s": "Angstrom/s", "deltaE_eV": "eV",
                   "Es_eV": "eV", "E0_eV": "eV", "range_A": "Angstrom"},
}
_PLAIN_KEYS = {
    "model": {"type", "mass", "dim", "x_coupling", "lambda", "lindblad_values"},
    "state": {"type", "populations"},
    "sweep": set(),
    "spectrum": {"n_t", "window"},
    "timescales": set(),
    "outputs": {"series"},
}
_SERIES = ("anomaly", "rates", "sqw", "correlation", "timescales")


@dataclass
class SweepConfig:
    model: object                # OscillatorSpec or dict with explicit matrices
    state: dict
    q_values: list
    tau_sc_values: list          # attoseconds
    k_values: list               # eV
    outputs: list
    spectrum: dict = field(default_factory=dict)
    kinematics: dict = field(default_factory=dict)
    coupling_lambda: float = 1.0
    defaults: list = field(default_factory=list)
    source: str = ""
    name: str = ""

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.source.encode()).hexdigest()


_GRID = re.compile(r"(lin|log)space\(([^)]*)\)")


def _split(text):
    return re.findall(r"(?:lin|log)space\([^)]*\)|[^,\s][^,]*", text)


def _floats(text, where):
    out = []
    for tok in _split(text):
        tok = tok.strip()
        m = _GRID.fullmatch(tok)
        try:
            if m:
                a, b, n = (s.strip() for s in m.group(2).split(","))
                fn = np.linspace if m.group(1) == "lin" else np.logspace
                out.extend(float(v) for v in fn(float(a), float(b), int(n)))
            else:
                out.append(float(tok))
        except ValueError:
            raise ConfigError(f"{where}: cannot parse {tok!r} as a number or grid") from None
    if not out:
        raise ConfigError(f"{where}: empty list")
    if not all(math.isfinite(v) for v in out):
        raise ConfigError(f"{where}: values must be finite")
    return out


def _matrix(text, where):
    try:
        rows = [[complex(e.replace(" ", "")) for e in row.split(",")] for row in text.split(";")]
        return np.array(rows, dtype=complex)
    except ValueError:
        raise ConfigError(f"{where}: cannot parse matrix {text!r}") from None


def _check_keys(cp):
    for sec in cp.sections():
        units = _UNIT_KEYS.get(sec, {})
        plain = _PLAIN_KEYS.get(sec)
        if plain is None:
            raise ConfigError(f"unknown section [{sec}]")
        for key in cp[sec]:
            if key in units or key in plain or (sec == "model" and key.startswith("n[")):
                continue
            stem = key.split("_")[0]
            for good, unit in units.items():
                if good.split("_")[0] == stem:
                    raise ConfigError(
                        f"[{sec}] {key}: unit violation, expected {good} in {unit}"
                    )
            raise ConfigError(f"[{sec}] unknown key {key!r}")


def _get(cp, sec, key, defaults, default=None, cast=str):
    if key in cp[sec]:
        return cast(cp[sec][key])
    if default is None:
        raise ConfigError(f"missing key {key!r} in section [{sec}]")
    defaults.append(f"[{sec}] {key} = {default}")
    return default


def _resolve(path) -> tuple:
    p = Path(path)
    if p.exists():
        return p.read_text(), p.stem
    name = str(path)
    res = resources.files("attoscatter") / "configs" / f"{name}.ini"
    if res.is_file():
        return res.read_text(), name
    raise ConfigError(f"config file not found: {path}")


def parse_config(path) -> SweepConfig:
    text, name = _resolve(path)
    return parse_config_text(text, name)


def parse_config_text(text: str, name: str = "") -> SweepConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    missing = [s for s in REQUIRED_SECTIONS if not cp.has_section(s)]
    if missing:
        raise ConfigError("missing required sections: " + ", ".join(f"[{s}]" for s in missing))
    _check_keys(cp)
    defaults = []

    m = cp["model"]
    mtype = _get(cp, "model", "type", defaults, "oscillator")
    lam = _get(cp, "model", "lambda", defaults, 1.0, float)
    if mtype == "oscillator":
        mass = _get(cp, "model", "mass", defaults, "proton")
        if mass == "proton":
            mass_kg = UNITS.proton_mass_kg
        elif mass == "neutron":
            mass_kg = UNITS.neutron_mass_kg
        else:
            mass_kg = float(mass)
        try:
            model = OscillatorSpec(
                omega=_get(cp, "model", "omega_eV", defaults, cast=float),
                mass=UNITS.mass_to_natural(mass_kg),
                dim=_get(cp, "model", "dim", defaults, 40, int),
                x_coupling=_get(cp, "model", "x_coupling", defaults, "index"),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"[model] {exc}") from None
    elif mtype == "matrices":
        mats = {}
        for key in m:
            if key.startswith("n["):
                q = float(key[2:-1])
                mats[q] = _matrix(m[key], f"[model] {key}")
        if not mats:
            raise ConfigError("missing key 'n[<q>]' in section [model]")
        model = {
            "energies": _floats(_get(cp, "model", "energies_eV", defaults), "[model] energies_eV"),
            "lindblad_values": _floats(_get(cp, "model", "lindblad_values", defaults),
                                       "[model] lindblad_values"),
            "n": mats,
        }
    else:
        raise ConfigError(f"[model] type must be 'oscillator' or 'matrices', got {mtype!r}")

    stype = _get(cp, "state", "type", defaults, "thermal")
    if stype == "thermal":
        if "beta_per_eV" in cp["state"]:
            beta = float(cp["state"]["beta_per_eV"])
        else:
            beta = UNITS.temperature_to_beta(_get(cp, "state", "temperature_K", defaults, 0.0, float))
        if beta < 0:
            raise ConfigError("[state] inverse temperature must be >= 0")
        state = {"type": "thermal", "beta": beta}
    elif stype == "diagonal":
        state = {"type": "diagonal",
                 "populations": _floats(_get(cp, "state", "populations", defaults), "[state] populations")}
    else:
        raise ConfigError(f"[state] type must be 'thermal' or 'diagonal', got {stype!r}")

    q_values = _floats(_get(cp, "sweep", "q_invA", defaults), "[sweep] q_invA")
    taus = _floats(_get(cp, "sweep", "tau_sc_as", defaults), "[sweep] tau_sc_as")
    ks = _floats(_get(cp, "sweep", "K_eV", defaults), "[sweep] K_eV")
    if any(k < 0 for k in ks):
        raise ConfigError("[sweep] K_eV: negative K rejected; the decoherence constant K is real and K>0")
    if any(t <= 0 for t in taus):
        raise ConfigError("[sweep] tau_sc_as: scattering times must be > 0 attoseconds")
    ks = sorted(set(ks))

    series = [s.strip() for s in _get(cp, "outputs", "series", defaults).split(",") if s.strip()]
    bad = [s for s in series if s not in _SERIES]
    if bad or not series:
        raise ConfigError(f"[outputs] series: unknown or empty {bad}; choose from {', '.join(_SERIES)}")

    spectrum = {}
    if "sqw" in series or "correlation" in series:
        if not cp.has_section("spectrum"):
            cp.add_section("spectrum")
        spectrum = {
            "dt_as": _get(cp, "spectrum", "dt_as", defaults, 100.0, float),
            "n_t": _get(cp, "spectrum", "n_t", defaults, 512, int),
            "K_eV": _floats(_get(cp, "spectrum", "K_eV", defaults, "0"), "[spectrum] K_eV"),
            "window": _get(cp, "spectrum", "window", defaults, "none"),
        }
        if spectrum["window"] == "gaussian":
            spectrum["sigma_as"] = _get(cp, "spectrum", "sigma_as", defaults, cast=float)
        elif spectrum["window"] != "none":
            raise ConfigError("[spectrum] window must be 'none' or 'gaussian'")
        if any(k < 0 for k in spectrum["K_eV"]):
            raise ConfigError("[spectrum] K_eV: negative K rejected; the decoherence constant K is real and K>0")

    if not cp.has_section("timescales"):
        cp.add_section("timescales")
    q_ia = _get(cp, "timescales", "q_invA", defaults, 100.0, float)
    kin = {
        "q": q_ia,
        "deltaE": _get(cp, "timescales", "deltaE_eV", defaults, 10.0, float),
        "E0": _get(cp, "timescales", "E0_eV", defaults, 10.0, float),
        "range": _get(cp, "timescales", "range_A", defaults, 1e-5, float),
    }
    if "Es_eV" in cp["timescales"]:
        kin["Es"] = float(cp["timescales"]["Es_eV"])
    else:
        kin["Es"] = ts.recoil_energy(q_ia)
        defaults.append(f"[timescales] Es_eV = recoil energy at q ({kin['Es']:.6g})")
    if "v0_A_per_s" in cp["timescales"]:
        kin["v0"] = float(cp["timescales"]["v0_A_per_s"])
    elif isinstance(model, OscillatorSpec):
        mass_kg = model.mass / UNITS.mass_to_natural(1.0)
        kin["v0"] = ts.oscillator_rms_velocity(model.omega, mass_kg, state.get("beta", math.inf))
        defaults.append(f"[timescales] v0_A_per_s = oscillator rms velocity ({kin['v0']:.6g})")
    else:
        raise ConfigError("missing key 'v0_A_per_s' in section [timescales]")
    for k, v in kin.items():
        if not v > 0:
            raise ConfigError(f"[timescales] {k} must be > 0")

    return SweepConfig(model, state, q_values, taus, ks, series, spectrum, kin, lam,
                       defaults, text, name)


def build_model(cfg: SweepConfig) -> ModelSystem:
    qs = sorted(set(cfg.q_values))
    if isinstance(cfg.model, OscillatorSpec):
        return build_oscillator(cfg.model, qs, 0.0, cfg.coupling_lambda)
    mats = dict(cfg.model["n"])
    for q in list(mats):
        if -q not in mats:
            mats[-q] = mats[q].conj().T
    missing = [q for q in qs if q not in mats]
    if missing:
        raise ConfigError(f"[model] no n[q] matrix for sweep q values {missing}")
    return build_custom(cfg.model["energies"], cfg.model["lindblad_values"], 0.0, mats,
                        cfg.coupling_lambda)


def build_state(cfg: SweepConfig, model: ModelSystem) -> DensityMatrix:
    if cfg.state["type"] == "thermal":
        return thermal_state(model, cfg.state["beta"])
    p = np.asarray(cfg.state["populations"], dtype=float)
    if p.size != model.dim:
        raise ConfigError(f"[state] populations has {p.size} entries, model dim is {model.dim}")
    return DensityMatrix(np.diag(p))


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

@dataclass
class RunManifest:
    config_hash: str
    tool_version: str
    started: str
    finished: str
    outputs: list
    out_dir: Path
    defaults: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def _write_csv(path: Path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    path.write_text(buf.getvalue(), newline="")


def _now():
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _min_dxi2(model):
    x = np.unique(model.lindblad_values)
    return float(np.min(np.diff(x)) ** 2) if x.size > 1 else math.inf


def _rate_point(model, rho, q, tau_as, ks):
    """All K for one (q, tau_sc); returns rows, failures and limit residuals."""
    tau = UNITS.as_to_natural(tau_as)
    rows, fails = [], []
    try:
        free = rate_decohered(model.with_k(0.0), rho, q, tau)
        closed = rate_closed_system(model, rho, q, tau)
    except Exception as exc:  # surfaced with the grid point
        return [], [f"q_invA={q:g} tau_sc_as={tau_as:g} K=0: {exc}"], {}
    for k in ks:
        try:
            res = free if k == 0 else rate_decohered(model.with_k(k), rho, q, tau)
            if not math.isfinite(res.anomaly_ratio):
                raise ValueError("decoherence-free rate vanishes; anomaly ratio undefined")
            rows.append((k, tau_as, q, res))
        except Exception as exc:
            fails.append(f"q_invA={q:g} tau_sc_as={tau_as:g} K={k:g}: {exc}")
    checks = {"limit_a": abs(free.rate - closed) / abs(closed) if closed else math.inf,
              "tau_as": tau_as, "q": q}
    kmax = max(ks)
    if kmax * _min_dxi2(model) * tau >= 1e6:
        diag = diagonal_limit_rate(model, rho, q, tau)
        top = [r for r in rows if r[0] == kmax]
        if top and diag:
            checks["limit_b"] = abs(top[0][3].rate - diag) / abs(diag)
            checks["limit_b_k"] = kmax
    return rows, fails, checks


def run_sweep(cfg: SweepConfig, out_dir=".", threads: int = 1) -> RunManifest:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = _now()
    model = build_model(cfg)
    rho = build_state(cfg, model)
    written, failures = [], []
    diag = {"limit_a": [], "limit_b": [], "sum_rule": [], "w_imag_ok": True}

    grid = [(q, t) for q in cfg.q_values for t in cfg.tau_sc_values]
    need_rates = "anomaly" in cfg.outputs or "rates" in cfg.outputs
    results = []
    if need_rates:
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            results = list(pool.map(lambda g: _rate_point(model, rho, g[0], g[1], cfg.k_values), grid))
    anomaly_rows, rate_rows = [], []
    for rows, fails, checks in results:
        failures.extend(fails)
        if "limit_a" in checks:
            diag["limit_a"].append(checks["limit_a"])
        if "limit_b" in checks:
            diag["limit_b"].append(checks["limit_b"])
        for k, tau_as, q, r in rows:
            anomaly_rows.append((k, tau_as, q, r.rate, r.rate_decoherence_free, r.anomaly_ratio))
            rate_rows.append((q, tau_as, k, r.rate, r.rate_imag, r.rate_decoherence_free, r.w_total))
    diag["anomaly"] = anomaly_rows
    if isinstance(cfg.model, OscillatorSpec):
        v0 = cfg.kinematics["v0"]
        diag["tau_q_v0"] = [UNITS.as_to_s(t) * q * v0 for q, t in grid]

    if "anomaly" in cfg.outputs:
        _write_csv(out / "anomaly.csv", HEADERS["anomaly"], anomaly_rows)
        written.append(out / "anomaly.csv")
    if "rates" in cfg.outputs:
        _write_csv(out / "rates.csv", HEADERS["rates"], rate_rows)
        written.append(out / "rates.csv")

    if "sqw" in cfg.outputs or "correlation" in cfg.outputs:
        sp = cfg.spectrum
        taus = np.arange(sp["n_t"]) * UNITS.as_to_natural(sp["dt_as"])
        sigma = UNITS.as_to_natural(sp["sigma_as"]) if sp["window"] == "gaussian" else None
        window = "gaussian" if sigma else None
        sq_rows, c_rows = [], []
        for q in cfg.q_values:
            for k in sp["K_eV"]:
                try:
                    series = intermediate_function(model.with_k(k), rho, q, taus)
                    spec = dynamic_structure_factor(series, window, sigma)
                except Exception as exc:
                    failures.append(f"q_invA={q:g} K={k:g} spectrum: {exc}")
                    continue
                f0 = series.values[0].real
                diag["sum_rule"].append(abs(spec.total_weight() - f0) / abs(f0))
                sq_rows.extend((q, k, w, s) for w, s in zip(spec.omegas, spec.s_values))
                c_rows.extend((q, k, UNITS.natural_to_as(t), v.real, v.imag)
                              for t, v in zip(series.taus, series.values))
        if "sqw" in cfg.outputs:
            _write_csv(out / "sqw.csv", HEADERS["sqw"], sq_rows)
            written.append(out / "sqw.csv")
        if "correlation" in cfg.outputs:
            _write_csv(out / "correlation.csv", HEADERS["correlation"], c_rows)
            written.append(out / "correlation.csv")

    if "timescales" in cfg.outputs:
        written.append(write_timescales(cfg, out))

    manifest = RunManifest(cfg.config_hash, __version__, started, "", written, out,
                           list(cfg.defaults), failures, diag)
    manifest.finished = _now()
    _write_manifest(manifest)
    return manifest


def timescale_table(cfg: SweepConfig):
    k = cfg.kinematics
    kin = ts.KinematicsInput(q=k["q"], v0=k["v0"], deltaE=k["deltaE"], Es=k["Es"],
                             E0=k["E0"], range=k["range"])
    est = ts.estimate_all(kin)
    return [
        ("q_ia", kin.q, "1/Angstrom"),
        ("v0", kin.v0, "Angstrom/s"),
        ("tau_ia", est["tau_ia"], "s"),
        ("tau_ia_as", UNITS.s_to_as(est["tau_ia"]), "as"),
        ("deltaE", kin.deltaE, "eV"),
        ("tau_width", est["tau_width"], "s"),
        ("Es", kin.Es, "eV"),
        ("t_orthogonal", est["t_orthogonal"], "s"),
        ("E0", kin.E0, "eV"),
        ("range", kin.range, "Angstrom"),
        ("tau_act", est["tau_act"], "s"),
        ("causal_radius", est["causal_radius"], "Angstrom"),
    ]


def write_timescales(cfg: SweepConfig, out: Path) -> Path:
    path = Path(out) / "timescales.csv"
    _write_csv(path, HEADERS["timescales"], timescale_table(cfg))
    return path


def _write_manifest(m: RunManifest):
    lines = [
        f"tool_version = {m.tool_version}",
        f"csv_schema = {CSV_SCHEMA_VERSION}",
        f"config_sha256 = {m.config_hash}",
        f"started = {m.started}",
        f"finished = {m.finished}",
        f"status = {'ok' if m.ok else 'failed'}",
    ]
    lines += [f"output = {p.name}" for p in m.outputs]
    lines += [f"default = {d}" for d in m.defaults]
    lines += [f"failure = {f}" for f in m.failures]
    (m.out_dir / "manifest.txt").write_text("\n".join(lines) + "\n")


def summarize(manifest: RunManifest, tolerance_report: bool = False) -> str:
    d = manifest.diagnostics
    lines = [f"attoscatter {manifest.tool_version}  config {manifest.config_hash[:12]}"]
    rows = d.get("anomaly", [])
    if rows:
        lo = min(rows, key=lambda r: r[5])
        hi = max(rows, key=lambda r: r[5])
        lines.append(f"min ratio {lo[5]:.6f} at K={lo[0]:.4g} eV (q={lo[2]:g} 1/A, tau_sc={lo[1]:g} as)")
        lines.append(f"max ratio {hi[5]:.6f}")
        per = {}
        for k, tau_as, q, _, _, ratio in rows:
            key = (q, tau_as)
            if key not in per or ratio < per[key][1]:
                per[key] = (k, ratio)
        lines.append("per (q, tau_sc): min ratio, K at minimum, K*tau_sc")
        for (q, tau_as), (k, ratio) in per.items():
            lines.append(f"  q={q:g} tau_sc={tau_as:g} as: {ratio:.6f}  K={k:.4g} eV  "
                         f"K*tau={k * UNITS.as_to_natural(tau_as):.4g}")
    if d.get("tau_q_v0"):
        tq = d["tau_q_v0"]
        lines.append(f"tau_sc*q*v0 over grid: {min(tq):.4g} .. {max(tq):.4g}")
    if d.get("limit_a"):
        res = max(d["limit_a"])
        flag = "OK" if res <= LIMIT_A_TOL else "FAIL"
        lines.append(f"limit A residual (K=0 vs closed system): {res:.3e} <= {LIMIT_A_TOL:g} {flag}")
    if d.get("limit_b"):
        res = max(d["limit_b"])
        flag = "OK" if res < LIMIT_B_TOL else "FAIL"
        lines.append(f"limit B residual (K_max vs diagonal limit): {res:.3e} < {LIMIT_B_TOL:g} {flag}")
    if tolerance_report and d.get("sum_rule"):
        lines.append(f"sum rule residual max: {max(d['sum_rule']):.3e}")
    if manifest.failures:
        lines.append(f"{len(manifest.failures)} grid point(s) failed:")
        lines += ["  " + f for f in manifest.failures]
    return "\n".join(lines)


def limit_checks(cfg: SweepConfig):
    """Limiting cases on every (q, tau_sc) of the sweep.

    A: rate at K=0 against the closed-system spectral sum.
    B: rate at K = 1e8/(min dxi^2 tau_sc) against the diagonal-only limit.
    """
    model = build_model(cfg)
    rho = build_state(cfg, model)
    dxi2 = _min_dxi2(model)
    out = []
    for q in cfg.q_values:
        for tau_as in cfg.tau_sc_values:
            tau = UNITS.as_to_natural(tau_as)
            a = rate_decohered(model.with_k(0.0), rho, q, tau).rate
            ref = rate_closed_system(model, rho, q, tau)
            k_big = 1e8 / (dxi2 * tau)
            b = rate_decohered(model.with_k(k_big), rho, q, tau).rate
            lim = diagonal_limit_rate(model, rho, q, tau)
            out.append({"q": q, "tau_as": tau_as, "limit_a": abs(a - ref) / abs(ref),
                        "limit_b": abs(b - lim) / abs(lim), "K_b": k_big})
    return out


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="attoscatter", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run the configured sweep")
    r.add_argument("config")
    r.add_argument("--out-dir", default=".")
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--tolerance-report", action="store_true")
    t = sub.add_parser("timescales", help="tabulate the timescale estimates")
    t.add_argument("config")
    t.add_argument("--out-dir", default=None)
    lim = sub.add_parser("limits", help="check the K->0 and K->inf limits")
    lim.add_argument("config")
    v = sub.add_parser("validate", help="parse the config and build the model")
    v.add_argument("config")
    return p


def main(argv: Optional[list] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        if args.cmd == "run":
            manifest = run_sweep(cfg, args.out_dir, args.threads)
            print(summarize(manifest, args.tolerance_report))
            return 0 if manifest.ok else 1
        if args.cmd == "timescales":
            rows = timescale_table(cfg)
            for name, val, unit in rows:
                print(f"{name:>14s}  {val:.6g} {unit}")
            if args.out_dir:
                Path(args.out_dir).mkdir(parents=True, exist_ok=True)
                write_timescales(cfg, Path(args.out_dir))
            return 0
        if args.cmd == "limits":
            ok = True
            for c in limit_checks(cfg):
                a_ok, b_ok = c["limit_a"] <= LIMIT_A_TOL, c["limit_b"] < LIMIT_B_TOL
                ok &= a_ok and b_ok
                print(f"q={c['q']:g} 1/A tau_sc={c['tau_as']:g} as  "
                      f"limit A {c['limit_a']:.3e} {'OK' if a_ok else 'FAIL'}  "
                      f"limit B (K={c['K_b']:.3g} eV) {c['limit_b']:.3e} {'OK' if b_ok else 'FAIL'}")
            return 0 if ok else 1
        if args.cmd == "validate":
            model = build_model(cfg)
            build_state(cfg, model)
            print(f"config {cfg.name or args.config}: ok (model dim {model.dim}, "
                  f"{len(cfg.q_values)} q x {len(cfg.tau_sc_values)} tau_sc x {len(cfg.k_values)} K)")
            for d in cfg.defaults:
                print(f"  default {d}")
            return 0
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
