"""Command-line front end: parameter sweeps emitted as CSV or JSON datasets.

Four subcommands mirror the library layers: ``phase`` (stability diagram),
``response`` (broadened spectra and optical conductivity), ``eft``
(running coupling, renormalized mass, Casimir, jellium, continuum response)
and ``manymode`` (exact multi-mode diagonalization scans).

Every run is deterministic: identical argv + config produce identical bytes.
JSON outputs embed the effective config and can be fed back via --config.

Exit codes: 0 success, 2 config/usage error, 3 domain or pole error,
4 convergence error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .constants import CODATA2018
from .core import (DerivedScales, SystemConfig, UnitsMode, classify_phase,
                   load_config_file)
from .eft import (EftConfig, casimir_energy_density, casimir_pressure,
                  chemical_potential, effective_coupling, eft_chi_aa,
                  jellium, renormalized_mass, rs_minimum)
from .exceptions import (Cavity2degError, ConfigError, ConvergenceError,
                         DegenerateModeError, DomainError, InstabilityError,
                         PoleError, PreconditionError, UnitModeError)
from .io_utils import FLOAT_DIGITS, format_float
from .manymode import (ModeSet, exact_coupling_1d, lowest_mode_scan,
                       normal_modes)
from .response import (BroadenedFrequency, ResponseKind, chi_aa_freq,
                       chi_ea_freq, chi_jj_freq, chi_mixed_freq,
                       dc_conductivity, drude_effective_mass,
                       optical_conductivity, sigma0_dc)

__all__ = ["SweepSpec", "OutputRecord", "cmd_phase", "cmd_response",
           "cmd_eft", "cmd_manymode", "main"]

# documented defaults: mesoscopic sample, micron cavity, desk-scale runtimes
DEFAULT_N = 100_000_000
DEFAULT_AREA = 1e-8        # m^2  -> n_2d = 1e16 m^-2
DEFAULT_GAP = 1e-6         # m

SWEEPABLE = ("gamma", "w", "lambda0", "rs", "ratio", "modes")


@dataclass(frozen=True)
class SweepSpec:
    """Parsed --sweep request: variable, endpoints, count, spacing."""

    variable: str
    start: float
    stop: float
    count: int
    log: bool = False
    overrides: Mapping = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.variable not in SWEEPABLE:
            raise ConfigError(f"unknown sweep variable {self.variable!r}; "
                              f"choose from {', '.join(SWEEPABLE)}")
        if self.count < 2:
            raise ConfigError(f"sweep count must be >= 2, got {self.count}")
        if self.start == self.stop:
            raise ConfigError("sweep start and stop must differ")
        if self.log and (self.start <= 0 or self.stop <= 0):
            raise ConfigError("log spacing requires positive endpoints")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        """Parse ``var=start:stop:count[:log]``."""
        if "=" not in text:
            raise ConfigError(f"--sweep expects var=start:stop:count, got {text!r}")
        var, _, rhs = text.partition("=")
        parts = rhs.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"--sweep expects start:stop:count[:log], got {rhs!r}")
        log = False
        if len(parts) == 4:
            if parts[3] != "log":
                raise ConfigError(f"unknown spacing {parts[3]!r}; only 'log'")
            log = True
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad --sweep numbers: {exc}") from None
        return cls(variable=var.strip(), start=start, stop=stop,
                   count=count, log=log)

    def grid(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class OutputRecord:
    """Uniform dataset envelope for every subcommand."""

    command: str
    config: dict
    params: dict
    columns: tuple
    rows: list
    summary: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        ncol = len(self.columns)
        for row in self.rows:
            if len(row) != ncol:
                raise PreconditionError(
                    f"row width {len(row)} != column count {ncol}")

    @property
    def provenance(self) -> dict:
        payload = json.dumps({"config": self.config, "params": self.params},
                             sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(payload.encode()).hexdigest()[:16]
        return {"library": "cavity2deg", "version": __version__,
                "config_hash": digest}

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "config": self.config,
            "params": self.params,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "summary": self.summary,
            "provenance": self.provenance,
        }
        return json.dumps(body, indent=1) + "\n"

    def to_csv(self, digits: int = FLOAT_DIGITS) -> str:
        prov = self.provenance
        head = [
            f"# command: {self.command}",
            f"# library: {prov['library']} {prov['version']}",
            f"# config_hash: {prov['config_hash']}",
            "# config: " + json.dumps(self.config, sort_keys=True,
                                      separators=(",", ":")),
            "# params: " + json.dumps(self.params, sort_keys=True,
                                      separators=(",", ":")),
        ]
        if self.summary:
            head.append("# summary: " + json.dumps(
                self.summary, sort_keys=True, separators=(",", ":")))
        lines = head + [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(
                format_float(v, digits) if isinstance(v, float) else str(v)
                for v in row))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, digits: int = FLOAT_DIGITS) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv(digits)
        raise ConfigError(f"unknown format {fmt!r}")


def _default_config() -> SystemConfig:
    return SystemConfig.si(n_electrons=DEFAULT_N, area=DEFAULT_AREA,
                           mirror_gap=DEFAULT_GAP)


def _omega_tilde_scale(scales: DerivedScales) -> float:
    """Dressed frequency in whichever units the config defines."""
    if scales.config.units_mode is UnitsMode.RATIO:
        return scales.omega_tilde_over_omega
    return scales.omega_tilde


def _check_sweep_var(sweep: SweepSpec | None, allowed: tuple[str, ...],
                     command: str) -> None:
    if sweep is not None and sweep.variable not in allowed:
        raise ConfigError(
            f"{command} sweeps over {', '.join(allowed)}; "
            f"got {sweep.variable!r}")


def cmd_phase(config: SystemConfig | None = None,
              sweep: SweepSpec | None = None) -> OutputRecord:
    """Stability label over a collective-coupling sweep."""
    _check_sweep_var(sweep, ("gamma",), "phase")
    if sweep is not None:
        if sweep.start < 0 or sweep.stop < 0:
            raise ConfigError("gamma sweep endpoints must be non-negative")
        gammas = sweep.grid()
        params = {"sweep": f"gamma={sweep.start}:{sweep.stop}:{sweep.count}"
                  + (":log" if sweep.log else "")}
    elif config is not None:
        gammas = np.array([DerivedScales(config).gamma])
        params = {"sweep": None}
    else:
        gammas = np.linspace(0.0, 1.2, 121)
        params = {"sweep": "gamma=0.0:1.2:121"}
    cfg_map = (config or _default_config()).as_mapping()
    rows = [(float(g), classify_phase(float(g)).value) for g in gammas]
    counts: dict[str, int] = {}
    for _, label in rows:
        counts[label] = counts.get(label, 0) + 1
    return OutputRecord(command="phase", config=cfg_map, params=params,
                        columns=("gamma", "phase"), rows=rows,
                        summary={"band_counts": counts})


_RESPONSE_FUNCS = {
    "aa": chi_aa_freq,
    "ea": chi_ea_freq,
    "jj": chi_jj_freq,
    "ja": lambda f, s: chi_mixed_freq(f, s, ResponseKind.JA),
    "aj": lambda f, s: chi_mixed_freq(f, s, ResponseKind.AJ),
    "sigma": optical_conductivity,
}


def cmd_response(kind: str, config: SystemConfig | None = None,
                 sweep: SweepSpec | None = None,
                 eta: float | None = None) -> OutputRecord:
    """Broadened spectrum (w, Re, Im) of one response kind."""
    if kind not in _RESPONSE_FUNCS:
        raise ConfigError(f"unknown response kind {kind!r}; "
                          f"choose from {', '.join(_RESPONSE_FUNCS)}")
    _check_sweep_var(sweep, ("w",), "response")
    config = config or _default_config()
    scales = DerivedScales(config)
    wt = _omega_tilde_scale(scales)
    if eta is None:
        eta = 0.01 * wt
    if eta <= 0:
        raise ConfigError(f"eta must be positive, got {eta}")
    grid = sweep.grid() if sweep is not None else np.linspace(-3 * wt, 3 * wt, 1201)
    func = _RESPONSE_FUNCS[kind]
    rows = []
    for w in grid:
        val = func(BroadenedFrequency(float(w), eta), scales)
        rows.append((float(w), val.re, val.im))
    summary: dict = {"eta": eta, "omega_tilde": wt, "gamma": scales.gamma}
    if kind == "sigma":
        s0 = sigma0_dc(scales, eta)
        summary["sigma0"] = s0
        gamma = scales.gamma
        if gamma < 1.0:
            summary["sigma_dc"] = dc_conductivity(gamma, s0)
            summary["sigma_dc_over_sigma0"] = 1.0 - gamma
            summary["effective_mass_over_m_e"] = (
                drude_effective_mass(gamma) / CODATA2018.m_e)
    params = {"kind": kind, "eta": eta,
              "sweep": None if sweep is None else
              f"w={sweep.start}:{sweep.stop}:{sweep.count}"
              + (":log" if sweep.log else "")}
    return OutputRecord(command="response", config=config.as_mapping(),
                        params=params, columns=("w", "re", "im"), rows=rows,
                        summary=summary)


def cmd_eft(sub: str, config: SystemConfig | None = None,
            sweep: SweepSpec | None = None, lambda0: float | None = None,
            eta: float | None = None) -> OutputRecord:
    """Continuum-theory datasets; see --help for the sub-command menu."""
    subs = ("coupling", "mass", "mu", "casimir", "jellium", "chi")
    if sub not in subs:
        raise ConfigError(f"unknown eft sub-command {sub!r}; "
                          f"choose from {', '.join(subs)}")
    config = config or _default_config()
    base = EftConfig(system=config, lambda0=lambda0 if lambda0 is not None else 1.0)
    pole = base.lambda0_pole
    summary: dict = {"n_alpha": base.n_alpha, "lambda0_pole": pole}
    params: dict = {"sub": sub, "lambda0": lambda0, "eta": eta,
                    "sweep": None if sweep is None else
                    f"{sweep.variable}={sweep.start}:{sweep.stop}:{sweep.count}"
                    + (":log" if sweep.log else "")}

    def _at(lam: float) -> EftConfig:
        return EftConfig(system=config, lambda0=lam)

    if sub in ("coupling", "mass", "mu", "casimir"):
        _check_sweep_var(sweep, ("lambda0",), "eft " + sub)
        if sweep is not None:
            lams = sweep.grid()
        elif lambda0 is not None:
            lams = np.array([lambda0])
        else:
            hi = min(0.999 * pole, 1e6)
            lams = np.linspace(1.0, hi, 200)
        if np.any(lams < 1.0):
            raise ConfigError("lambda0 values must be >= 1")
        rows = []
        beyond_window = 0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            for lam in lams:
                lam = float(lam)
                ecfg = _at(lam)
                if not ecfg.in_stability_window:
                    beyond_window += 1
                try:
                    if sub == "coupling":
                        rows.append((lam, effective_coupling(ecfg)))
                    elif sub == "mass":
                        rows.append((lam, renormalized_mass(ecfg)))
                    elif sub == "mu":
                        rows.append((lam, chemical_potential(ecfg)))
                    else:
                        rows.append((lam, casimir_energy_density(ecfg),
                                     casimir_pressure(ecfg)))
                except PoleError as exc:
                    summary["truncation_notice"] = (
                        f"sweep truncated at lambda0 = {lam!r}: {exc}")
                    break
        if beyond_window:
            summary["rows_beyond_stability_window"] = beyond_window
        columns = {"coupling": ("lambda0", "g"),
                   "mass": ("lambda0", "mass_kg"),
                   "mu": ("lambda0", "mu_joule"),
                   "casimir": ("lambda0", "energy_density_j_m2",
                               "pressure_pa")}[sub]
        return OutputRecord(command="eft", config=config.as_mapping(),
                            params=params, columns=columns, rows=rows,
                            summary=summary)

    if sub == "jellium":
        _check_sweep_var(sweep, ("rs",), "eft jellium")
        ecfg = _at(lambda0 if lambda0 is not None else min(0.5 * (1 + pole), 1e6))
        rs_grid = sweep.grid() if sweep is not None else np.linspace(0.5, 12.0, 200)
        rows = []
        for rs in rs_grid:
            res = jellium(float(rs), ecfg)
            rows.append((res.rs, res.tau, res.eps_x, res.total))
        summary["rs_min"] = rs_minimum(ecfg)
        summary["lambda0"] = ecfg.lambda0
        return OutputRecord(command="eft", config=config.as_mapping(),
                            params=params,
                            columns=("rs", "kinetic_ry", "exchange_ry",
                                     "total_ry"),
                            rows=rows, summary=summary)

    # sub == "chi": continuum field-field response over a frequency sweep
    _check_sweep_var(sweep, ("w",), "eft chi")
    ecfg = _at(lambda0 if lambda0 is not None else min(0.5 * (1 + pole), 1e6))
    lo = math.sqrt(ecfg.omega_tilde_sq_cutoff)
    hi = math.sqrt(ecfg.lambda_freq2)
    if eta is None:
        eta = 1e-3 * lo
    if eta < 0:
        raise ConfigError(f"eta must be non-negative, got {eta}")
    grid = sweep.grid() if sweep is not None else np.linspace(0.0, 1.5 * hi, 601)
    rows = []
    for w in grid:
        val = eft_chi_aa(BroadenedFrequency(float(w), eta), ecfg)
        rows.append((float(w), val.re, val.im))
    params["eta"] = eta
    summary.update({"window_low": lo, "window_high": hi,
                    "lambda0": ecfg.lambda0})
    return OutputRecord(command="eft", config=config.as_mapping(),
                        params=params, columns=("w", "re", "im"), rows=rows,
                        summary=summary)


def cmd_manymode(sub: str, n_modes: int = 100, ratio: float = 0.5,
                 sweep: SweepSpec | None = None,
                 config: SystemConfig | None = None) -> OutputRecord:
    """Exact multi-mode scans for the parallel-polarization ladder."""
    subs = ("diag", "lowest-scan", "coupling-run")
    if sub not in subs:
        raise ConfigError(f"unknown manymode sub-command {sub!r}; "
                          f"choose from {', '.join(subs)}")
    if n_modes < 1:
        raise ConfigError(f"--modes must be >= 1, got {n_modes}")
    if ratio < 0:
        raise ConfigError(f"--ratio must be non-negative, got {ratio}")
    cfg_map = (config or _default_config()).as_mapping()
    params: dict = {"sub": sub, "modes": n_modes, "ratio": ratio,
                    "sweep": None if sweep is None else
                    f"{sweep.variable}={sweep.start}:{sweep.stop}:{sweep.count}"
                    + (":log" if sweep.log else "")}

    if sub == "diag":
        _check_sweep_var(sweep, (), "manymode diag")
        modes = ModeSet.ladder_1d(n_modes, 1.0)
        nm = normal_modes(modes, ratio)
        rows = [(i + 1, float(om)) for i, om in enumerate(nm.omega)]
        summary = {"sweeps": nm.sweeps,
                   "edge_omega_tilde": math.sqrt(1.0 + ratio**2)}
        return OutputRecord(command="manymode", config=cfg_map, params=params,
                            columns=("mode_index", "omega_over_omega1"),
                            rows=rows, summary=summary)

    if sub == "lowest-scan":
        _check_sweep_var(sweep, ("ratio",), "manymode lowest-scan")
        if sweep is not None:
            if sweep.start < 0:
                raise ConfigError("ratio sweep endpoints must be non-negative")
            ratios = sweep.grid()
        else:
            ratios = np.linspace(0.0, 0.9, 10)
        table = lowest_mode_scan([float(r) for r in ratios], n_modes=n_modes)
        rows = [(float(a), float(b)) for a, b in table]
        summary = {"max_rel_diff_percent": max(b for _, b in rows)}
        return OutputRecord(command="manymode", config=cfg_map, params=params,
                            columns=("ratio", "rel_diff_percent"), rows=rows,
                            summary=summary)

    # sub == "coupling-run": exact coupling vs mode count at fixed ratio
    _check_sweep_var(sweep, ("modes",), "manymode coupling-run")
    if sweep is not None:
        counts = sorted({int(round(m)) for m in sweep.grid() if m >= 1})
    else:
        counts = list(range(1, n_modes + 1))
    rows = []
    for m in counts:
        rows.append((m, exact_coupling_1d(m, 1.0, ratio)))
    summary = {"ratio": ratio,
               "single_mode_gamma": ratio**2 / (1.0 + ratio**2)}
    return OutputRecord(command="manymode", config=cfg_map, params=params,
                        columns=("n_modes", "g_exact"), rows=rows,
                        summary=summary)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="key=value or JSON config file "
                             "(JSON outputs round-trip)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", default="-",
                        help="output file, '-' for stdout (default)")
    common.add_argument("--sweep", metavar="VAR=START:STOP:COUNT[:log]",
                        help="sweep one documented variable")
    common.add_argument("--digits", type=int, default=FLOAT_DIGITS,
                        help="CSV significant digits (default 17)")

    parser = argparse.ArgumentParser(
        prog="cavity2deg",
        description="Exact cavity-coupled 2D electron gas datasets")
    parser.add_argument("--version", action="version",
                        version=f"cavity2deg {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    subs.add_parser("phase", parents=[common],
                    help="stability label over a gamma sweep")

    p_resp = subs.add_parser("response", parents=[common],
                             help="broadened response spectra")
    p_resp.add_argument("kind", choices=tuple(_RESPONSE_FUNCS))
    p_resp.add_argument("--eta", type=float, default=None,
                        help="broadening (default 0.01 omega_tilde)")

    p_eft = subs.add_parser("eft", parents=[common],
                            help="continuum-theory datasets")
    p_eft.add_argument("sub", choices=("coupling", "mass", "mu", "casimir",
                                       "jellium", "chi"))
    p_eft.add_argument("--lambda0", type=float, default=None,
                       help="dimensionless cutoff >= 1")
    p_eft.add_argument("--eta", type=float, default=None,
                       help="chi broadening; 0 selects the sharp window")

    p_many = subs.add_parser("manymode", parents=[common],
                             help="exact multi-mode diagonalization scans")
    p_many.add_argument("sub", choices=("diag", "lowest-scan", "coupling-run"))
    p_many.add_argument("--modes", type=int, default=100,
                        help="mode count M (default 100)")
    p_many.add_argument("--ratio", type=float, default=0.5,
                        help="omega_p/omega_1 (default 0.5)")
    return parser


def _emit(record: OutputRecord, fmt: str, out: str, digits: int) -> None:
    text = record.render(fmt, digits)
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dispatch(args: argparse.Namespace) -> OutputRecord:
    config = load_config_file(args.config) if args.config else None
    sweep = SweepSpec.parse(args.sweep) if args.sweep else None
    if args.command == "phase":
        return cmd_phase(config, sweep)
    if args.command == "response":
        return cmd_response(args.kind, config, sweep, args.eta)
    if args.command == "eft":
        return cmd_eft(args.sub, config, sweep, args.lambda0, args.eta)
    if args.command == "manymode":
        return cmd_manymode(args.sub, args.modes, args.ratio, sweep, config)
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.digits < 1 or args.digits > FLOAT_DIGITS:
        parser.error(f"--digits must be in [1, {FLOAT_DIGITS}]")
    try:
        record = _dispatch(args)
        _emit(record, args.format, args.out, args.digits)
    except (ConfigError, UnitModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PreconditionError, InstabilityError, PoleError,
            DegenerateModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Cavity2degError as exc:  # any future library error: domain bucket
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
