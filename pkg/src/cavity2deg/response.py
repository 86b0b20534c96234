"""Linear response of the coupled gas: field, current, and conductivity.

Every retarded response of the single-mode theory is carried by one pole pair
at the dressed frequency, broadened by an explicit eta > 0:

    chi_AA(tau) = -Theta(tau) sin(omega_t tau)/(eps0 omega_t V)
    chi_EA(tau) = +Theta(tau) cos(omega_t tau)/(eps0 V)
    chi_JJ     = (e^2 N/m_e)^2 chi_AA
    chi_JA     = chi_AJ = -(e^2 N/m_e) chi_AA

Real and imaginary parts are implemented as separate closed forms (not via
generic complex pole algebra) so each can be tested against the Laplace
transform of the time-domain kernel independently.

Unit modes: in SI everything is dimensionful.  In Ratio mode the same
formulas are evaluated with eps0 = V = 1 and frequencies in units of the bare
mode frequency; matter-coupled kinds (jj, ja, aj) need e^2 N/m_e and are SI
only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, Constants
from .core import DerivedScales, UnitsMode
from .exceptions import DomainError, InstabilityError, UnitModeError

__all__ = [
    "ResponseKind",
    "BroadenedFrequency",
    "ResponseValue",
    "chi_aa_time",
    "chi_ea_time",
    "chi_aa_freq",
    "chi_ea_freq",
    "chi_jj_freq",
    "chi_mixed_freq",
    "response_table",
    "absorption_rate",
    "optical_conductivity",
    "sigma0_dc",
    "dc_conductivity",
    "drude_effective_mass",
]


class ResponseKind(enum.Enum):
    AA = "aa"
    EA = "ea"
    JJ = "jj"
    JA = "ja"
    AJ = "aj"
    SIGMA = "sigma"


@dataclass(frozen=True)
class BroadenedFrequency:
    """Probe frequency w with Lorentzian broadening eta (same units as w)."""

    w: float
    eta: float

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise DomainError(f"eta must be non-negative, got {self.eta}")


@dataclass(frozen=True)
class ResponseValue:
    kind: ResponseKind
    re: float
    im: float

    @property
    def as_complex(self) -> complex:
        return complex(self.re, self.im)


def _mode_params(scales: DerivedScales) -> tuple[float, float]:
    """(omega_t, eps0*V) in the active unit mode."""
    if scales.config.units_mode is UnitsMode.RATIO:
        return scales.omega_tilde_over_omega, 1.0
    return scales.omega_tilde, scales.constants.eps0 * scales.config.volume


def _matter_prefactor(scales: DerivedScales) -> float:
    """e^2 N / m_e; SI only."""
    if scales.config.units_mode is not UnitsMode.SI:
        raise UnitModeError("current-coupled responses need an SI config")
    k = scales.constants
    return k.e**2 * scales.config.n_electrons / k.m_e


def _require_broadening(f: BroadenedFrequency) -> None:
    if f.eta <= 0:
        raise DomainError("single-mode frequency responses need eta > 0 "
                          "(the undamped kernel is on-pole)")


def chi_aa_time(tau: float, scales: DerivedScales) -> float:
    """Field-field response kernel; zero for tau < 0 (causal)."""
    omega_t, eps0_v = _mode_params(scales)
    if tau < 0:
        return 0.0
    return -math.sin(omega_t * tau) / (eps0_v * omega_t)


def chi_ea_time(tau: float, scales: DerivedScales) -> float:
    """Electric-field/vector-potential cross kernel, -d/dtau of chi_aa_time."""
    omega_t, eps0_v = _mode_params(scales)
    if tau < 0:
        return 0.0
    return math.cos(omega_t * tau) / eps0_v


def chi_aa_freq(f: BroadenedFrequency, scales: DerivedScales) -> ResponseValue:
    """chi_AA(w) = -(1/(2 eps0 omega_t V)) [1/(w+omega_t+i eta) - 1/(w-omega_t+i eta)]."""
    _require_broadening(f)
    omega_t, eps0_v = _mode_params(scales)
    w, eta = f.w, f.eta
    d_plus = (w + omega_t) ** 2 + eta**2
    d_minus = (w - omega_t) ** 2 + eta**2
    pref = 1.0 / (2.0 * eps0_v * omega_t)
    re = pref * ((w - omega_t) / d_minus - (w + omega_t) / d_plus)
    im = pref * eta * (1.0 / d_plus - 1.0 / d_minus)
    return ResponseValue(ResponseKind.AA, re, im)


def chi_ea_freq(f: BroadenedFrequency, scales: DerivedScales) -> ResponseValue:
    """chi_EA(w) = (i/(2 eps0 V)) [1/(w+omega_t+i eta) + 1/(w-omega_t+i eta)].

    Equivalently i(w+i eta) chi_AA(w): the frequency-domain image of the
    Maxwell relation chi_EA = -d chi_AA/dtau.
    """
    _require_broadening(f)
    omega_t, eps0_v = _mode_params(scales)
    w, eta = f.w, f.eta
    d_plus = (w + omega_t) ** 2 + eta**2
    d_minus = (w - omega_t) ** 2 + eta**2
    pref = 1.0 / (2.0 * eps0_v)
    re = pref * eta * (1.0 / d_plus + 1.0 / d_minus)
    im = pref * ((w + omega_t) / d_plus + (w - omega_t) / d_minus)
    return ResponseValue(ResponseKind.EA, re, im)


def chi_jj_freq(f: BroadenedFrequency, scales: DerivedScales) -> ResponseValue:
    """Current-current response (e^2 N/m_e)^2 * chi_AA; SI only."""
    pref = _matter_prefactor(scales) ** 2
    base = chi_aa_freq(f, scales)
    return ResponseValue(ResponseKind.JJ, pref * base.re, pref * base.im)


def chi_mixed_freq(f: BroadenedFrequency, scales: DerivedScales,
                   kind: ResponseKind = ResponseKind.JA) -> ResponseValue:
    """Mixed current/field response -(e^2 N/m_e) * chi_AA; JA and AJ coincide."""
    if kind not in (ResponseKind.JA, ResponseKind.AJ):
        raise DomainError(f"kind must be JA or AJ, got {kind}")
    pref = -_matter_prefactor(scales)
    base = chi_aa_freq(f, scales)
    return ResponseValue(kind, pref * base.re, pref * base.im)


def response_table(f: BroadenedFrequency, scales: DerivedScales) -> np.ndarray:
    """2x2 complex matrix [[JJ, JA], [AJ, AA]]; rank one by construction."""
    aa = chi_aa_freq(f, scales).as_complex
    pref = _matter_prefactor(scales)
    return np.array([[pref**2 * aa, -pref * aa],
                     [-pref * aa, aa]], dtype=complex)


def absorption_rate(f: BroadenedFrequency, scales: DerivedScales,
                    j_ext: float) -> float:
    """Mean absorbed power -w Im[chi_AA(w)] |J_ext|^2; non-negative."""
    val = chi_aa_freq(f, scales)
    return -f.w * val.im * abs(j_ext) ** 2


def optical_conductivity(f: BroadenedFrequency,
                         scales: DerivedScales) -> ResponseValue:
    """Optical conductivity of the coupled gas (S/m in SI).

    Closed form of i/(w + i eta) (e^2 n_e/m_e + chi_JJ/V), split into real
    and imaginary parts:

        Re = eps0 eta wp^2/(w^2+eta^2)
             - eta eps0 wp^4/(2 wt (w^2+eta^2))
               [ (2w+wt)/D+ - (2w-wt)/D- ]
        Im = eps0 w wp^2/(w^2+eta^2)
             - eps0 wp^4/(2 wt (w^2+eta^2))
               [ (w^2-eta^2+w wt)/D+ - (w^2-eta^2-w wt)/D- ]
    """
    _require_broadening(f)
    if scales.config.units_mode is UnitsMode.RATIO:
        eps0 = 1.0
        omega_p = scales.omega_p_over_omega
        omega_t = scales.omega_tilde_over_omega
    else:
        eps0 = scales.constants.eps0
        omega_p = scales.omega_p
        omega_t = scales.omega_tilde
    w, eta = f.w, f.eta
    d_plus = (w + omega_t) ** 2 + eta**2
    d_minus = (w - omega_t) ** 2 + eta**2
    lorentz = w**2 + eta**2
    drude_re = eps0 * eta * omega_p**2 / lorentz
    drude_im = eps0 * w * omega_p**2 / lorentz
    pref = eps0 * omega_p**4 / (2.0 * omega_t * lorentz)
    re = drude_re - eta * pref * ((2.0 * w + omega_t) / d_plus
                                  - (2.0 * w - omega_t) / d_minus)
    im = drude_im - pref * ((w**2 - eta**2 + w * omega_t) / d_plus
                            - (w**2 - eta**2 - w * omega_t) / d_minus)
    return ResponseValue(ResponseKind.SIGMA, re, im)


def sigma0_dc(scales: DerivedScales, eta: float) -> float:
    """Free-gas Drude DC value sigma0 = eps0 omega_p^2/eta."""
    if eta <= 0:
        raise DomainError(f"eta must be positive, got {eta}")
    if scales.config.units_mode is UnitsMode.RATIO:
        return scales.omega_p_over_omega**2 / eta
    return scales.constants.eps0 * scales.omega_p**2 / eta


def dc_conductivity(gamma: float, sigma0: float) -> float:
    """Drude peak of the coupled gas, sigma0 (1 - gamma); needs gamma < 1."""
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if gamma >= 1.0:
        raise InstabilityError(
            f"no stable ground state at gamma = {gamma}; DC limit undefined")
    return sigma0 * (1.0 - gamma)


def drude_effective_mass(gamma: float,
                         constants: Constants = CODATA2018) -> float:
    """Effective mass m_e/(1 - gamma) read off the suppressed Drude peak."""
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    if gamma >= 1.0:
        raise InstabilityError(
            f"effective mass diverges at gamma = {gamma}")
    return constants.m_e / (1.0 - gamma)
