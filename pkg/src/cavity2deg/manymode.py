"""Exact diagonalization of many photon modes coupled through the gas.

With M modes the quadratic photon problem closes on the symmetric matrix

    W[a, b] = omega_t_a^2 delta_ab + omega_p^2 * (eps_a . eps_b),  a != b,

with zero polarization overlap on the diagonal (omega_t_a^2 = omega_a^2 +
omega_p^2 already contains the self term).  Orthogonal diagonalization
W = U Omega^2 U^T yields the normal-mode frequencies; polarizations rotate as
eps~_g = sum_a eps_a U[a, g], and the electronic spectrum keeps the
single-mode structure with the rotated quantities.

The eigensolver is a hand-implemented cyclic Jacobi sweep with a skip
threshold, as high relative accuracy on symmetric matrices matters more here
than raw speed.  A numba-compiled kernel is used when available; ``backend``
selects the pure-numpy sweep or the platform eigensolver instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .constants import CODATA2018, Constants
from .exceptions import (ConvergenceError, DegenerateModeError, DomainError,
                         PreconditionError)
from .io_utils import write_csv

__all__ = [
    "ModeSet",
    "NormalModes",
    "build_w",
    "diagonalize_w",
    "normal_modes",
    "rotated_polarizations",
    "manymode_spectrum",
    "exact_coupling_1d",
    "lowest_mode_scan",
    "write_lowest_scan_csv",
    "write_coupling_run_csv",
]

OFFDIAG_TOL_FACTOR = 1e-12   # convergence: off-diagonal Frobenius vs ||W||_F
MAX_SWEEPS = 30


@dataclass(frozen=True, eq=False)
class ModeSet:
    """Bare photon modes: frequencies, unit polarizations, optional momenta.

    Polarizations must be unit vectors; if momenta are given they must be
    transverse (Coulomb gauge) unless ``allow_nontransverse`` is set for
    stress tests.
    """

    omega: np.ndarray            # (M,) rad/s (or ratio units)
    pol: np.ndarray              # (M, 3) unit vectors
    kappa: np.ndarray | None = None   # (M, 3) 1/m, optional
    allow_nontransverse: bool = False

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        pol = np.asarray(self.pol, dtype=float)
        if omega.ndim != 1 or omega.size == 0:
            raise PreconditionError("omega must be a non-empty 1D array")
        if np.any(omega <= 0):
            raise PreconditionError("mode frequencies must be positive")
        if pol.shape != (omega.size, 3):
            raise PreconditionError("pol must have shape (M, 3)")
        norms = np.linalg.norm(pol, axis=1)
        if not np.allclose(norms, 1.0, rtol=0.0, atol=1e-12):
            raise PreconditionError("polarizations must be unit vectors")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "pol", pol)
        if self.kappa is not None:
            kappa = np.asarray(self.kappa, dtype=float)
            if kappa.shape != (omega.size, 3):
                raise PreconditionError("kappa must have shape (M, 3)")
            if not self.allow_nontransverse:
                dots = np.abs(np.einsum("ij,ij->i", kappa, pol))
                scale = np.linalg.norm(kappa, axis=1)
                if np.any(dots > 1e-10 * np.maximum(scale, 1.0)):
                    raise PreconditionError(
                        "polarizations must be transverse to kappa "
                        "(set allow_nontransverse to override)")
            object.__setattr__(self, "kappa", kappa)

    def __len__(self) -> int:
        return self.omega.size

    @classmethod
    def ladder_1d(cls, n_modes: int, omega_fundamental: float = 1.0,
                  polarization: Sequence[float] = (1.0, 0.0, 0.0)) -> "ModeSet":
        """Standing-wave ladder omega_n = n * omega_fundamental, n = 1..M,
        all polarizations parallel (the maximal-coupling stress case)."""
        if n_modes < 1:
            raise PreconditionError(f"n_modes must be >= 1, got {n_modes}")
        if omega_fundamental <= 0:
            raise PreconditionError("omega_fundamental must be positive")
        omega = omega_fundamental * np.arange(1, n_modes + 1, dtype=float)
        pol = np.tile(np.asarray(polarization, dtype=float), (n_modes, 1))
        return cls(omega=omega, pol=pol)


@dataclass(frozen=True, eq=False)
class NormalModes:
    """Sorted eigenpairs of W; ``eps_tilde`` is attached by normal_modes()."""

    omega_sq: np.ndarray          # (M,) ascending
    u: np.ndarray                 # (M, M) orthogonal, columns are eigenvectors
    sweeps: int
    eps_tilde: np.ndarray | None = None   # (M, 3) rotated polarizations

    @cached_property
    def omega(self) -> np.ndarray:
        if np.any(self.omega_sq < 0):
            raise DomainError("negative eigenvalue; no real mode frequencies")
        return np.sqrt(self.omega_sq)


def build_w(modes: ModeSet, omega_p: float) -> np.ndarray:
    """Mode-coupling matrix with dressed diagonal and zero-diagonal overlap."""
    if omega_p < 0:
        raise DomainError(f"omega_p must be non-negative, got {omega_p}")
    overlap = modes.pol @ modes.pol.T
    np.fill_diagonal(overlap, 0.0)
    return np.diag(modes.omega**2 + omega_p**2) + omega_p**2 * overlap


def _jacobi_cycle_python(a: np.ndarray, v: np.ndarray, skip_thr: float,
                         tol_fro: float, max_sweeps: int) -> int:
    """Cyclic-by-row Jacobi sweeps; mutates a, v.  Returns sweeps or -1."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if math.sqrt(off) <= tol_fro:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip_thr:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


try:  # optional compiled kernel; algorithmically identical to the python one
    import numba as _numba

    _jacobi_cycle_numba = _numba.njit(cache=True)(_jacobi_cycle_python)
except ImportError:  # pragma: no cover - exercised only without numba
    _jacobi_cycle_numba = None


def _jacobi_cycle_numpy(a: np.ndarray, v: np.ndarray, skip_thr: float,
                        tol_fro: float, max_sweeps: int) -> int:
    """Vectorized row/column updates; same rotation order as the scalar kernel."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0) * np.linalg.norm(a[np.triu_indices(n, k=1)])
        if off <= tol_fro:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip_thr:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return -1


def diagonalize_w(w_matrix: np.ndarray, tol_factor: float = OFFDIAG_TOL_FACTOR,
                  max_sweeps: int = MAX_SWEEPS,
                  backend: str = "auto") -> NormalModes:
    """Orthogonal eigendecomposition of a symmetric W, deterministic output.

    Eigenvalues are sorted ascending; each eigenvector is sign-fixed so its
    largest-magnitude component is positive.  ``backend`` picks the compiled
    Jacobi kernel ("numba"), the vectorized one ("numpy"), the platform
    eigensolver ("lapack"), or the fastest available Jacobi ("auto").
    """
    a = np.array(w_matrix, dtype=float, copy=True, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"W must be square, got shape {a.shape}")
    norm_fro = float(np.linalg.norm(a))
    if norm_fro > 0 and float(np.linalg.norm(a - a.T)) > 1e-12 * norm_fro:
        raise DomainError("W must be symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    if backend == "lapack":
        eigvals, v = np.linalg.eigh(a)
        sweeps = 0
    else:
        tol_fro = tol_factor * norm_fro
        skip_thr = tol_fro / (2.0 * n)
        if backend == "numba" and _jacobi_cycle_numba is None:
            raise DomainError("numba backend requested but numba is unavailable")
        if backend in ("auto", "numba") and _jacobi_cycle_numba is not None:
            kernel = _jacobi_cycle_numba
        elif backend in ("auto", "numpy"):
            kernel = _jacobi_cycle_numpy
        else:
            raise DomainError(f"unknown backend {backend!r}")
        sweeps = kernel(a, v, skip_thr, tol_fro, max_sweeps)
        if sweeps < 0:
            raise ConvergenceError(
                f"Jacobi did not reach tol {tol_factor:g}*||W||_F "
                f"in {max_sweeps} sweeps (M = {n})")
        eigvals = np.diag(a).copy()
    order = np.argsort(eigvals, kind="stable")
    eigvals = eigvals[order]
    v = v[:, order]
    lead = np.argmax(np.abs(v), axis=0)
    flip = v[lead, np.arange(n)] < 0
    v[:, flip] *= -1.0
    return NormalModes(omega_sq=eigvals, u=v, sweeps=int(sweeps))


def rotated_polarizations(modes: ModeSet, u: np.ndarray) -> np.ndarray:
    """eps~_g = sum_a eps_a U[a, g]; rows are the rotated 3-vectors."""
    u = np.asarray(u, dtype=float)
    if u.shape != (len(modes), len(modes)):
        raise DomainError(
            f"U shape {u.shape} does not match {len(modes)} modes")
    return u.T @ modes.pol


def normal_modes(modes: ModeSet, omega_p: float, **kwargs) -> NormalModes:
    """build_w + diagonalize_w + rotated polarizations in one step."""
    nm = diagonalize_w(build_w(modes, omega_p), **kwargs)
    eps_tilde = rotated_polarizations(modes, nm.u)
    return NormalModes(omega_sq=nm.omega_sq, u=nm.u, sweeps=nm.sweeps,
                       eps_tilde=eps_tilde)


def manymode_spectrum(n_gamma: Sequence[int], K: Sequence[float],
                      kinetic_sum: float, normal: NormalModes,
                      omega_p: float, n_electrons: int,
                      constants: Constants = CODATA2018) -> float:
    """Exact eigenenergy (J) with M normal modes.

    E = (hbar^2/2 m_e)[kinetic_sum - (omega_p^2/N) sum_g (eps~_g.K)^2/Omega_g^2]
        + sum_g hbar Omega_g (n_g + 1/2).
    """
    if normal.eps_tilde is None:
        raise PreconditionError(
            "normal modes lack rotated polarizations; use normal_modes()")
    n_gamma = np.asarray(n_gamma, dtype=float)
    m = normal.omega_sq.size
    if n_gamma.shape != (m,):
        raise PreconditionError(f"need {m} photon occupation numbers")
    if np.any(n_gamma < 0):
        raise PreconditionError("photon occupations must be non-negative")
    if np.any(normal.omega_sq == 0.0):
        raise DegenerateModeError("zero-frequency normal mode in the spectrum")
    k3 = np.zeros(3)
    k3[:len(K)] = np.asarray(K, dtype=float)
    if n_electrons < 1:
        raise PreconditionError("n_electrons must be at least 1")
    hbar, m_e = constants.hbar, constants.m_e
    proj = normal.eps_tilde @ k3
    collective = omega_p**2 / n_electrons * float(np.sum(proj**2 / normal.omega_sq))
    electronic = hbar**2 / (2.0 * m_e) * (kinetic_sum - collective)
    photon = hbar * float(np.sum(normal.omega * (n_gamma + 0.5)))
    return electronic + photon


def exact_coupling_1d(n_modes: int, omega_fundamental: float,
                      omega_p: float, backend: str = "auto") -> float:
    """Exact dimensionless coupling sum_g omega_p^2 (eps~_g,x)^2 / Omega_g^2
    for the parallel-polarization ladder; reduces to gamma at M = 1."""
    modes = ModeSet.ladder_1d(n_modes, omega_fundamental)
    nm = normal_modes(modes, omega_p, backend=backend)
    proj = nm.eps_tilde[:, 0]
    return float(np.sum(omega_p**2 * proj**2 / nm.omega_sq))


def lowest_mode_scan(ratios: Sequence[float], n_modes: int = 100,
                     backend: str = "auto") -> np.ndarray:
    """Percent difference between the dressed continuum edge and the lowest
    normal mode, per coupling ratio omega_p/omega.

    Returns rows (ratio, 100*|omega_t(kappa_z) - Omega_lowest|/omega_t) for
    the parallel ladder in fundamental-frequency units.
    """
    rows = np.empty((len(ratios), 2))
    for i, ratio in enumerate(ratios):
        if ratio < 0:
            raise DomainError(f"ratio must be non-negative, got {ratio}")
        modes = ModeSet.ladder_1d(n_modes, 1.0)
        nm = diagonalize_w(build_w(modes, float(ratio)), backend=backend)
        omega_lowest = math.sqrt(float(nm.omega_sq[0]))
        edge = math.sqrt(1.0 + ratio * ratio)
        rows[i] = (ratio, 100.0 * abs(edge - omega_lowest) / edge)
    return rows


def write_lowest_scan_csv(rows: np.ndarray, target) -> None:
    write_csv(target, ("ratio", "rel_diff_percent"), rows)


def write_coupling_run_csv(rows: Sequence[tuple[int, float]], target) -> None:
    write_csv(target, ("n_modes", "g_exact"), rows)
