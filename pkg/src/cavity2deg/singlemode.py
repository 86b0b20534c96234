"""Exact single-mode spectrum and the k-space ground-state machinery.

The many-body eigenenergies of the gas coupled to one cavity mode (two
in-plane polarizations) are closed-form: a dressed oscillator ladder plus the
free kinetic energy minus a collective term proportional to the total
electronic momentum,

    E = hbar*omega_t*(n1 + n2 + 1)
        + (hbar^2/2 m_e) * (sum_j k_j^2 - gamma*|K|^2/N).

Ground-state searches over occupancy distributions reduce to three moments of
the distribution (density, momentum density, kinetic moment), evaluated here
on uniform k-space grids by the midpoint rule.  Disk occupancies are built
with exact cell/disk overlap areas so grid quadrature converges at O(h^2).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .constants import CODATA2018, Constants
from .core import DerivedScales
from .exceptions import DomainError, PreconditionError

__all__ = [
    "SpectrumIndex",
    "DistributionMoments",
    "OccupancyGrid",
    "eigenenergy",
    "eigenenergy_no_a2",
    "ground_photon_occupation",
    "distribution_moments",
    "energy_density",
    "optimal_origin",
    "instability_witness",
]

MAX_OCCUPANCY = 2.0  # spin-summed occupancy bound per k-cell


@dataclass(frozen=True)
class SpectrumIndex:
    """Labels one exact eigenstate: photon numbers and electron aggregates.

    The electronic part enters only through the total momentum K (1/m) and
    the summed squared momenta kinetic_sum (1/m^2) of the N electrons.
    """

    n1: int
    n2: int
    K: tuple[float, float]
    kinetic_sum: float
    n_electrons: int

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n2 < 0:
            raise PreconditionError("photon numbers must be non-negative")
        if self.n_electrons < 1:
            raise PreconditionError("n_electrons must be at least 1")
        k2 = self.K[0] ** 2 + self.K[1] ** 2
        # Cauchy-Schwarz: sum k_j^2 >= |sum k_j|^2 / N for any momentum list
        if self.kinetic_sum < k2 / self.n_electrons * (1.0 - 1e-12):
            raise PreconditionError(
                "kinetic_sum below |K|^2/N violates Cauchy-Schwarz")

    @classmethod
    def from_momenta(cls, momenta: Iterable[Sequence[float]],
                     n1: int = 0, n2: int = 0) -> "SpectrumIndex":
        ks = np.atleast_2d(np.asarray(list(momenta), dtype=float))
        if ks.size == 0 or ks.shape[1] != 2:
            raise PreconditionError("momenta must be a non-empty list of 2-vectors")
        kx, ky = ks[:, 0].sum(), ks[:, 1].sum()
        return cls(n1, n2, (float(kx), float(ky)),
                   float((ks**2).sum()), ks.shape[0])


def eigenenergy(idx: SpectrumIndex, scales: DerivedScales,
                constants: Constants = CODATA2018) -> float:
    """Exact eigenenergy in joules, both polarization zero-points included."""
    hbar, m_e = constants.hbar, constants.m_e
    k2 = idx.K[0] ** 2 + idx.K[1] ** 2
    photon = hbar * scales.omega_tilde * (idx.n1 + idx.n2 + 1)
    matter = (hbar**2 / (2.0 * m_e)) * (
        idx.kinetic_sum - scales.gamma * k2 / idx.n_electrons)
    return photon + matter


def eigenenergy_no_a2(idx: SpectrumIndex, omega: float, omega_p: float,
                      constants: Constants = CODATA2018) -> float:
    """Spectrum of the truncated model without the diamagnetic term.

    The mode keeps its bare frequency and the collective factor becomes
    gamma' = omega_p^2/omega^2, which is unbounded: the witness built on it
    shows the absence of a ground state.
    """
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    hbar, m_e = constants.hbar, constants.m_e
    gamma_p = (omega_p / omega) ** 2
    k2 = idx.K[0] ** 2 + idx.K[1] ** 2
    photon = hbar * omega * (idx.n1 + idx.n2 + 1)
    matter = (hbar**2 / (2.0 * m_e)) * (
        idx.kinetic_sum - gamma_p * k2 / idx.n_electrons)
    return photon + matter


def ground_photon_occupation(omega: float, omega_p: float) -> float:
    """Virtual photon number in the ground state: (omega_t - omega)^2/(2 omega omega_t)."""
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if omega_p < 0:
        raise DomainError(f"omega_p must be non-negative, got {omega_p}")
    omega_t = math.hypot(omega, omega_p)
    return (omega_t - omega) ** 2 / (2.0 * omega * omega_t)


@dataclass(frozen=True)
class DistributionMoments:
    """Moments of a spin-summed occupancy f(k): all carry powers of 1/m.

    t_d   = (1/(2 pi)^2) int f k^2   (1/m^4)
    k_d   = (1/(2 pi)^2) int f k     (1/m^3, 2-vector)
    n_2d  = (1/(2 pi)^2) int f       (1/m^2)
    """

    t_d: float
    k_d: tuple[float, float]
    n_2d: float


class OccupancyGrid:
    """Uniform rectangular k-space grid of spin-summed occupancies f in [0, 2].

    f[i, j] is the occupancy of the cell centered at (kx[i], ky[j]); cell
    centers sit on the universal lattice ((i+1/2)h, (j+1/2)h) so that two
    grids differing by an integer number of cells are exact translates.
    """

    def __init__(self, kx: np.ndarray, ky: np.ndarray, f: np.ndarray):
        kx = np.asarray(kx, dtype=float)
        ky = np.asarray(ky, dtype=float)
        f = np.asarray(f, dtype=float)
        if kx.ndim != 1 or ky.ndim != 1 or f.shape != (kx.size, ky.size):
            raise DomainError("grid shape mismatch: f must be (len(kx), len(ky))")
        if kx.size == 0 or ky.size == 0:
            raise DomainError("empty grid")
        for axis in (kx, ky):
            if axis.size > 1:
                d = np.diff(axis)
                if not np.allclose(d, d[0], rtol=1e-9, atol=0.0) or d[0] <= 0:
                    raise DomainError("grid axes must be uniform and increasing")
        self.kx = kx
        self.ky = ky
        self.f = np.clip(f, 0.0, MAX_OCCUPANCY)

    @property
    def spacing(self) -> tuple[float, float]:
        hx = float(self.kx[1] - self.kx[0]) if self.kx.size > 1 else 0.0
        hy = float(self.ky[1] - self.ky[0]) if self.ky.size > 1 else 0.0
        if hx == 0.0 or hy == 0.0:
            raise DomainError("grid needs at least two cells per axis")
        return hx, hy

    @classmethod
    def disk(cls, radius: float, center: tuple[float, float] = (0.0, 0.0),
             fill: float = 1.0, cells_per_radius: int = 64,
             margin: float = 1.25) -> "OccupancyGrid":
        """Disk occupancy with exact cell-overlap antialiasing.

        Cells fully inside the disk get ``fill``; boundary cells get
        fill * (overlap area)/(cell area).  fill=2 is the spin-summed full
        Fermi disk, fill=1 a singly-occupied one.
        """
        if radius <= 0:
            raise DomainError(f"radius must be positive, got {radius}")
        if not 0.0 < fill <= MAX_OCCUPANCY:
            raise DomainError(f"fill must lie in (0, {MAX_OCCUPANCY}], got {fill}")
        if cells_per_radius < 2:
            raise DomainError("cells_per_radius must be at least 2")
        h = radius / cells_per_radius
        cx, cy = center
        reach = radius * margin
        i_lo = math.floor((cx - reach) / h)
        i_hi = math.ceil((cx + reach) / h)
        j_lo = math.floor((cy - reach) / h)
        j_hi = math.ceil((cy + reach) / h)
        kx = (np.arange(i_lo, i_hi) + 0.5) * h
        ky = (np.arange(j_lo, j_hi) + 0.5) * h
        gx, gy = np.meshgrid(kx - cx, ky - cy, indexing="ij")
        dist = np.hypot(gx, gy)
        half_diag = h * math.sqrt(0.5)
        f = np.where(dist <= radius - half_diag, fill, 0.0)
        cell_area = h * h
        for i, j in zip(*np.nonzero(
                (dist > radius - half_diag) & (dist < radius + half_diag))):
            x_mid, y_mid = gx[i, j], gy[i, j]
            area = _disk_cell_overlap(x_mid - h / 2, x_mid + h / 2,
                                      y_mid - h / 2, y_mid + h / 2, radius)
            f[i, j] = fill * area / cell_area
        return cls(kx, ky, f)

    def to_csv(self, target: str | Path | TextIO) -> None:
        """Write (kx, ky, f) triples for every cell, header ``kx,ky,f``."""
        if isinstance(target, (str, Path)):
            with open(target, "w", newline="") as fh:
                self.to_csv(fh)
            return
        writer = csv.writer(target)
        writer.writerow(["kx", "ky", "f"])
        for i, x in enumerate(self.kx):
            for j, y in enumerate(self.ky):
                writer.writerow([repr(float(x)), repr(float(y)),
                                 repr(float(self.f[i, j]))])

    @classmethod
    def from_csv(cls, source: str | Path | TextIO) -> "OccupancyGrid":
        if isinstance(source, (str, Path)):
            with open(source, newline="") as fh:
                return cls.from_csv(fh)
        reader = csv.reader(source)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["kx", "ky", "f"]:
            raise DomainError("expected CSV header kx,ky,f")
        rows = [(float(a), float(b), float(c)) for a, b, c in reader]
        if not rows:
            raise DomainError("empty grid")
        data = np.asarray(rows)
        kx = np.unique(data[:, 0])
        ky = np.unique(data[:, 1])
        if kx.size * ky.size != data.shape[0]:
            raise DomainError("CSV rows do not form a complete rectangular grid")
        f = np.empty((kx.size, ky.size))
        ix = np.searchsorted(kx, data[:, 0])
        iy = np.searchsorted(ky, data[:, 1])
        f[ix, iy] = data[:, 2]
        return cls(kx, ky, f)


def _disk_cell_overlap(x0: float, x1: float, y0: float, y1: float,
                       radius: float) -> float:
    """Exact area of [x0,x1]x[y0,y1] intersected with the origin-centered disk."""
    a = max(x0, -radius)
    b = min(x1, radius)
    if b <= a:
        return 0.0

    def phi(x: float) -> float:
        # antiderivative of sqrt(R^2 - x^2)
        t = max(radius * radius - x * x, 0.0)
        s = math.sqrt(t)
        return 0.5 * (x * s + radius * radius
                      * math.asin(min(1.0, max(-1.0, x / radius))))

    def chord(t: float, lo: float, hi: float) -> float:
        # integral over [lo, hi] of min(t, sqrt(R^2 - x^2)), t >= 0
        if hi <= lo:
            return 0.0
        if t >= radius:
            return phi(hi) - phi(lo)
        xc = math.sqrt(radius * radius - t * t)
        total = 0.0
        left_hi = min(hi, -xc)
        if left_hi > lo:
            total += phi(left_hi) - phi(lo)
        mid_lo, mid_hi = max(lo, -xc), min(hi, xc)
        if mid_hi > mid_lo:
            total += t * (mid_hi - mid_lo)
        right_lo = max(lo, xc)
        if hi > right_lo:
            total += phi(hi) - phi(right_lo)
        return total

    def clip_integral(y: float) -> float:
        if y == 0.0:
            return 0.0
        return math.copysign(chord(abs(y), a, b), y)

    return clip_integral(y1) - clip_integral(y0)


def distribution_moments(grid: OccupancyGrid) -> DistributionMoments:
    """Midpoint-rule moments with measure d^2k/(2 pi)^2 over the stored f."""
    hx, hy = grid.spacing
    w = hx * hy / (2.0 * math.pi) ** 2
    gx, gy = np.meshgrid(grid.kx, grid.ky, indexing="ij")
    n_2d = w * float(grid.f.sum())
    kdx = w * float((grid.f * gx).sum())
    kdy = w * float((grid.f * gy).sum())
    t_d = w * float((grid.f * (gx**2 + gy**2)).sum())
    return DistributionMoments(t_d=t_d, k_d=(kdx, kdy), n_2d=n_2d)


def energy_density(m: DistributionMoments, q: tuple[float, float],
                   gamma: float, constants: Constants = CODATA2018) -> float:
    """Ground-state energy per area (J/m^2) of the boosted distribution.

    The distribution is rigidly shifted by q; the collective term removes a
    gamma fraction of the center-of-mass kinetic energy:

        E = (hbar^2/2 m_e) [ t_d + 2 q.K + q^2 n
                             - (gamma/n) * |K + q n|^2 ].
    """
    if m.n_2d <= 0:
        raise DomainError("distribution has non-positive density")
    if gamma < 0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    qx, qy = q
    kx, ky = m.k_d
    bracket = (m.t_d + 2.0 * (qx * kx + qy * ky) + (qx**2 + qy**2) * m.n_2d
               - (gamma / m.n_2d) * ((kx + qx * m.n_2d) ** 2
                                     + (ky + qy * m.n_2d) ** 2))
    return constants.hbar**2 / (2.0 * constants.m_e) * bracket


def optimal_origin(m: DistributionMoments) -> tuple[float, float]:
    """Energy-minimizing rigid shift q0 = -K_d/n_2d (independent of gamma < 1)."""
    if m.n_2d <= 0:
        raise DomainError("distribution has non-positive density")
    return (-m.k_d[0] / m.n_2d, -m.k_d[1] / m.n_2d)


def instability_witness(m: DistributionMoments, gamma: float,
                        qx_values: Sequence[float],
                        constants: Constants = CODATA2018) -> np.ndarray:
    """Energy density along boosts q = (q_x, 0) for super-critical coupling.

    For gamma > 1 the sequence decreases without bound at large q_x (no
    ground state); gamma = 1 gives a flat, degenerate sequence.  Sub-critical
    gamma is rejected since the witness would just find the minimum.
    """
    if gamma < 1.0:
        raise PreconditionError(
            f"witness needs gamma >= 1 (critical or beyond), got {gamma}")
    return np.array([energy_density(m, (float(qx), 0.0), gamma, constants)
                     for qx in qx_values])
