"""Exact single-mode spectrum, disk occupancies, and ground-state machinery.

Numerical oracles used here:
  * cell/disk overlap: 1D adaptive quadrature of the chord length with
    breakpoints at every kink of the integrand,
  * disk moments: closed-form disk integrals f k_F^2/(4 pi), f k_F^4/(8 pi).
"""

import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from cavity2deg import (
    CODATA2018,
    DerivedScales,
    DomainError,
    OccupancyGrid,
    PreconditionError,
    SpectrumIndex,
    SystemConfig,
    distribution_moments,
    eigenenergy,
    eigenenergy_no_a2,
    energy_density,
    ground_photon_occupation,
    instability_witness,
    optimal_origin,
)
from cavity2deg.singlemode import _disk_cell_overlap

HBAR = CODATA2018.hbar
M_E = CODATA2018.m_e


def overlap_quad_oracle(x0, x1, y0, y1, radius):
    """Independent overlap area: integrate the chord length over y.

    The integrand has kinks where the circle crosses x0, x1 or turns
    around (y = 0, +-R); those are passed to quad as breakpoints.
    """
    lo, hi = max(y0, -radius), min(y1, radius)
    if hi <= lo:
        return 0.0

    def chord(y):
        xc = math.sqrt(max(radius**2 - y * y, 0.0))
        return max(0.0, min(x1, xc) - max(x0, -xc))

    pts = {0.0, -radius, radius}
    for edge in (x0, x1):
        if abs(edge) < radius:
            yc = math.sqrt(radius**2 - edge**2)
            pts.update((yc, -yc))
    pts = sorted(p for p in pts if lo < p < hi)
    val, _ = quad(chord, lo, hi, points=pts or None, limit=200,
                  epsabs=1e-14, epsrel=1e-12)
    return val


class TestSpectrumIndex:
    def test_cauchy_schwarz_guard(self):
        # sum k^2 >= |K|^2/N for any real momentum list
        SpectrumIndex(0, 0, (3.0, 4.0), kinetic_sum=25.0, n_electrons=1)
        with pytest.raises(PreconditionError):
            SpectrumIndex(0, 0, (3.0, 4.0), kinetic_sum=24.0, n_electrons=1)
        SpectrumIndex(0, 0, (3.0, 4.0), kinetic_sum=13.0, n_electrons=2)
        with pytest.raises(PreconditionError):
            SpectrumIndex(0, 0, (3.0, 4.0), kinetic_sum=12.0, n_electrons=2)

    def test_photon_and_count_guards(self):
        with pytest.raises(PreconditionError):
            SpectrumIndex(-1, 0, (0.0, 0.0), 0.0, 1)
        with pytest.raises(PreconditionError):
            SpectrumIndex(0, 0, (0.0, 0.0), 0.0, 0)

    def test_from_momenta(self):
        idx = SpectrumIndex.from_momenta([(1.0, 0.0), (0.0, 2.0), (-1.0, 1.0)])
        assert idx.K == (0.0, 3.0)
        assert idx.kinetic_sum == pytest.approx(1 + 4 + 2, rel=1e-15)
        assert idx.n_electrons == 3

    @given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
                    min_size=1, max_size=8))
    def test_from_momenta_always_satisfies_guard(self, momenta):
        # physical momentum lists can never trip the Cauchy-Schwarz check
        SpectrumIndex.from_momenta(momenta)


class TestEigenenergy:
    def test_ladder_spacing(self, si_config):
        ds = DerivedScales(si_config)
        ground = SpectrumIndex(0, 0, (0.0, 0.0), 0.0, 10)
        e0 = eigenenergy(ground, ds)
        assert e0 == pytest.approx(HBAR * ds.omega_tilde, rel=1e-15)
        for n1, n2 in ((1, 0), (0, 1), (2, 3)):
            idx = SpectrumIndex(n1, n2, (0.0, 0.0), 0.0, 10)
            assert eigenenergy(idx, ds) == pytest.approx(
                e0 + (n1 + n2) * HBAR * ds.omega_tilde, rel=1e-14)

    def test_collective_term(self, si_config):
        # E - ladder = (hbar^2/2m)(sum k^2 - gamma |K|^2/N)
        ds = DerivedScales(si_config)
        idx = SpectrumIndex(0, 0, (2e8, 0.0), kinetic_sum=9e16, n_electrons=4)
        e = eigenenergy(idx, ds)
        expected = (HBAR * ds.omega_tilde
                    + HBAR**2 / (2 * M_E) * (9e16 - ds.gamma * 4e16 / 4))
        assert e == pytest.approx(expected, rel=1e-14)

    def test_zero_momentum_is_gamma_independent(self):
        # at K=0 the matter part is the free gas for every coupling
        idx = SpectrumIndex(0, 0, (0.0, 0.0), kinetic_sum=5e16, n_electrons=7)
        energies = []
        for ratio in (0.1, 1.0, 5.0):
            cfg = SystemConfig.si(10**8, 1e-8, 1e-6, mode_frequency=2e13 / ratio)
            ds = DerivedScales(cfg)
            energies.append(eigenenergy(idx, ds) - HBAR * ds.omega_tilde)
        assert np.ptp(energies) <= 1e-14 * abs(energies[0])


class TestNoDiamagneticTerm:
    def test_unbounded_collective_factor(self):
        # gamma' = (omega_p/omega)^2 exceeds 1 as soon as omega_p > omega
        idx = SpectrumIndex(0, 0, (1e8, 0.0), kinetic_sum=1e16, n_electrons=1)
        omega, omega_p = 1e13, 2e13
        e = eigenenergy_no_a2(idx, omega, omega_p)
        gamma_p = 4.0
        expected = (HBAR * omega
                    + HBAR**2 / (2 * M_E) * (1e16 - gamma_p * 1e16))
        assert e == pytest.approx(expected, rel=1e-14)

    def test_energy_unbounded_below(self):
        # single electron boosted harder and harder: E -> -infinity
        omega, omega_p = 1e13, 2e13
        energies = []
        for k in np.logspace(7, 10, 8):
            idx = SpectrumIndex(0, 0, (k, 0.0), kinetic_sum=k * k, n_electrons=1)
            energies.append(eigenenergy_no_a2(idx, omega, omega_p))
        assert all(b < a for a, b in zip(energies, energies[1:]))
        assert energies[-1] < -1e3 * abs(energies[0])

    def test_full_model_bounded_on_same_sequence(self):
        # with the diamagnetic term kept, the same boosts cost energy
        cfg = SystemConfig.si(10**8, 1e-8, 1e-6, mode_frequency=1e13)
        ds = DerivedScales(cfg)
        assert ds.gamma < 1.0
        energies = []
        for k in np.logspace(7, 10, 8):
            idx = SpectrumIndex(0, 0, (k, 0.0), kinetic_sum=k * k, n_electrons=1)
            energies.append(eigenenergy(idx, ds))
        assert all(b > a for a, b in zip(energies, energies[1:]))


class TestGroundPhotonOccupation:
    def test_decoupled_limit(self):
        assert ground_photon_occupation(2e13, 0.0) == 0.0

    def test_hand_value(self):
        # omega_t = 1.25, (0.25)^2 / (2 * 1 * 1.25) = 0.025
        assert ground_photon_occupation(1.0, 0.75) == pytest.approx(
            0.025, abs=1e-15)

    @given(st.floats(1e-2, 1e2), st.floats(1e-4, 1e3))
    def test_positive_when_coupled(self, omega, ratio):
        # ratio bounded away from sqrt(machine eps), where the dressed
        # shift genuinely rounds to zero
        assert ground_photon_occupation(omega, ratio * omega) > 0.0

    @given(st.floats(0.1, 10.0))
    def test_monotone_in_coupling(self, omega_p):
        n1 = ground_photon_occupation(1.0, omega_p)
        n2 = ground_photon_occupation(1.0, omega_p * 1.1)
        assert n2 > n1

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            ground_photon_occupation(0.0, 1.0)
        with pytest.raises(DomainError):
            ground_photon_occupation(1.0, -0.1)


class TestDiskOverlap:
    def test_partition_identity(self):
        # cells tiling the bounding square: overlaps must sum to pi R^2
        radius, n = 1.0, 37
        edges = np.linspace(-1.1, 1.1, n + 1)
        total = sum(
            _disk_cell_overlap(edges[i], edges[i + 1], edges[j], edges[j + 1],
                               radius)
            for i in range(n) for j in range(n))
        assert total == pytest.approx(math.pi, rel=1e-13)

    def test_against_chord_quadrature(self, rng):
        radius = 1.0
        for _ in range(40):
            x0, y0 = rng.uniform(-1.3, 1.2, size=2)
            w, h = rng.uniform(0.01, 0.6, size=2)
            area = _disk_cell_overlap(x0, x0 + w, y0, y0 + h, radius)
            oracle = overlap_quad_oracle(x0, x0 + w, y0, y0 + h, radius)
            assert area == pytest.approx(oracle, abs=1e-10)

    def test_trivial_cells(self):
        assert _disk_cell_overlap(2.0, 3.0, 0.0, 1.0, 1.0) == 0.0
        # cell fully inside
        assert _disk_cell_overlap(-0.1, 0.1, -0.1, 0.1, 1.0) == pytest.approx(
            0.04, rel=1e-14)
        # cell containing the whole disk
        assert _disk_cell_overlap(-2, 2, -2, 2, 1.0) == pytest.approx(
            math.pi, rel=1e-14)


class TestDiskMoments:
    def test_density_exact_by_construction(self):
        # the overlap areas tile the disk, so n_2d is exact at any resolution
        kf = 1.3
        for fill in (1.0, 2.0):
            m = distribution_moments(
                OccupancyGrid.disk(kf, fill=fill, cells_per_radius=32))
            assert m.n_2d == pytest.approx(fill * kf**2 / (4 * math.pi),
                                           rel=1e-12)
            assert math.hypot(*m.k_d) <= 1e-12 * kf * m.n_2d

    def test_kinetic_moment_value(self):
        kf = 1.3
        m = distribution_moments(OccupancyGrid.disk(kf, fill=2.0,
                                                    cells_per_radius=64))
        assert m.t_d == pytest.approx(kf**4 / (4 * math.pi), rel=1.5e-4)

    def test_kinetic_moment_second_order(self):
        kf = 1.3
        ref = kf**4 / (8 * math.pi)
        errs = []
        for cpr in (32, 64, 128):
            m = distribution_moments(
                OccupancyGrid.disk(kf, cells_per_radius=cpr))
            errs.append(abs(m.t_d - ref) / ref)
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert all(1.7 < o < 2.3 for o in orders)
        assert errs[-1] < 5e-5

    def test_energy_density_filled_disk(self):
        # singly-occupied Fermi disk: E/S = hbar^2 k_F^4 / (16 pi m_e)
        kf = math.sqrt(2 * math.pi * 1e16)
        m = distribution_moments(OccupancyGrid.disk(kf, cells_per_radius=128))
        e = energy_density(m, (0.0, 0.0), gamma=0.0)
        ref = HBAR**2 * kf**4 / (16 * math.pi * M_E)
        assert e == pytest.approx(ref, rel=5e-5)

    def test_moment_linearity_in_fill(self):
        kf = 0.9
        m1 = distribution_moments(OccupancyGrid.disk(kf, fill=0.7))
        m2 = distribution_moments(OccupancyGrid.disk(kf, fill=1.4))
        assert m2.n_2d == pytest.approx(2 * m1.n_2d, rel=1e-13)
        assert m2.t_d == pytest.approx(2 * m1.t_d, rel=1e-13)


class TestShiftedDisk:
    CENTER = (0.25, -0.125)  # integer number of cells for radius=1, cpr=32

    def grids(self):
        kw = dict(radius=1.0, cells_per_radius=32, fill=2.0)
        return (OccupancyGrid.disk(center=(0.0, 0.0), **kw),
                OccupancyGrid.disk(center=self.CENTER, **kw))

    def test_universal_lattice_translation(self):
        # shifting by whole cells must reproduce identical occupancies
        g0, g1 = self.grids()
        assert np.array_equal(np.sort(g0.f, axis=None),
                              np.sort(g1.f, axis=None))
        m0, m1 = distribution_moments(g0), distribution_moments(g1)
        assert m1.n_2d == pytest.approx(m0.n_2d, rel=1e-13)

    def test_optimal_origin_recovers_center(self):
        _, g1 = self.grids()
        q0 = optimal_origin(distribution_moments(g1))
        assert q0[0] == pytest.approx(-self.CENTER[0], rel=1e-12)
        assert q0[1] == pytest.approx(-self.CENTER[1], rel=1e-12)

    def test_optimal_energy_gamma_independent(self):
        # at the optimal boost the collective term vanishes identically
        _, g1 = self.grids()
        m = distribution_moments(g1)
        q0 = optimal_origin(m)
        vals = [energy_density(m, q0, g) for g in (0.0, 0.3, 0.7, 0.999)]
        assert np.ptp(vals) <= 1e-12 * abs(vals[0])

    def test_optimal_origin_is_minimum(self, rng):
        _, g1 = self.grids()
        m = distribution_moments(g1)
        q0 = optimal_origin(m)
        e0 = energy_density(m, q0, 0.6)
        for _ in range(25):
            q = (q0[0] + rng.normal(0, 0.5), q0[1] + rng.normal(0, 0.5))
            assert energy_density(m, q, 0.6) >= e0 - 1e-15 * abs(e0)

    def test_quadratic_curvature(self):
        # E(q0 + d) - E(q0) = (hbar^2/2m)(1 - gamma) n d^2 exactly
        _, g1 = self.grids()
        m = distribution_moments(g1)
        q0 = optimal_origin(m)
        gamma, d = 0.4, 0.37
        lift = (energy_density(m, (q0[0] + d, q0[1]), gamma)
                - energy_density(m, q0, gamma))
        ref = HBAR**2 / (2 * M_E) * (1 - gamma) * m.n_2d * d * d
        assert lift == pytest.approx(ref, rel=1e-10)


class TestInstabilityWitness:
    def make_moments(self):
        return distribution_moments(OccupancyGrid.disk(1.0, fill=2.0,
                                                       cells_per_radius=32))

    def test_subcritical_rejected(self):
        with pytest.raises(PreconditionError):
            instability_witness(self.make_moments(), 0.9, [0.0, 1.0])

    def test_supercritical_energies_decrease_without_bound(self):
        m = self.make_moments()
        qx = np.linspace(0.0, 50.0, 40)
        for gamma in (1.01, 1.5, 3.0):
            e = instability_witness(m, gamma, qx)
            assert np.all(np.diff(e) < 0.0)
            # asymptotically E ~ -(gamma-1) q^2: ten times the boost must
            # deepen the energy by about a hundred
            deep = instability_witness(m, gamma, [50.0, 500.0])
            assert deep[1] < 50.0 * deep[0] < 0.0

    def test_critical_sequence_flat(self):
        m = self.make_moments()
        e = instability_witness(m, 1.0, np.linspace(0.0, 50.0, 20))
        assert np.ptp(e) <= 1e-9 * abs(e[0])


class TestEnergyDensityGuards:
    def test_negative_gamma(self):
        m = DistributionMoments = distribution_moments(OccupancyGrid.disk(1.0))
        with pytest.raises(DomainError):
            energy_density(m, (0.0, 0.0), -0.1)

    def test_empty_distribution(self):
        from cavity2deg import DistributionMoments

        m = DistributionMoments(t_d=0.0, k_d=(0.0, 0.0), n_2d=0.0)
        with pytest.raises(DomainError):
            energy_density(m, (0.0, 0.0), 0.5)
        with pytest.raises(DomainError):
            optimal_origin(m)


class TestOccupancyGridIO:
    def test_csv_round_trip_exact(self, tmp_path):
        g = OccupancyGrid.disk(1.0, center=(0.25, -0.125), fill=1.7,
                               cells_per_radius=16)
        path = tmp_path / "disk.csv"
        g.to_csv(path)
        back = OccupancyGrid.from_csv(path)
        assert np.array_equal(g.kx, back.kx)
        assert np.array_equal(g.ky, back.ky)
        assert np.array_equal(g.f, back.f)

    def test_csv_round_trip_stream(self):
        g = OccupancyGrid.disk(0.8, cells_per_radius=8)
        buf = io.StringIO()
        g.to_csv(buf)
        buf.seek(0)
        back = OccupancyGrid.from_csv(buf)
        assert np.array_equal(g.f, back.f)

    def test_bad_header_rejected(self):
        with pytest.raises(DomainError, match="header"):
            OccupancyGrid.from_csv(io.StringIO("a,b,c\n1,2,3\n"))

    def test_incomplete_grid_rejected(self):
        text = "kx,ky,f\n0.0,0.0,1.0\n0.0,1.0,1.0\n1.0,0.0,1.0\n"
        with pytest.raises(DomainError, match="complete"):
            OccupancyGrid.from_csv(io.StringIO(text))


class TestOccupancyGridValidation:
    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            OccupancyGrid(np.arange(3.0), np.arange(4.0), np.zeros((3, 3)))

    def test_nonuniform_axis(self):
        kx = np.array([0.0, 1.0, 2.5])
        with pytest.raises(DomainError):
            OccupancyGrid(kx, np.arange(2.0), np.zeros((3, 2)))

    def test_occupancy_clipped(self):
        g = OccupancyGrid(np.arange(2.0), np.arange(2.0),
                          np.array([[3.0, -1.0], [0.5, 2.0]]))
        assert g.f.max() == 2.0
        assert g.f.min() == 0.0

    def test_single_cell_has_no_spacing(self):
        g = OccupancyGrid(np.array([0.0]), np.array([0.0]), np.ones((1, 1)))
        with pytest.raises(DomainError):
            g.spacing

    def test_disk_guards(self):
        with pytest.raises(DomainError):
            OccupancyGrid.disk(-1.0)
        with pytest.raises(DomainError):
            OccupancyGrid.disk(1.0, fill=2.5)
        with pytest.raises(DomainError):
            OccupancyGrid.disk(1.0, cells_per_radius=1)
