#!/usr/bin/env python3
"""Optical conductivity of the coupled gas on a frequency grid.

Writes Re/Im sigma(w) for a few broadenings around the polariton
resonance and prints the dc summary: the suppressed plateau
sigma_dc = sigma0 (1 - gamma) and the heavier Drude mass.
"""
import argparse
from pathlib import Path

import numpy as np

from cavity2deg import (BroadenedFrequency, DerivedScales, SystemConfig,
                        dc_conductivity, drude_effective_mass,
                        optical_conductivity, sigma0_dc)
from cavity2deg.io_utils import write_csv


def parse_args():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--electrons", type=float, default=1e8)
    p.add_argument("--area", type=float, default=1e-8, help="sample area, m^2")
    p.add_argument("--gap", type=float, default=1e-6, help="mirror gap, m")
    p.add_argument("--mode-frequency", type=float, default=2e13,
                   help="cavity frequency, rad/s")
    p.add_argument("--points", type=int, default=1201)
    p.add_argument("--out", type=Path,
                   default=Path("out/conductivity_spectrum.csv"))
    return p.parse_args()


def main():
    args = parse_args()
    cfg = SystemConfig.si(int(args.electrons), args.area, args.gap,
                          mode_frequency=args.mode_frequency)
    sc = DerivedScales(cfg)
    wt = sc.omega_tilde

    grid = np.linspace(0.0, 3.0 * wt, args.points)
    etas = (0.003 * wt, 0.01 * wt, 0.03 * wt)
    rows = []
    for w in grid:
        row = [w / wt]
        for eta in etas:
            s = optical_conductivity(BroadenedFrequency(float(w), eta), sc)
            row.extend((s.re, s.im))
        rows.append(tuple(row))

    header = ["w_over_omega_tilde"]
    for eta in etas:
        tag = f"{eta / wt:.3f}"
        header.extend((f"re_sigma_eta{tag}", f"im_sigma_eta{tag}"))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(args.out, header, rows)

    eta = etas[0]
    s0 = sigma0_dc(sc, eta)
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"omega_p = {sc.omega_p:.4e} rad/s, omega~ = {wt:.4e} rad/s,"
          f" gamma = {sc.gamma:.5f}")
    print(f"sigma0 = {s0:.4e} S, sigma_dc = {dc_conductivity(sc.gamma, s0):.4e} S"
          f" (ratio {1 - sc.gamma:.5f})")
    print(f"Drude mass m*/m_e = {drude_effective_mass(sc.gamma) / 9.1093837015e-31:.6f}")


if __name__ == "__main__":
    main()
