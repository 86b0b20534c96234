#!/usr/bin/env python3
"""Sweep the coupling ratio and tabulate the collective scales.

For each omega_p/omega the script records the dressed frequency, the
dimensionless coupling gamma, the phase label, and the ground-state
photon occupation, then reports where the critical boundary sits.
"""
import argparse
from pathlib import Path

import numpy as np

from cavity2deg import (DerivedScales, SystemConfig, classify_phase,
                        ground_photon_occupation)
from cavity2deg.io_utils import write_csv


def parse_args():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ratio-max", type=float, default=4.0,
                   help="largest omega_p/omega to scan")
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--out", type=Path, default=Path("out/phase_scan.csv"))
    return p.parse_args()


def main():
    args = parse_args()
    ratios = np.linspace(0.0, args.ratio_max, args.points)
    rows = []
    for r in ratios:
        sc = DerivedScales(SystemConfig.from_ratio(float(r)))
        wt = sc.omega_tilde_over_omega
        occ = ground_photon_occupation(1.0, float(r)) if r > 0 else 0.0
        rows.append((r, wt, sc.gamma, classify_phase(sc.gamma).value, occ))

    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(args.out,
              ["ratio", "omega_tilde_over_omega", "gamma", "phase",
               "photon_occupation"], rows)

    gammas = np.array([row[2] for row in rows])
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"gamma spans [{gammas[0]:.4f}, {gammas[-1]:.4f}];"
          f" always below 1: {bool(np.all(gammas < 1.0))}")
    # gamma = r^2/(1+r^2) saturates: no ratio drives the gas unstable
    print("occupation at the last point:"
          f" {rows[-1][4]:.4f} (cap 2 per mode pair)")


if __name__ == "__main__":
    main()
