"""Mass and energy drift of the Strang integrator under step halving.

Usage: python scripts/conservation.py [--R 80] [--N 1024] [--T 10] [--eps0 0.01]
"""

import argparse
import logging

import numpy as np

from zakharov_radial.radial_spectral import make_grid
from zakharov_radial.solver import StepperConfig, initial_data_family, simulate


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--R", type=float, default=80.0)
    p.add_argument("--N", type=int, default=1024)
    p.add_argument("--T", type=float, default=10.0)
    p.add_argument("--eps0", type=float, default=0.01)
    p.add_argument("--dt", type=float, nargs="+", default=[4e-3, 2e-3, 1e-3])
    a = p.parse_args()
    logging.basicConfig(level=logging.ERROR)
    grid = make_grid(a.R, a.N)
    data = initial_data_family("gaussian", grid, a.eps0)
    prev = None
    print(f"{'dt':>8} {'mass drift':>12} {'energy drift':>13} {'ratio':>7}")
    for dt in a.dt:
        s = simulate(data, 1.0, StepperConfig(dt=dt, T=a.T, sample_every=max(1, int(round(0.1 / dt)))))
        m, e = s.diagnostics["mass"], s.diagnostics["energy"]
        dm = np.max(np.abs(m - m[0])) / m[0]
        de = np.max(np.abs(e - e[0])) / abs(e[0])
        ratio = f"{prev / de:7.3f}" if prev else " " * 7
        print(f"{dt:8.1e} {dm:12.3e} {de:13.3e} {ratio}")
        prev = de


if __name__ == "__main__":
    main()
