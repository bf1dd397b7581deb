"""Brute-force size of the resonance denominators over the sampled non-resonant support.

Usage: python scripts/resonance_map.py [--alphas 0.5 1 2]
"""

import argparse

from zakharov_radial.interactions import resonance_scan


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--alphas", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    a = p.parse_args()
    print(f"{'which':>12} {'alpha':>6} {'c_min':>10} {'c_max':>10} {'points':>7}")
    for which in ("omega", "omega_tilde"):
        for alpha in a.alphas:
            s = resonance_scan(alpha, which)
            print(f"{which:>12} {alpha:6g} {s.c_min:10.6f} {s.c_max:10.6f} {s.n_points:7d}")


if __name__ == "__main__":
    main()
