"""Run every estimate report and print one summary line per report.

Usage: python scripts/verify_estimates.py [--seed 0] [--count 50] [--out estimates.json]
"""

import argparse

from zakharov_radial.estimates import verify_all
from zakharov_radial.persistence import write_json


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--out", default="estimates.json")
    a = p.parse_args()
    reports = verify_all(seed=a.seed, count=a.count)
    for r in reports:
        print(f"{'ok  ' if r.passed else 'FAIL'} {r.lemma:<40} max {r.max_ratio:10.4g} "
              f"median {r.median_ratio:10.4g} refinement x{r.refinement_factor:.3f}")
    write_json({"seed": a.seed, "count": a.count, "reports": [r.to_dict() for r in reports]}, a.out)


if __name__ == "__main__":
    main()
