#!/usr/bin/env python3
"""Independent evaluation of the series convergence radius.

Usage: radius_oracle.py MU NU K1DAG_NORM
Prints r = (2 mu (sqrt(16 C^2 + 1) + 4 C))^{-1} with C = max(2, nu * k1dag_norm)
at full double precision.
"""
import math
import sys


def main() -> int:
    if len(sys.argv) != 4:
        print("usage: radius_oracle.py MU NU K1DAG_NORM", file=sys.stderr)
        return 2
    mu, nu, knorm = (float(a) for a in sys.argv[1:4])
    c = max(2.0, nu * knorm)
    r = 1.0 / (2.0 * mu * (math.sqrt(16.0 * c * c + 1.0) + 4.0 * c))
    print(repr(r))
    return 0


if __name__ == "__main__":
    sys.exit(main())
