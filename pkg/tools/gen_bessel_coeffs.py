#!/usr/bin/env python3
"""Regenerate the frozen Chebyshev tables in frontforge/_bessel_coeffs.py.

The correction factor g_nu(s) = sqrt(s)*exp(s)*K_nu(s) is interpolated at
Chebyshev nodes on two ranges (SLATEC-style variable maps):

    range A: s in [2, 8],    zeta = (16/s - 5)/3
    range B: s in [8, inf),  zeta = 16/s - 1

Node values come from trapezoid quadrature of the integral representation
(see tests/oracles.py) -- no external special-function library is involved,
so the frozen tables inherit only quadrature-oracle provenance.

Run from the repository root:  python3 tools/gen_bessel_coeffs.py
"""

from __future__ import annotations

import math
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))
from oracles import bessel_k_scaled_quadrature  # noqa: E402

N_NODES = 48
TRUNC = 1e-16


def scaled_correction(nu: int, s: float) -> float:
    return math.sqrt(s) * bessel_k_scaled_quadrature(nu, s, n=8000)


def cheb_coeffs(fun, n: int) -> np.ndarray:
    k = np.arange(n)
    zeta = np.cos(math.pi * (k + 0.5) / n)
    vals = np.array([fun(z) for z in zeta])
    j = np.arange(n)[:, None]
    c = 2.0 / n * (vals[None, :] * np.cos(j * math.pi * (k[None, :] + 0.5) / n)).sum(axis=1)
    keep = n
    while keep > 1 and abs(c[keep - 1]) < TRUNC * abs(c[0]):
        keep -= 1
    return c[:keep]


def main() -> None:
    def s_of_zeta_a(z: float) -> float:
        return 16.0 / (3.0 * z + 5.0)

    def s_of_zeta_b(z: float) -> float:
        return 16.0 / (z + 1.0)

    tables = {}
    for nu in (0, 1):
        tables[f"K{nu}_MID"] = cheb_coeffs(lambda z: scaled_correction(nu, s_of_zeta_a(z)), N_NODES)
        tables[f"K{nu}_FAR"] = cheb_coeffs(lambda z: scaled_correction(nu, s_of_zeta_b(z)), N_NODES)

    out = os.path.join(os.path.dirname(__file__), "..", "src", "frontforge", "_bessel_coeffs.py")
    with open(out, "w") as fh:
        fh.write('"""Frozen Chebyshev tables for the large-argument Bessel correction.\n\n')
        fh.write("Generated by tools/gen_bessel_coeffs.py from the integral-representation\n")
        fh.write("quadrature oracle; do not edit by hand.\n")
        fh.write('"""\n\nimport numpy as np\n\n')
        for name, coeffs in tables.items():
            fh.write(f"{name} = np.array([\n")
            for v in coeffs:
                fh.write(f"    {v!r},\n")
            fh.write("])\n\n")
    print(f"wrote {out}")
    for name, coeffs in tables.items():
        print(f"  {name}: {len(coeffs)} coefficients, head {coeffs[0]:.6e}, tail {coeffs[-1]:.3e}")


if __name__ == "__main__":
    main()
