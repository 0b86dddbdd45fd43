"""Geometry of the shipped norm descriptors.

Three measurements per space: distance to the nearest Euclidean structure,
an empirical smoothness constant, and an empirical convexity constant.
Polytope norms are the interesting case: flat facets make the convexity
constant genuinely infinite, and the estimator certifies that instead of
papering over it.
"""

import math

import numpy as np

from gapscope.norms import (
    convexity_estimate,
    hilbert_distance,
    lp_space,
    mvee_ellipsoid,
    polytope_space,
    smoothness_estimate,
)

SQUARE = polytope_space(np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]))


def describe(label, space):
    hd = hilbert_distance(space, seed=1)
    s = smoothness_estimate(space, 2.0, trials=400, seed=1)
    c = convexity_estimate(space, 2.0, trials=400, seed=1)
    k = "inf" if math.isinf(c.k_lower) else f"{c.k_lower:.4f}"
    print(f"  {label:<18} d_X in [{hd.lower:.4f}, {hd.upper:.4f}] ({hd.method})"
          f"   s_2 >= {s.s_lower:.4f}   K_2 >= {k}")


def main():
    print("how far from Euclidean, how smooth, how convex:")
    describe("l2^4", lp_space(4, 2.0))
    describe("l4^3", lp_space(3, 4.0))
    describe("l1^2", lp_space(2, 1.0))
    describe("linf^4", lp_space(4, float("inf")))
    describe("square polytope", SQUARE)

    print("\nBanach-Mazur check: d(l_p^n, l_2^n) = n^|1/p - 1/2|")
    for n, p in ((4, 1.0), (9, 4.0), (16, float("inf"))):
        hd = hilbert_distance(lp_space(n, p), seed=0)
        inv_p = 0.0 if math.isinf(p) else 1.0 / p
        print(f"  n={n:<3} p={p:<5} -> [{hd.lower:.4f}, {hd.upper:.4f}]"
              f"   closed form {n ** abs(inv_p - 0.5):.4f}")

    print("\nminimum volume ellipsoid of the square's corners:")
    shape, residual = mvee_ellipsoid(np.asarray(SQUARE.vertices, dtype=float))
    print(f"  shape matrix =\n{shape}")
    print(f"  residual gap = {residual:.2e} (0 means the cap never triggered)")


if __name__ == "__main__":
    main()
