"""Embedding the 4-cycle in the plane: baselines, then the optimizer.

The 4-cycle is the classic small metric with a known planar optimum: no
Euclidean embedding beats distortion sqrt(2), and the unit square attains
it. The two constructive baselines land above that, the local search should
land on it.
"""

import math

import numpy as np

from gapscope.embeddings import (
    Embedding,
    OptimizerConfig,
    PointConfig,
    evaluate_embedding,
    frechet_embedding,
    optimize_embedding,
    simplex_embedding,
)
from gapscope.graphs import cycle_graph
from gapscope.metrics import shortest_path_metric
from gapscope.norms import lp_space


def main():
    metric = shortest_path_metric(cycle_graph(4))

    fre = evaluate_embedding(frechet_embedding(metric))
    sim = evaluate_embedding(simplex_embedding(metric))
    print(f"frechet (sup-norm columns): distortion={fre.distortion:.6f}")
    print(f"simplex (l1 corners):       distortion={sim.distortion:.6f}")

    plane = lp_space(2, 2.0)
    emb, rep = optimize_embedding(
        metric, plane, "distortion",
        opt=OptimizerConfig(restarts=8, steps=800, seed=0))
    print(f"\noptimized into the Euclidean plane:")
    print(f"  distortion = {rep.distortion:.9f}   target sqrt(2) = {math.sqrt(2):.9f}")
    print(f"  lipschitz  = {rep.lipschitz:.6f}   contraction = {rep.contraction:.6f}")
    print("  points:")
    for pt in emb.image.points:
        print(f"    ({pt[0]:+.4f}, {pt[1]:+.4f})")

    # the known optimum for comparison: corners of a unit square
    square = Embedding(metric, PointConfig(
        np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]), plane))
    print(f"\nunit square corners (known optimum): "
          f"distortion={evaluate_embedding(square).distortion:.9f}")

    emb2, rep2 = optimize_embedding(
        metric, plane, "average_distortion",
        opt=OptimizerConfig(restarts=8, steps=800, seed=0))
    print(f"\naverage distortion objective instead: {rep2.average_distortion:.9f}"
          f"   (optimum 4/(2+sqrt(2)) = {4 / (2 + math.sqrt(2)):.9f})")


if __name__ == "__main__":
    main()
