"""Spectra of the built-in graph families against their closed forms.

Each family here has a textbook second eigenvalue, so this doubles as a
smoke test for the eigensolver: the printed error column should sit at
rounding noise.
"""

import math

from gapscope.graphs import (
    complete_graph,
    cycle_graph,
    hypercube_graph,
    margulis_graph,
    normalized_adjacency,
    random_regular_graph,
)
from gapscope.spectral import second_eigenvalue


def row(label, graph, expected=None):
    lam = second_eigenvalue(normalized_adjacency(graph))
    gap = 1.0 - lam
    err = "" if expected is None else f"  err={abs(lam - expected):.2e}"
    print(f"  {label:<24} n={graph.n:<5} k={graph.k:<3} "
          f"lambda2={lam:+.6f}  gap={gap:.6f}{err}")


def main():
    print("cycles: lambda2 = cos(2*pi/n), gap shrinks like 2*pi^2/n^2")
    for n in (4, 8, 16, 64):
        row(f"cycle n={n}", cycle_graph(n), math.cos(2 * math.pi / n))

    print("\ncomplete graphs: lambda2 = -1/(n-1), the gap saturates at 1")
    for n in (3, 5, 17):
        row(f"complete n={n}", complete_graph(n), -1.0 / (n - 1))

    print("\nhypercubes: lambda2 = 1 - 2/d, a gap that decays only linearly")
    for d in (3, 6, 9):
        row(f"hypercube d={d}", hypercube_graph(d), 1.0 - 2.0 / d)

    print("\nexpanders: no closed form, but the gap stays bounded away from 0")
    for m in (6, 12):
        row(f"margulis m={m}", margulis_graph(m))
    for seed in (0, 1):
        row(f"random 4-reg seed={seed}", random_regular_graph(256, 4, seed=seed))


if __name__ == "__main__":
    main()
