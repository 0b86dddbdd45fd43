"""Command-line front end.

Every subcommand prints a JSON report to stdout (infinities rendered as
the string ``"inf"`` since strict JSON has no such literal) and uses exit
codes: 0 success, 1 domain failure, 2 usage error.
"""

from __future__ import annotations

import json
import math
import sys
from typing import Any

import click

from . import __version__
from .embeddings import optimize_embedding
from .errors import GapscopeError
from .graphs import (
    StochasticMatrix,
    complete_graph,
    cycle_graph,
    hypercube_graph,
    margulis_graph,
    random_regular_graph,
    read_edge_list,
    write_edge_list,
)
from .io import read_matrix_csv, read_points_csv, read_space_json, write_points_csv
from .metrics import FiniteMetric, counting_lower_bound, shortest_path_metric
from .norms import convexity_estimate, hilbert_distance, smoothness_estimate
from .optimize import OptimizerConfig
from .pipelines import BOUND_NAMES, evaluate_named_bound, load_config, run_pipeline
from .poincare import PointConfig, maximize_poincare_ratio, poincare_ratio
from .spectral import full_spectrum


def _real(x: float) -> Any:
    """JSON-safe real: infinities become the string "inf"."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _emit(payload: dict[str, Any]) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


class _Group(click.Group):
    """Click group that converts library failures into exit code 1."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except GapscopeError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_Group)
@click.version_option(version=__version__, prog_name="gapscope")
def main() -> None:
    """Spectral gaps, Poincare ratios, metric embeddings, and their bounds."""


# --------------------------------------------------------------------------


@main.command()
@click.option("--family", required=True,
              type=click.Choice(["cycle", "complete", "hypercube", "random-regular", "margulis"]))
@click.option("--n", type=int, default=None, help="Vertex count (power of two for hypercube).")
@click.option("--k", type=int, default=None, help="Degree, for random-regular.")
@click.option("--m", type=int, default=None, help="Torus side, for margulis (n = m^2).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def gen(family: str, n: int | None, k: int | None, m: int | None, seed: int, out: str) -> None:
    """Generate a named graph family and write its edge list."""
    if family == "margulis":
        if m is None:
            raise click.UsageError("--family margulis requires --m")
        g = margulis_graph(m)
    else:
        if n is None:
            raise click.UsageError(f"--family {family} requires --n")
        if family == "cycle":
            g = cycle_graph(n)
        elif family == "complete":
            g = complete_graph(n)
        elif family == "hypercube":
            if n < 2 or n & (n - 1):
                raise click.UsageError(f"hypercube --n must be a power of two >= 2, got {n}")
            g = hypercube_graph(n.bit_length() - 1)
        else:
            if k is None:
                raise click.UsageError("--family random-regular requires --k")
            g = random_regular_graph(n, k, seed=seed)
    write_edge_list(g, out)
    _emit({"family": family, "n": g.n, "k": g.k, "edges": g.edge_count, "out": out})


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--full", is_flag=True, help="Include the full eigenvalue list.")
def spectrum(matrix_path: str, full: bool) -> None:
    """Eigenvalue report for a symmetric stochastic matrix CSV."""
    a = StochasticMatrix(read_matrix_csv(matrix_path))
    spec = full_spectrum(a)
    payload: dict[str, Any] = {
        "n": a.n,
        "lambda2": _real(spec.eigenvalues[1]),
        "gap": _real(spec.gap),
        "residual": _real(spec.residual),
    }
    if full:
        payload["eigenvalues"] = [_real(w) for w in spec.eigenvalues]
    _emit(payload)


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def metric(graph_path: str, out: str) -> None:
    """Shortest-path metric of an edge-list graph, written as a distance CSV."""
    g = read_edge_list(graph_path)
    m = shortest_path_metric(g)
    write_points_csv(out, m.dist)
    _emit({
        "n": m.n,
        "diameter": _real(m.diameter),
        "avg_distance": _real(m.avg_distance),
        "counting_bound": _real(counting_lower_bound(g.n, g.k)) if g.k >= 3 else None,
        "out": out,
    })


@main.command()
@click.option("--space", "space_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--op", required=True,
              type=click.Choice(["hilbert-distance", "smoothness", "convexity"]))
@click.option("--p", type=float, default=2.0, show_default=True,
              help="Smoothness exponent in [1, 2].")
@click.option("--q", type=float, default=2.0, show_default=True,
              help="Convexity exponent >= 2.")
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def norms(space_path: str, op: str, p: float, q: float, trials: int, seed: int) -> None:
    """Geometric constants of a normed space: Euclidean distance, smoothness, convexity."""
    space = read_space_json(space_path)
    if op == "hilbert-distance":
        rep = hilbert_distance(space, samples=max(trials, 1) * 50, seed=seed)
        _emit({"op": op, "kind": space.kind, "dim": space.dim,
               "lower": _real(rep.lower), "upper": _real(rep.upper), "method": rep.method})
    elif op == "smoothness":
        est = smoothness_estimate(space, p, trials=trials, seed=seed)
        _emit({"op": op, "kind": space.kind, "dim": space.dim, "p": est.p,
               "s_lower": _real(est.s_lower),
               "witness_x": list(map(_real, est.witness_x)),
               "witness_y": list(map(_real, est.witness_y))})
    else:
        est = convexity_estimate(space, q, trials=trials, seed=seed)
        _emit({"op": op, "kind": space.kind, "dim": space.dim, "q": est.q,
               "k_lower": _real(est.k_lower),
               "witness_x": list(map(_real, est.witness_x)),
               "witness_y": list(map(_real, est.witness_y))})


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--space", "space_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--p", type=float, default=2.0, show_default=True)
@click.option("--points", "points_path", type=click.Path(exists=True, dir_okay=False),
              help="Evaluate this configuration (CSV, one point per row).")
@click.option("--maximize", is_flag=True, help="Search for a ratio-maximizing configuration.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--steps", type=int, default=2000, show_default=True)
def poincare(matrix_path: str, space_path: str, p: float, points_path: str | None,
             maximize: bool, seed: int, restarts: int, steps: int) -> None:
    """Poincare ratio of a configuration, or an adversarial maximization."""
    if maximize == (points_path is not None):
        raise click.UsageError("give exactly one of --points or --maximize")
    a = StochasticMatrix(read_matrix_csv(matrix_path))
    space = read_space_json(space_path)
    if points_path is not None:
        cfg = PointConfig(points=read_points_csv(points_path), space=space)
        rep = poincare_ratio(a, cfg, p)
        _emit({"mode": "evaluate", "n": a.n, "p": rep.exponent, "ratio": _real(rep.ratio),
               "numerator": _real(rep.numerator), "denominator": _real(rep.denominator)})
    else:
        opt = OptimizerConfig(restarts=restarts, steps=steps, seed=seed)
        _, rep = maximize_poincare_ratio(a, space, p, opt)
        _emit({"mode": "maximize", "n": a.n, "p": rep.exponent, "ratio": _real(rep.ratio),
               "numerator": _real(rep.numerator), "denominator": _real(rep.denominator),
               "restarts": restarts, "steps": steps, "seed": seed})


@main.command()
@click.option("--name", required=True, type=click.Choice(list(BOUND_NAMES)))
@click.option("--inputs", "inputs_json", required=True,
              help='Named inputs as inline JSON, e.g. \'{"n": 256, "lambda2": 0.9, "ratio": 4.0}\'.')
@click.option("--constant", type=float, default=None,
              help="Value for the bound's universal-constant slot (default 1).")
def bound(name: str, inputs_json: str, constant: float | None) -> None:
    """Evaluate a named closed-form bound on explicit inputs."""
    try:
        inputs = json.loads(inputs_json)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"--inputs is not valid JSON: {exc}") from exc
    if not isinstance(inputs, dict):
        raise click.UsageError("--inputs must be a JSON object of named reals")
    rep = evaluate_named_bound(name, inputs, constant)
    _emit({
        "name": rep.name,
        "inputs": {key: _real(val) for key, val in rep.inputs.items()},
        "value": _real(rep.value),
        "constant_used": _real(rep.constant_used),
        "case_taken": rep.case_taken,
        "aux": {key: _real(val) for key, val in rep.aux.items()},
    })


_OBJECTIVES = {"distortion": "distortion", "avg": "average_distortion",
               "ratio": "pairs_rms_subject_to_edge_rms"}


@main.command()
@click.option("--metric", "metric_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Distance matrix CSV.")
@click.option("--space", "space_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--objective", required=True, type=click.Choice(list(_OBJECTIVES)))
@click.option("--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False),
              help="Stochastic matrix CSV (required for --objective ratio).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True),
              help="Where to write the optimized image configuration CSV.")
def embed(metric_path: str, space_path: str, objective: str, matrix_path: str | None,
          seed: int, restarts: int, out: str) -> None:
    """Optimize an embedding of a finite metric into a normed space."""
    m = FiniteMetric(read_matrix_csv(metric_path))
    space = read_space_json(space_path)
    a = StochasticMatrix(read_matrix_csv(matrix_path)) if matrix_path else None
    if objective == "ratio" and a is None:
        raise click.UsageError("--objective ratio requires --matrix")
    opt = OptimizerConfig(restarts=restarts, seed=seed)
    emb, rep = optimize_embedding(m, space, _OBJECTIVES[objective], a=a, opt=opt)
    write_points_csv(out, emb.image.points)
    payload = {
        "objective": objective,
        "n": m.n,
        "space": {"kind": space.kind, "dim": space.dim},
        "lipschitz": _real(rep.lipschitz),
        "contraction": _real(rep.contraction),
        "distortion": _real(rep.distortion),
        "average_distortion": _real(rep.average_distortion),
        "out": out,
    }
    if rep.edge_rms is not None:
        payload["edge_rms"] = _real(rep.edge_rms)
        payload["pairs_rms"] = _real(rep.pairs_rms)
    _emit(payload)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("--jobs", type=int, default=1, show_default=True)
def run(config_path: str, seed: int | None, jobs: int) -> None:
    """Run a named pipeline from a TOML config; exit 0 only if every instance succeeds."""
    cfg = load_config(config_path, seed_override=seed)
    report = run_pipeline(cfg, jobs=jobs)
    _emit({
        "pipeline": report.pipeline,
        "seed": report.seed,
        "status": report.summary["status"],
        "output_dir": str(report.output_dir),
        "n_rows": len(report.rows),
        "n_failed": report.n_failed,
        "wall_time_s": report.wall_time_s,
    })
    if not report.all_ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
