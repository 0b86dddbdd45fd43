"""Named experiment pipelines behind ``gapscope run``.

A pipeline is a seeded sweep over instances (graphs, grid points, ...)
that writes three artifacts into the configured output directory:

* ``rows.jsonl``   - one JSON object per report row, in instance order;
* ``summary.json`` - config echo, counts, min/median/max statistics,
  wall time, and the library version;
* ``plot.csv``     - the numeric columns a plotting tool would want.

Rows never contain wall-clock data, and every random choice is derived
from the config seed, so rerunning a config reproduces ``rows.jsonl``
and ``plot.csv`` byte for byte.  Instances may run in parallel; row
order is fixed by instance index, not completion order.  A failing
instance produces a row with ``status = "error"`` instead of killing
the sweep.
"""

from __future__ import annotations

import csv
import itertools
import json
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .bounds import (
    BoundReport,
    dimension_lower_bound,
    distortion_lower_vs_dx,
    dx_lower_bound,
    effective_constant,
    expander_dim_exponent,
    hilbert_isomorph_gamma_bound,
    matousek_extrapolation_profile,
    sp_gamma_bound,
    vertex_transitive_dim_bound,
)
from .embeddings import evaluate_embedding, frechet_embedding, optimize_embedding, simplex_embedding
from .errors import GapscopeError, InvalidParameterError, NumericalFailureError
from .graphs import (
    RegularGraph,
    complete_graph,
    cycle_graph,
    hypercube_graph,
    margulis_graph,
    normalized_adjacency,
    random_regular_graph,
)
from .io import format_float
from .metrics import shortest_path_metric
from .norms import NormedSpace, lp_space, space_from_dict, space_to_dict
from .optimize import OptimizerConfig
from .poincare import PointConfig, gamma_line_exact, maximize_poincare_ratio, poincare_ratio
from .spectral import second_eigenvalue, second_eigenvector

__all__ = [
    "PIPELINES",
    "ExperimentConfig",
    "ExperimentReport",
    "load_config",
    "config_from_dict",
    "run_pipeline",
    "evaluate_named_bound",
    "BOUND_NAMES",
]

PIPELINES = (
    "verify-line-gamma",
    "expander-obstruction",
    "matousek-profile",
    "bound-sweep",
    "embed-benchmark",
)

#: Relative tolerance for the automatic recompute spot check on report rows.
SPOT_CHECK_RTOL = 1e-12
#: Number of rows re-derived from first principles after every run.
SPOT_CHECK_ROWS = 5

_GRAPH_FAMILIES = ("cycle", "complete", "hypercube", "random-regular", "margulis")

_OPTIMIZER_KEYS = ("restarts", "steps", "step_size", "shrink", "tol")

_EMBED_OBJECTIVES = ("distortion", "average_distortion")


# --------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class GraphSpec:
    """One ``[[graphs]]`` table: a family plus its size parameters."""

    family: str
    n: int | None = None
    k: int | None = None
    m: int | None = None
    count: int = 1

    def __post_init__(self) -> None:
        if self.family not in _GRAPH_FAMILIES:
            raise InvalidParameterError(
                f"unknown graph family {self.family!r}; expected one of {_GRAPH_FAMILIES}"
            )
        if self.count < 1:
            raise InvalidParameterError(f"count must be >= 1, got {self.count}")
        needs = {"cycle": ("n",), "complete": ("n",), "hypercube": ("n",),
                 "random-regular": ("n", "k"), "margulis": ("m",)}[self.family]
        for key in needs:
            if getattr(self, key) is None:
                raise InvalidParameterError(f"graph family {self.family!r} requires {key!r}")
        if self.family == "hypercube":
            n = int(self.n)
            if n < 2 or n & (n - 1):
                raise InvalidParameterError(f"hypercube size must be a power of two >= 2, got {n}")
        if self.family != "random-regular" and self.count != 1:
            raise InvalidParameterError(f"count > 1 only makes sense for random-regular, got {self.family!r}")

    def display_name(self, copy: int) -> str:
        if self.family == "margulis":
            base = f"margulis-m{self.m}"
        elif self.family == "random-regular":
            base = f"random-regular-n{self.n}-k{self.k}"
        else:
            base = f"{self.family}-n{self.n}"
        return f"{base}#{copy}" if self.count > 1 else base


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated contents of a pipeline config file."""

    pipeline: str
    seed: int
    output_dir: Path
    graphs: tuple[GraphSpec, ...] = ()
    optimizer: Mapping[str, Any] = field(default_factory=dict)
    k_sweep: tuple[int, ...] = ()
    p_list: tuple[float, ...] = ()
    space: Mapping[str, Any] | None = None
    objective: str = "distortion"
    bound: Mapping[str, Any] | None = None
    raw: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.pipeline not in PIPELINES:
            raise InvalidParameterError(
                f"unknown pipeline {self.pipeline!r}; expected one of {PIPELINES}"
            )
        if self.seed < 0:
            raise InvalidParameterError(f"seed must be >= 0, got {self.seed}")


_TOP_LEVEL_KEYS = {
    "pipeline", "seed", "output_dir", "graphs", "optimizer",
    "k_sweep", "p_list", "space", "objective", "bound",
}


def config_from_dict(data: Mapping[str, Any], seed_override: int | None = None) -> ExperimentConfig:
    """Validate a parsed config mapping into an :class:`ExperimentConfig`."""
    unknown = set(data) - _TOP_LEVEL_KEYS
    if unknown:
        raise InvalidParameterError(f"unknown config keys: {sorted(unknown)}")
    pipeline = data.get("pipeline")
    if not isinstance(pipeline, str):
        raise InvalidParameterError("config must set pipeline = <name>")
    seed = seed_override if seed_override is not None else data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InvalidParameterError(f"seed must be an integer, got {seed!r}")
    out = data.get("output_dir")
    if not isinstance(out, str) or not out:
        raise InvalidParameterError("config must set output_dir = <path>")

    graphs = tuple(_parse_graph_spec(entry) for entry in _as_list(data.get("graphs", []), "graphs"))
    optimizer = dict(data.get("optimizer", {}))
    bad = set(optimizer) - set(_OPTIMIZER_KEYS)
    if bad:
        raise InvalidParameterError(f"unknown optimizer keys: {sorted(bad)}")

    k_sweep = tuple(int(v) for v in _as_list(data.get("k_sweep", []), "k_sweep"))
    p_list = tuple(float(v) for v in _as_list(data.get("p_list", []), "p_list"))
    objective = data.get("objective", "distortion")
    space_cfg = data.get("space")
    bound_cfg = data.get("bound")

    needs_graphs = pipeline in ("verify-line-gamma", "expander-obstruction",
                                "matousek-profile", "embed-benchmark")
    if needs_graphs and not graphs:
        raise InvalidParameterError(f"pipeline {pipeline!r} needs at least one [[graphs]] entry")
    if pipeline == "expander-obstruction":
        if not k_sweep:
            raise InvalidParameterError("expander-obstruction needs k_sweep = [dim, ...]")
        if any(k < 1 for k in k_sweep):
            raise InvalidParameterError(f"k_sweep dimensions must be >= 1, got {k_sweep}")
    if pipeline == "matousek-profile":
        if not p_list:
            p_list = (2.0, 4.0, 8.0, 16.0)
        if any(p < 1 for p in p_list):
            raise InvalidParameterError(f"p_list entries must be >= 1, got {p_list}")
    if pipeline == "embed-benchmark":
        if space_cfg is None:
            raise InvalidParameterError("embed-benchmark needs a [space] table")
        space_from_dict(space_cfg)  # validate early; instances rebuild from the dict
        if objective not in _EMBED_OBJECTIVES:
            raise InvalidParameterError(
                f"objective must be one of {_EMBED_OBJECTIVES}, got {objective!r}"
            )
    if pipeline == "bound-sweep":
        if not isinstance(bound_cfg, Mapping):
            raise InvalidParameterError("bound-sweep needs a [bound] table")
        _validate_bound_config(bound_cfg)

    echo = dict(data)
    echo["seed"] = seed
    return ExperimentConfig(
        pipeline=pipeline,
        seed=seed,
        output_dir=Path(out),
        graphs=graphs,
        optimizer=optimizer,
        k_sweep=k_sweep,
        p_list=p_list,
        space=space_cfg,
        objective=objective,
        bound=bound_cfg,
        raw=echo,
    )


def load_config(path: str | Path, seed_override: int | None = None) -> ExperimentConfig:
    """Parse a TOML config file."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise InvalidParameterError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InvalidParameterError(f"{path}: {exc}") from exc
    return config_from_dict(data, seed_override=seed_override)


def _as_list(value: Any, name: str) -> list:
    if not isinstance(value, (list, tuple)):
        raise InvalidParameterError(f"{name} must be a list, got {type(value).__name__}")
    return list(value)


def _parse_graph_spec(entry: Any) -> GraphSpec:
    if not isinstance(entry, Mapping):
        raise InvalidParameterError("each [[graphs]] entry must be a table")
    allowed = {"family", "n", "k", "m", "count"}
    unknown = set(entry) - allowed
    if unknown:
        raise InvalidParameterError(f"unknown graph keys: {sorted(unknown)}")
    family = entry.get("family")
    if not isinstance(family, str):
        raise InvalidParameterError("each [[graphs]] entry must set family")
    kwargs = {key: int(entry[key]) for key in ("n", "k", "m", "count") if key in entry}
    return GraphSpec(family=family.replace("_", "-"), **kwargs)


# --------------------------------------------------------------------------
# named bound evaluation (shared with the `gapscope bound` subcommand)

#: CLI name -> (function, required inputs, optional inputs, constant slot).
_BOUND_SPECS: dict[str, tuple[Callable, tuple[str, ...], tuple[str, ...], str | None]] = {
    "dim": (dimension_lower_bound, ("n", "lambda2", "ratio"), (), "c"),
    "dx": (dx_lower_bound, ("n", "lambda2", "ratio"), (), "alpha"),
    "hilbert-gamma": (hilbert_isomorph_gamma_bound, ("lambda2", "d_x"), (), "kappa"),
    "sp-gamma": (sp_gamma_bound, ("lambda2", "d_x", "s_p", "p"), (), "kappa"),
    "expander-exp": (expander_dim_exponent, ("lambda2", "k"), (), "rho"),
    "vt-dim": (vertex_transitive_dim_bound, ("lambda2", "diam"), ("d_distortion",), "c"),
    "distortion-dx": (distortion_lower_vs_dx, ("diam", "d_x"), (), None),
    "c-eff": (effective_constant, ("dim", "n", "lambda2", "ratio"), (), None),
}

BOUND_NAMES = tuple(_BOUND_SPECS)

_INT_INPUTS = {"n", "k", "dim"}


def evaluate_named_bound(
    name: str, inputs: Mapping[str, Any], constant: float | None = None
) -> BoundReport:
    """Evaluate one of the named bounds on a mapping of inputs.

    Plain-real evaluators are wrapped into a :class:`BoundReport` so the
    CLI and the bound-sweep pipeline report a uniform shape.
    """
    if name not in _BOUND_SPECS:
        raise InvalidParameterError(f"unknown bound {name!r}; expected one of {BOUND_NAMES}")
    fn, required, optional, cslot = _BOUND_SPECS[name]
    allowed = set(required) | set(optional)
    unknown = set(inputs) - allowed - ({cslot} if cslot else set())
    if unknown:
        raise InvalidParameterError(f"bound {name!r} does not take inputs {sorted(unknown)}")
    missing = [key for key in required if key not in inputs]
    if missing:
        raise InvalidParameterError(f"bound {name!r} is missing inputs {missing}")
    kwargs: dict[str, Any] = {}
    for key, value in inputs.items():
        kwargs[key] = _coerce_input(key, value)
    if constant is not None:
        if cslot is None:
            raise InvalidParameterError(f"bound {name!r} has no constant slot")
        if cslot in kwargs:
            raise InvalidParameterError(f"constant given twice for bound {name!r} ({cslot!r})")
        kwargs[cslot] = float(constant)
    result = fn(**kwargs)
    if isinstance(result, BoundReport):
        return result
    used = float(kwargs.get(cslot, 1.0)) if cslot else 1.0
    echo = {key: (int(val) if key in _INT_INPUTS else float(val))
            for key, val in kwargs.items() if key != cslot}
    return BoundReport(name=name, inputs=echo, value=float(result), constant_used=used)


def _coerce_input(key: str, value: Any) -> Any:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParameterError(f"input {key!r} must be a number, got {value!r}")
    if key in _INT_INPUTS:
        if float(value) != int(value):
            raise InvalidParameterError(f"input {key!r} must be an integer, got {value!r}")
        return int(value)
    return float(value)


def _validate_bound_config(bound_cfg: Mapping[str, Any]) -> None:
    allowed = {"name", "constant", "grid"}
    unknown = set(bound_cfg) - allowed
    if unknown:
        raise InvalidParameterError(f"unknown [bound] keys: {sorted(unknown)}")
    name = bound_cfg.get("name")
    if name not in _BOUND_SPECS:
        raise InvalidParameterError(f"[bound] name must be one of {BOUND_NAMES}, got {name!r}")
    grid = bound_cfg.get("grid")
    if not isinstance(grid, Mapping) or not grid:
        raise InvalidParameterError("[bound.grid] must map each input to a list of values")
    for key, values in grid.items():
        if not isinstance(values, (list, tuple)) or not values:
            raise InvalidParameterError(f"[bound.grid] {key} must be a nonempty list")
    # check input names statically; domain errors fail instances, not the config
    _, required, optional, cslot = _BOUND_SPECS[name]
    allowed = set(required) | set(optional) | ({cslot} if cslot else set())
    unknown = set(grid) - allowed
    if unknown:
        raise InvalidParameterError(f"bound {name!r} does not take inputs {sorted(unknown)}")
    missing = [key for key in required if key not in grid]
    if missing:
        raise InvalidParameterError(f"bound {name!r} grid is missing inputs {missing}")
    if bound_cfg.get("constant") is not None:
        if cslot is None:
            raise InvalidParameterError(f"bound {name!r} has no constant slot")
        if cslot in grid:
            raise InvalidParameterError(f"constant given twice for bound {name!r} ({cslot!r})")


# --------------------------------------------------------------------------
# instance plumbing


def _derive_seed(seed: int, stream: int, index: int) -> int:
    """Deterministic 32-bit sub-seed for (config seed, stream, index)."""
    ss = np.random.SeedSequence(seed, spawn_key=(stream, index))
    return int(ss.generate_state(1, dtype=np.uint32)[0])


_STREAM_GRAPH, _STREAM_OPT, _STREAM_CHECK = 0, 1, 2


def _build_graph(family: str, n: int | None, k: int | None, m: int | None,
                 graph_seed: int) -> RegularGraph:
    if family == "cycle":
        return cycle_graph(int(n))
    if family == "complete":
        return complete_graph(int(n))
    if family == "hypercube":
        return hypercube_graph(int(n).bit_length() - 1)
    if family == "random-regular":
        return random_regular_graph(int(n), int(k), seed=graph_seed)
    if family == "margulis":
        return margulis_graph(int(m))
    raise InvalidParameterError(f"unknown graph family {family!r}")


def _expand_graphs(cfg: ExperimentConfig) -> list[dict[str, Any]]:
    """Flatten [[graphs]] specs into per-graph descriptors with seeds."""
    out = []
    index = 0
    for spec in cfg.graphs:
        for copy in range(spec.count):
            desc = {"name": spec.display_name(copy), "family": spec.family}
            for key in ("n", "k", "m"):
                value = getattr(spec, key)
                if value is not None:
                    desc[key] = value
            desc["graph_seed"] = _derive_seed(cfg.seed, _STREAM_GRAPH, index)
            out.append(desc)
            index += 1
    return out


def _graph_from_desc(desc: Mapping[str, Any]) -> RegularGraph:
    return _build_graph(desc["family"], desc.get("n"), desc.get("k"),
                        desc.get("m"), desc["graph_seed"])


def _optimizer_for(cfg: ExperimentConfig, instance: int, **defaults: Any) -> OptimizerConfig:
    kwargs = dict(defaults)
    kwargs.update(cfg.optimizer)
    kwargs["seed"] = _derive_seed(cfg.seed, _STREAM_OPT, instance)
    return OptimizerConfig(**kwargs)


def _opt_echo(opt: OptimizerConfig) -> dict[str, Any]:
    return {"restarts": opt.restarts, "steps": opt.steps, "opt_seed": opt.seed}


# --------------------------------------------------------------------------
# the five pipelines

# Each builder returns (tasks, plot_fields, recompute) where tasks is a list
# of (inputs_echo, thunk) pairs, the thunk producing that instance's rows.


def _build_verify_line_gamma(cfg: ExperimentConfig):
    line = lp_space(1, 2.0)
    tasks = []
    for instance, desc in enumerate(_expand_graphs(cfg)):
        opt = _optimizer_for(cfg, instance, restarts=8, steps=500)
        inputs = {"instance": instance, **desc, **_opt_echo(opt)}

        def task(desc=desc, opt=opt, inputs=inputs):
            a = normalized_adjacency(_graph_from_desc(desc))
            lam = second_eigenvalue(a)
            exact = gamma_line_exact(a)
            _, rep = maximize_poincare_ratio(a, line, 2.0, opt)
            return [{
                **inputs,
                "lambda2": lam,
                "gap": 1.0 - lam,
                "gamma_exact": exact,
                "ratio": rep.ratio,
                "ratio_times_gap": rep.ratio * (1.0 - lam),
            }]

        tasks.append((inputs, task))

    def recompute(row: Mapping[str, Any]) -> dict[str, Any]:
        a = normalized_adjacency(_graph_from_desc(row))
        lam = second_eigenvalue(a)
        return {
            "lambda2": lam,
            "gap": 1.0 - lam,
            "gamma_exact": gamma_line_exact(a),
            "ratio_times_gap": row["ratio"] * (1.0 - lam),
        }

    fields = ["instance", "name", "n", "lambda2", "gamma_exact", "ratio", "ratio_times_gap"]
    return tasks, fields, recompute


def _build_expander_obstruction(cfg: ExperimentConfig):
    tasks = []
    instance = 0
    for desc in _expand_graphs(cfg):
        for k_dim in cfg.k_sweep:
            opt = _optimizer_for(cfg, instance, restarts=3, steps=200)
            inputs = {"instance": instance, **desc, "k_dim": int(k_dim), **_opt_echo(opt)}

            def task(desc=desc, k_dim=int(k_dim), opt=opt, inputs=inputs):
                g = _graph_from_desc(desc)
                a = normalized_adjacency(g)
                lam = second_eigenvalue(a)
                metric = shortest_path_metric(g)
                space = lp_space(k_dim, float("inf"))
                _, rep = optimize_embedding(
                    metric, space, "pairs_rms_subject_to_edge_rms", a=a, opt=opt
                )
                ratio = rep.pairs_rms**2 / rep.edge_rms**2
                return [{
                    **inputs,
                    "lambda2": lam,
                    "gap": 1.0 - lam,
                    "edge_rms": rep.edge_rms,
                    "pairs_rms": rep.pairs_rms,
                    "ratio": ratio,
                    "dim_lower_bound": dimension_lower_bound(g.n, lam, ratio),
                    "dx_lower_bound": dx_lower_bound(g.n, lam, ratio),
                    "c_eff": effective_constant(k_dim, g.n, lam, ratio),
                }]

            tasks.append((inputs, task))
            instance += 1

    def recompute(row: Mapping[str, Any]) -> dict[str, Any]:
        a = normalized_adjacency(_graph_from_desc(row))
        lam = second_eigenvalue(a)
        ratio = row["ratio"]
        return {
            "lambda2": lam,
            "ratio": row["pairs_rms"] ** 2 / row["edge_rms"] ** 2,
            "dim_lower_bound": dimension_lower_bound(row["n"], lam, ratio),
            "dx_lower_bound": dx_lower_bound(row["n"], lam, ratio),
            "c_eff": effective_constant(row["k_dim"], row["n"], lam, ratio),
        }

    fields = ["instance", "name", "n", "k_dim", "lambda2", "ratio",
              "c_eff", "dim_lower_bound", "dx_lower_bound"]
    return tasks, fields, recompute


def _line_config_from_eigenvector(a) -> PointConfig:
    _, t = second_eigenvector(a)
    return PointConfig(points=t[:, None], space=lp_space(1, 2.0))


def _build_matousek_profile(cfg: ExperimentConfig):
    tasks = []
    for instance, desc in enumerate(_expand_graphs(cfg)):
        inputs = {"instance": instance, **desc}

        def task(desc=desc, inputs=inputs):
            a = normalized_adjacency(_graph_from_desc(desc))
            lam = second_eigenvalue(a)
            profile = matousek_extrapolation_profile(a, _line_config_from_eigenvector(a), cfg.p_list)
            return [{
                **inputs,
                "lambda2": lam,
                "p": row.p,
                "pairs_avg": row.pairs_avg,
                "edge_avg": row.edge_avg,
                "ratio": row.ratio,
                "root": row.root,
                "normalized": row.normalized,
            } for row in profile]

        tasks.append((inputs, task))

    def recompute(row: Mapping[str, Any]) -> dict[str, Any]:
        a = normalized_adjacency(_graph_from_desc(row))
        profile = matousek_extrapolation_profile(a, _line_config_from_eigenvector(a), [row["p"]])
        entry = profile[0]
        return {
            "lambda2": second_eigenvalue(a),
            "pairs_avg": entry.pairs_avg,
            "edge_avg": entry.edge_avg,
            "ratio": entry.ratio,
            "root": entry.root,
            "normalized": entry.normalized,
        }

    fields = ["instance", "name", "n", "p", "ratio", "root", "normalized"]
    return tasks, fields, recompute


def _build_bound_sweep(cfg: ExperimentConfig):
    bound_cfg = cfg.bound
    name = bound_cfg["name"]
    constant = bound_cfg.get("constant")
    grid = bound_cfg["grid"]
    keys = list(grid)
    tasks = []
    for instance, point in enumerate(itertools.product(*(grid[key] for key in keys))):
        point_map = dict(zip(keys, point))
        inputs = {"instance": instance, "name": name, **point_map}

        def task(point_map=point_map, inputs=inputs):
            report = evaluate_named_bound(name, point_map, constant)
            row = {
                **inputs,
                "constant_used": report.constant_used,
                "value": report.value,
            }
            if report.case_taken:
                row["case_taken"] = report.case_taken
            row.update(report.aux)
            return [row]

        tasks.append((inputs, task))

    def recompute(row: Mapping[str, Any]) -> dict[str, Any]:
        point_map = {key: row[key] for key in keys}
        report = evaluate_named_bound(name, point_map, constant)
        out = {"value": report.value, "constant_used": report.constant_used}
        if report.case_taken:
            out["case_taken"] = report.case_taken
        out.update(report.aux)
        return out

    fields = ["instance", "name", *keys, "value"]
    return tasks, fields, recompute


def _build_embed_benchmark(cfg: ExperimentConfig):
    space_dict = dict(cfg.space)
    objective = cfg.objective
    tasks = []
    for instance, desc in enumerate(_expand_graphs(cfg)):
        opt = _optimizer_for(cfg, instance, restarts=6, steps=600)
        inputs = {"instance": instance, **desc, "objective": objective,
                  "space": json.dumps(space_to_dict(space_from_dict(space_dict)), sort_keys=True),
                  **_opt_echo(opt)}

        def task(desc=desc, opt=opt, inputs=inputs):
            metric = shortest_path_metric(_graph_from_desc(desc))
            fre = evaluate_embedding(frechet_embedding(metric))
            sim = evaluate_embedding(simplex_embedding(metric))
            space = space_from_dict(space_dict)
            _, rep = optimize_embedding(metric, space, objective, opt=opt)
            return [{
                **inputs,
                "diameter": metric.diameter,
                "frechet_distortion": fre.distortion,
                "simplex_distortion": sim.distortion,
                "optimized_distortion": rep.distortion,
                "optimized_average_distortion": rep.average_distortion,
            }]

        tasks.append((inputs, task))

    def recompute(row: Mapping[str, Any]) -> dict[str, Any]:
        metric = shortest_path_metric(_graph_from_desc(row))
        fre = evaluate_embedding(frechet_embedding(metric))
        sim = evaluate_embedding(simplex_embedding(metric))
        return {
            "diameter": metric.diameter,
            "frechet_distortion": fre.distortion,
            "simplex_distortion": sim.distortion,
        }

    fields = ["instance", "name", "n", "diameter", "frechet_distortion",
              "simplex_distortion", "optimized_distortion", "optimized_average_distortion"]
    return tasks, fields, recompute


_BUILDERS = {
    "verify-line-gamma": _build_verify_line_gamma,
    "expander-obstruction": _build_expander_obstruction,
    "matousek-profile": _build_matousek_profile,
    "bound-sweep": _build_bound_sweep,
    "embed-benchmark": _build_embed_benchmark,
}


# --------------------------------------------------------------------------
# execution


@dataclass(frozen=True)
class ExperimentReport:
    """In-memory mirror of the artifacts a pipeline run writes to disk."""

    pipeline: str
    seed: int
    version: str
    config: dict[str, Any]
    rows: tuple[dict[str, Any], ...]
    summary: dict[str, Any]
    wall_time_s: float
    output_dir: Path

    @property
    def n_failed(self) -> int:
        return sum(1 for row in self.rows if row.get("status") != "ok")

    @property
    def all_ok(self) -> bool:
        return self.n_failed == 0


def run_pipeline(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    """Run the configured pipeline, writing rows/summary/plot artifacts."""
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be >= 1, got {jobs}")
    builder = _BUILDERS[cfg.pipeline]
    tasks, plot_fields, recompute = builder(cfg)

    out_dir = cfg.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    rows_path = out_dir / "rows.jsonl"
    started = time.perf_counter()

    rows: list[dict[str, Any]] = []
    runners = [lambda inputs=inputs, task=task: _run_instance(inputs, task)
               for inputs, task in tasks]
    try:
        with open(rows_path, "w") as rows_fh:
            if jobs == 1:
                produced = map(lambda fn: fn(), runners)
                rows.extend(_flush_rows(rows_fh, produced))
            else:
                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    produced = pool.map(lambda fn: fn(), runners)
                    rows.extend(_flush_rows(rows_fh, produced))
    except BaseException as exc:
        # rows.jsonl keeps whatever was flushed; mark the abort and re-raise
        _write_summary(out_dir, cfg, rows, time.perf_counter() - started,
                       status=f"aborted: {type(exc).__name__}: {exc}", spot_checked=[])
        raise

    wall = time.perf_counter() - started
    spot_checked = _spot_check(cfg, rows, recompute)
    status = "ok" if all(row.get("status") == "ok" for row in rows) else "completed_with_failures"
    summary = _write_summary(out_dir, cfg, rows, wall, status=status, spot_checked=spot_checked)
    _write_plot(out_dir / "plot.csv", plot_fields, rows)
    return ExperimentReport(
        pipeline=cfg.pipeline,
        seed=cfg.seed,
        version=__version__,
        config=dict(cfg.raw),
        rows=tuple(rows),
        summary=summary,
        wall_time_s=wall,
        output_dir=out_dir,
    )


def _run_instance(inputs: dict[str, Any], task: Callable[[], list[dict[str, Any]]]):
    try:
        produced = task()
    except GapscopeError as exc:
        return [{**inputs, "status": "error", "error": f"{type(exc).__name__}: {exc}"}]
    return [{**row, "status": "ok"} for row in produced]


def _flush_rows(fh, produced) -> list[dict[str, Any]]:
    rows = []
    row_index = 0
    for instance_rows in produced:
        for row in instance_rows:
            row = {"row": row_index, **row}
            fh.write(json.dumps(_jsonable(row), sort_keys=True, separators=(",", ":")))
            fh.write("\n")
            rows.append(row)
            row_index += 1
        fh.flush()
    return rows


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(val) for val in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (str, bool, int, float)) or value is None:
        return value
    raise InvalidParameterError(f"cannot serialize report value of type {type(value).__name__}")


def _spot_check(cfg: ExperimentConfig, rows, recompute) -> list[int]:
    """Re-derive a few rows by calling the modules directly.

    Any disagreement is a bug in the pipeline plumbing, not bad input,
    so it raises instead of producing an error row.  Optimizer outputs
    are covered by the rerun-determinism contract rather than re-run here.
    """
    ok_rows = [row for row in rows if row.get("status") == "ok"]
    if not ok_rows:
        return []
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(_STREAM_CHECK, 0)))
    count = min(SPOT_CHECK_ROWS, len(ok_rows))
    picks = sorted(int(i) for i in rng.choice(len(ok_rows), size=count, replace=False))
    for pick in picks:
        row = ok_rows[pick]
        for key, expected in recompute(row).items():
            actual = row[key]
            if isinstance(expected, str) or isinstance(expected, (int, np.integer)):
                match = actual == expected
            else:
                expected = float(expected)
                match = abs(actual - expected) <= SPOT_CHECK_RTOL * max(1.0, abs(expected))
            if not match:
                raise NumericalFailureError(
                    f"spot check failed on row {row['row']}: {key} recomputes to "
                    f"{expected!r} but the report says {actual!r}"
                )
    return [ok_rows[pick]["row"] for pick in picks]


def _write_summary(out_dir: Path, cfg: ExperimentConfig, rows, wall: float,
                   status: str, spot_checked: list[int]) -> dict[str, Any]:
    ok_rows = [row for row in rows if row.get("status") == "ok"]
    summary = {
        "pipeline": cfg.pipeline,
        "seed": cfg.seed,
        "version": __version__,
        "status": status,
        "config": _jsonable(dict(cfg.raw)),
        "n_rows": len(rows),
        "n_failed": len(rows) - len(ok_rows),
        "wall_time_s": wall,
        "stats": _numeric_stats(ok_rows),
        "spot_checked_rows": spot_checked,
    }
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(_jsonable(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def _numeric_stats(ok_rows) -> dict[str, dict[str, float]]:
    """min/median/max for every numeric field present in all ok rows."""
    if not ok_rows:
        return {}
    stats: dict[str, dict[str, float]] = {}
    for key in sorted(ok_rows[0]):
        values = []
        for row in ok_rows:
            value = row.get(key)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                break
            values.append(float(value))
        else:
            stats[key] = {
                "min": min(values),
                "median": float(statistics.median(values)),
                "max": max(values),
            }
    return stats


def _write_plot(path: Path, fields, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        for row in rows:
            if row.get("status") != "ok":
                continue
            out = []
            for key in fields:
                value = row.get(key, "")
                if isinstance(value, bool):
                    value = str(value)
                elif isinstance(value, float):
                    value = format_float(value)
                out.append(value)
            writer.writerow(out)
