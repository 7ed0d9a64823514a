"""Monte-Carlo experiment driver: sweeps, aggregation, CSV emission.

A sweep is a set of cells, one per (algorithm, p, d) combination; every
cell executes the same number of independent runs.  Run j everywhere
draws its node/activation/graph/field streams from (master_seed, j)
only, never from the cell, so cells share common random numbers and the
p=0 / p=1 sample-greedy cells replay the randomized / greedy cells
trace for trace.

Output schema (CSV, UTF-8, floats at 17 significant digits, rows sorted
by algorithm, p, d, iteration):

    algorithm,p,d,iteration,mean_rel_error,std_rel_error,mean_probe_msgs,mean_exchange_msgs,runs

The p column records the activation probability of sample-greedy cells
and the degenerate endpoint for the baselines (0 for randomized, 1 for
greedy, which they equal exactly).  Relative error is recorded at every
iteration up to L = 10^4 and at every 10th beyond that; the stride is
stated in the sidecar metadata JSON written next to the CSV.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import engine, fields, graph, streams
from .analysis import BoundReport, bound_report

SUBSAMPLE_THRESHOLD = 10_000
SUBSAMPLE_STRIDE = 10

CSV_COLUMNS = (
    "algorithm",
    "p",
    "d",
    "iteration",
    "mean_rel_error",
    "std_rel_error",
    "mean_probe_msgs",
    "mean_exchange_msgs",
    "runs",
)


class ConfigError(ValueError):
    """Invalid experiment configuration, rejected before any simulation."""


_CONFIG_KEYS = {
    "n", "d", "algorithms", "p_values", "L", "runs", "field",
    "master_seed", "fresh_graph_per_run", "output_path", "d_values",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep declaration, loadable from a JSON document."""

    n: int
    d: float
    algorithms: tuple[str, ...]
    L: int
    runs: int
    field: fields.FieldSpec
    master_seed: int
    p_values: tuple[float, ...] = (0.5,)
    fresh_graph_per_run: bool = True
    output_path: str | None = None
    d_values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"n must be >= 2, got {self.n}")
        if self.d <= 0:
            raise ConfigError(f"d must be > 0, got {self.d}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.L < 0:
            raise ConfigError(f"L must be >= 0, got {self.L}")
        if not self.algorithms:
            raise ConfigError("algorithms list is empty")
        for alg in self.algorithms:
            if alg not in engine.ALGORITHMS:
                raise ConfigError(
                    f"unknown algorithm {alg!r}, expected one of {engine.ALGORITHMS}"
                )
        for p in self.p_values:
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"p values must be in [0, 1], got {p}")
        if self.d_values is not None:
            for d in self.d_values:
                if d <= 0:
                    raise ConfigError(f"d values must be > 0, got {d}")

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError(f"config must be a JSON object, got {type(obj).__name__}")
        unknown = set(obj) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"n", "d", "algorithms", "L", "runs", "field", "master_seed"} - set(obj)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        try:
            field_spec = fields.FieldSpec.from_dict(obj["field"])
        except (ValueError, TypeError, AttributeError) as exc:
            raise ConfigError(f"bad field spec: {exc}") from exc
        kwargs = dict(
            n=int(obj["n"]),
            d=float(obj["d"]),
            algorithms=tuple(obj["algorithms"]),
            L=int(obj["L"]),
            runs=int(obj["runs"]),
            field=field_spec,
            master_seed=int(obj["master_seed"]),
        )
        # optional keys; an explicit null means the same as leaving one out
        if obj.get("p_values") is not None:
            kwargs["p_values"] = tuple(float(p) for p in obj["p_values"])
        if obj.get("fresh_graph_per_run") is not None:
            kwargs["fresh_graph_per_run"] = bool(obj["fresh_graph_per_run"])
        if obj.get("output_path") is not None:
            kwargs["output_path"] = obj["output_path"]
        if obj.get("d_values") is not None:
            kwargs["d_values"] = tuple(float(d) for d in obj["d_values"])
        return cls(**kwargs)

    def to_json_dict(self) -> dict:
        out = asdict(self)
        out["field"] = {k: v for k, v in asdict(self.field).items() if v is not None}
        return out


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return ExperimentConfig.from_dict(obj)


def recorded_iterations(L: int) -> np.ndarray:
    """Iteration indices kept in the output table."""
    if L <= SUBSAMPLE_THRESHOLD:
        return np.arange(L + 1)
    iters = np.arange(0, L + 1, SUBSAMPLE_STRIDE)
    if iters[-1] != L:
        iters = np.append(iters, L)
    return iters


def _cells(cfg: ExperimentConfig) -> list[tuple[str, float, float]]:
    # Baselines get one cell each, pinned to the p endpoint they equal;
    # sample_greedy expands over the p grid.
    d_grid = cfg.d_values if cfg.d_values is not None else (cfg.d,)
    cells = []
    for d in d_grid:
        for alg in cfg.algorithms:
            if alg == engine.SAMPLE_GREEDY:
                cells.extend((alg, float(p), float(d)) for p in cfg.p_values)
            else:
                endpoint = 0.0 if alg == engine.RANDOMIZED else 1.0
                cells.append((alg, endpoint, float(d)))
    return cells


def run_one(cfg: ExperimentConfig, algorithm: str, p: float, d: float,
            run_index: int, record_pairs: bool = False) -> engine.Trace:
    """Execute a single MC run of one cell, graph and field included."""
    topo_index = run_index if cfg.fresh_graph_per_run else 0
    g = graph.generate_random_geometric(
        cfg.n, d, streams.substream_seed(cfg.master_seed, topo_index, streams.GRAPH)
    )
    field_rng = streams.stream(cfg.master_seed, topo_index, streams.FIELD)
    a0 = fields.make_field(g, cfg.field, rng=field_rng)
    return engine.run(
        g, a0, algorithm, p=p, iterations=cfg.L,
        master_seed=cfg.master_seed, run_index=run_index, record_pairs=record_pairs,
    )


def _run_cell(cfg: ExperimentConfig, cell: tuple[str, float, float]) -> list[dict]:
    algorithm, p, d = cell
    iters = recorded_iterations(cfg.L)
    sum_e = np.zeros(len(iters))
    sum_e2 = np.zeros(len(iters))
    sum_probe = np.zeros(len(iters))
    sum_exch = np.zeros(len(iters))
    for j in range(cfg.runs):
        tr = run_one(cfg, algorithm, p, d, j)
        e = tr.rel_error[iters]
        sum_e += e
        sum_e2 += e * e
        sum_probe += tr.probe_messages[iters]
        sum_exch += tr.exchange_messages[iters]
    runs = cfg.runs
    mean_e = sum_e / runs
    if runs > 1:
        var = np.maximum(sum_e2 - runs * mean_e * mean_e, 0.0) / (runs - 1)
        std_e = np.sqrt(var)
    else:
        std_e = np.zeros(len(iters))
    return [
        {
            "algorithm": algorithm,
            "p": p,
            "d": d,
            "iteration": int(iters[i]),
            "mean_rel_error": float(mean_e[i]),
            "std_rel_error": float(std_e[i]),
            "mean_probe_msgs": float(sum_probe[i] / runs),
            "mean_exchange_msgs": float(sum_exch[i] / runs),
            "runs": runs,
        }
        for i in range(len(iters))
    ]


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Run every cell of the config and return the sorted result table.

    Writes the table (plus a sidecar metadata JSON) when the config
    names an output path.  Results are independent of the thread count:
    run streams are keyed by run index alone and rows are sorted before
    write.
    """
    cells = _cells(cfg)
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_run_cell, [cfg] * len(cells), cells))
    else:
        chunks = [_run_cell(cfg, cell) for cell in cells]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["algorithm"], r["p"], r["d"], r["iteration"]))
    if cfg.output_path is not None:
        write_csv(rows, cfg.output_path, cfg)
    return rows


def sweep_p(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Fixed L, varying activation probability grid."""
    if not cfg.p_values:
        raise ConfigError("sweep over p needs a non-empty p_values grid")
    return run_experiment(cfg, threads=threads)


def sweep_d(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Fixed L, varying graph-density scaling factor grid."""
    if not cfg.d_values:
        raise ConfigError("sweep over d needs a non-empty d_values grid")
    return run_experiment(cfg, threads=threads)


def write_csv(rows: list[dict], path, cfg: ExperimentConfig | None = None) -> None:
    """Emit the result table plus a <path>.meta.json sidecar."""

    def fmt(v):
        if isinstance(v, float):
            return f"{v:.17g}"
        return str(v)

    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([fmt(row[col]) for col in CSV_COLUMNS])
        if cfg is not None:
            meta = {
                "config": cfg.to_json_dict(),
                "iteration_stride": 1 if cfg.L <= SUBSAMPLE_THRESHOLD else SUBSAMPLE_STRIDE,
                "subsample_threshold": SUBSAMPLE_THRESHOLD,
                "stream_tags": {
                    "node": streams.NODE,
                    "activation": streams.ACTIVATION,
                    "graph": streams.GRAPH,
                    "field": streams.FIELD,
                },
            }
            with open(f"{path}.meta.json", "w", encoding="utf-8") as fh:
                json.dump(meta, fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"writing results to {path}: {exc}") from exc


def parse_field_arg(text: str) -> fields.FieldSpec:
    """Parse a field argument: a JSON object or kind[:parameter] shorthand.

    Shorthands: linear, gaussian_bumps, spike:<node>, random_normal:<seed>.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return fields.FieldSpec.from_dict(json.loads(text))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad field spec {text!r}: {exc}") from exc
    kind, _, arg = text.partition(":")
    try:
        if kind == "spike":
            return fields.FieldSpec(kind="spike", spike=int(arg) if arg else 0)
        if kind == "random_normal":
            return fields.FieldSpec(kind="random_normal", seed=int(arg) if arg else None)
        if arg:
            raise ConfigError(f"field kind {kind!r} takes no parameter")
        return fields.FieldSpec(kind=kind)
    except ValueError as exc:
        raise ConfigError(f"bad field spec {text!r}: {exc}") from exc


def parse_graph_arg(text: str, master_seed: int) -> graph.Graph:
    """Load a graph dump, or generate one from a gen:n,d directive."""
    if text.startswith("gen:"):
        parts = text[len("gen:"):].split(",")
        if len(parts) != 2:
            raise ConfigError(f"generation directive must be gen:n,d, got {text!r}")
        try:
            n, d = int(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ConfigError(f"bad generation directive {text!r}: {exc}") from exc
        return graph.generate_random_geometric(
            n, d, streams.substream_seed(master_seed, 0, streams.GRAPH)
        )
    try:
        return graph.load_json(text)
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad graph dump {text!r}: {exc}") from exc


def analyze(graph_arg: str, field_arg: str, p: float, master_seed: int = 0,
            epsilon: float = 0.01) -> BoundReport:
    """Front door to the closed forms: graph + field + p -> BoundReport."""
    g = parse_graph_arg(graph_arg, master_seed)
    spec = parse_field_arg(field_arg)
    if not graph.is_connected(g):
        raise graph.GraphConnectivityError(
            "analysis needs a connected graph; the supplied dump is disconnected"
        )
    field_rng = streams.stream(master_seed, 0, streams.FIELD)
    a0 = fields.make_field(g, spec, rng=field_rng)
    try:
        return bound_report(a0, g, p, epsilon=epsilon)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def with_seed(cfg: ExperimentConfig, master_seed: int | None) -> ExperimentConfig:
    """Copy of the config with the master seed overridden (None keeps it)."""
    if master_seed is None:
        return cfg
    return replace(cfg, master_seed=int(master_seed))
