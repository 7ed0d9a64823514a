"""Turn experiment CSVs into static figures.

The input schema is the one the simulation harness publishes: one row
per (algorithm, p, d, iteration) with mean curves over runs. Three
figure kinds are supported, all drawing one line per cell:

- iterations: mean relative error against iteration count
- p_sweep: final error of the sampled-greedy cells against p, with the
  endpoint baselines as horizontal references
- d_sweep: final error against the density parameter d

Rendering never modifies or reinterprets the numbers; rows are only
grouped and the named columns picked out.
"""

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMA = ("algorithm", "p", "d", "iteration", "mean_rel_error",
          "std_rel_error", "mean_probe_msgs", "mean_exchange_msgs", "runs")

KINDS = ("iterations", "p_sweep", "d_sweep")


class SchemaError(ValueError):
    """Input rows do not match the published experiment CSV schema."""


@dataclass(frozen=True)
class PlotJob:
    kind: str
    inputs: tuple = ()
    output_path: str = "figure.png"
    log_y: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, expected one of {KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def read_rows(path):
    """Load one CSV, enforcing the exact published header."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path}: no header row")
        missing = [c for c in SCHEMA if c not in header]
        extra = [c for c in header if c not in SCHEMA]
        if missing or extra:
            parts = []
            if missing:
                parts.append(f"missing columns {missing}")
            if extra:
                parts.append(f"unexpected columns {extra}")
            raise SchemaError(f"{path}: " + ", ".join(parts))
        rows = []
        for raw in reader:
            try:
                rows.append({
                    "algorithm": raw["algorithm"],
                    "p": float(raw["p"]),
                    "d": float(raw["d"]),
                    "iteration": int(raw["iteration"]),
                    "mean_rel_error": float(raw["mean_rel_error"]),
                    "runs": int(raw["runs"]),
                })
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path} line {reader.line_num}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: header only, no data rows")
    return rows


def load_inputs(paths):
    rows = []
    for path in paths:
        rows.extend(read_rows(path))
    return rows


def group_cells(rows):
    cells = {}
    for r in rows:
        cells.setdefault((r["algorithm"], r["p"], r["d"]), []).append(r)
    for members in cells.values():
        members.sort(key=lambda r: r["iteration"])
    return cells


def cell_label(key, many_d):
    algorithm, p, d = key
    label = f"{algorithm} (p={p:g})" if algorithm == "sample_greedy" else algorithm
    if many_d:
        label += f", d={d:g}"
    return label


def final_error(members):
    return members[-1]["mean_rel_error"]


def _draw_iterations(ax, cells):
    many_d = len({d for _, _, d in cells}) > 1
    for key in sorted(cells):
        members = cells[key]
        ax.plot([r["iteration"] for r in members],
                [r["mean_rel_error"] for r in members],
                label=cell_label(key, many_d))
    ax.set_xlabel("iteration")


def _draw_p_sweep(ax, cells):
    swept = sorted((p, final_error(m)) for (alg, p, _), m in cells.items()
                   if alg == "sample_greedy")
    if not swept:
        raise SchemaError("p_sweep needs sample_greedy rows, found none")
    ax.plot([p for p, _ in swept], [e for _, e in swept],
            marker="o", label="sample_greedy")
    for alg, style in (("randomized", "--"), ("greedy", ":")):
        ref = [final_error(m) for (a, _, _), m in cells.items() if a == alg]
        if ref:
            ax.axhline(ref[0], linestyle=style, label=f"{alg} (reference)")
    ax.set_xlabel("activation probability p")


def _draw_d_sweep(ax, cells):
    series = {}
    for (alg, p, d), members in cells.items():
        series.setdefault((alg, p), []).append((d, final_error(members)))
    for key in sorted(series):
        pts = sorted(series[key])
        ax.plot([d for d, _ in pts], [e for _, e in pts],
                marker="o", label=cell_label((*key, 0.0), many_d=False))
    ax.set_xlabel("density parameter d")


def build_figure(job: PlotJob):
    """Assemble the figure without writing it; render() does the writing."""
    cells = group_cells(load_inputs(job.inputs))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    try:
        if job.kind == "iterations":
            _draw_iterations(ax, cells)
        elif job.kind == "p_sweep":
            _draw_p_sweep(ax, cells)
        else:
            _draw_d_sweep(ax, cells)
        ylabel = "mean relative error"
        if job.kind != "iterations":
            ylabel = "final " + ylabel
        ax.set_ylabel(ylabel)
        if job.log_y:
            ax.set_yscale("log")
        ax.legend()
        fig.tight_layout()
    except Exception:
        plt.close(fig)
        raise
    return fig


def render(job: PlotJob) -> str:
    """Render the job to its output path and return that path."""
    fig = build_figure(job)
    fmt = job.output_path.rsplit(".", 1)[-1].lower() if "." in job.output_path else "png"
    try:
        with open(job.output_path, "wb") as fh:
            fig.savefig(fh, format=fmt, dpi=150)
    finally:
        plt.close(fig)
    return job.output_path
