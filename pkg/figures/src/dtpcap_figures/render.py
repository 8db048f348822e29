"""Render capacity-bound sweep CSVs into comparison figures.

Strict consumer of the sweep CSV contract: UTF-8, comma-separated,
header ``mu,<bound>[,<bound>...]``, empty cells where a bound is
undefined.  Bounds are never recomputed here; empty cells become gaps
in the corresponding curve.  Styling is fixed per preset, so the same
CSV renders to the same figure every time.
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

__all__ = ["FigureSpec", "RenderResult", "load_sweep", "render", "main"]

PRESET_COLUMNS = {
    "fig1": ("main", "elementary", "cr19a", "lapidoth-under", "aminian", "ww-nosup", "bv"),
    "fig2": ("main", "elementary", "cr19a"),
}

_LABELS = {
    "main": "modified-digamma bound",
    "elementary": "elementary envelope",
    "cr19a": "zero-dark-current bound",
    "lapidoth-under": "small-power underestimate",
    "aminian": "covariance bound (peak 1)",
    "ww-nosup": "small-power bound (no sup term)",
    "bv": "large-power asymptotic",
}

_STYLES = {
    "main": dict(color="C0", linestyle="-", linewidth=2.0),
    "elementary": dict(color="C1", linestyle="--", linewidth=1.6),
    "cr19a": dict(color="C2", linestyle="-.", linewidth=1.6),
    "lapidoth-under": dict(color="C3", linestyle=":", linewidth=1.4),
    "aminian": dict(color="C4", linestyle="-", linewidth=1.2),
    "ww-nosup": dict(color="C5", linestyle="--", linewidth=1.2),
    "bv": dict(color="C6", linestyle="-.", linewidth=1.2),
}


@dataclass(frozen=True)
class FigureSpec:
    """What to render: a sweep CSV, a preset naming its curve set, and the target file."""

    input_csv: str
    preset: str = "custom"
    output_path: str = "figure.png"
    log_x: bool = True


@dataclass(frozen=True)
class RenderResult:
    """Summary of a finished render, enough to compare two runs."""

    output_path: str
    curves: tuple
    points: int
    x_range: tuple
    y_range: tuple


def load_sweep(path):
    """Parse a sweep CSV into (mu list, {bound: value-or-None list})."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if not header or header[0] != "mu":
            raise ValueError(f"{path}: expected a sweep CSV with a leading 'mu' column, got {header!r}")
        names = header[1:]
        mus = []
        columns = {name: [] for name in names}
        for row in reader:
            if not row:
                continue
            mus.append(float(row[0]))
            for name, cell in zip(names, row[1:]):
                columns[name].append(float(cell) if cell != "" else None)
    return mus, columns


def render(spec: FigureSpec) -> RenderResult:
    """Draw one labeled curve per bound column and write the image file.

    For the named presets the CSV must carry exactly their curve set; a
    mismatch raises with the expected and found columns spelled out.
    Cells that are empty in the CSV break the curve at that point.
    """
    mus, columns = load_sweep(spec.input_csv)
    if spec.preset in PRESET_COLUMNS:
        expected = PRESET_COLUMNS[spec.preset]
        if tuple(columns) != expected:
            raise ValueError(
                f"{spec.input_csv}: preset {spec.preset} expects columns {list(expected)}, "
                f"found {list(columns)}"
            )
    elif spec.preset != "custom":
        raise ValueError(f"unknown preset {spec.preset!r}; known: fig1, fig2, custom")

    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    for name, values in columns.items():
        ys = [v if v is not None else math.nan for v in values]
        style = _STYLES.get(name, dict(linewidth=1.4))
        ax.plot(mus, ys, label=_LABELS.get(name, name), **style)
    if spec.log_x:
        ax.set_xscale("log")
    ax.set_xlabel("mean-power constraint")
    ax.set_ylabel("capacity upper bound (nats / channel use)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150, metadata={"Software": "dtpcap-figures"})
    x_range = ax.get_xlim()
    y_range = ax.get_ylim()
    plt.close(fig)
    return RenderResult(
        output_path=spec.output_path,
        curves=tuple(columns),
        points=len(mus),
        x_range=x_range,
        y_range=y_range,
    )


def main(argv=None):
    parser = argparse.ArgumentParser(prog="figures", description="Render dtpcap sweep CSVs")
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--preset", choices=["fig1", "fig2", "custom"], default="custom")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--linear-x", action="store_true", help="linear instead of log mu axis")
    args = parser.parse_args(argv)
    spec = FigureSpec(input_csv=args.csv, preset=args.preset, output_path=args.out, log_x=not args.linear_x)
    try:
        result = render(spec)
    except (ValueError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"wrote {result.output_path} ({len(result.curves)} curves, {result.points} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
