"""Sequential, deterministic figure rendering from result CSVs."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .recipes import FIGURE_KINDS, FigureRecipe, recipe_for
from .tables import PlotError, Table, read_table

# Fixed styling; combined with a fixed hashsalt and stripped date metadata
# this makes repeated renders of the same CSV byte-identical.
_STYLE = {
    "svg.hashsalt": "inac-plots",
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "lines.markersize": 5,
}

_MARKERS = ("o", "s", "^", "v", "D", "x", "+", "*", "<", ">", "p", "h")


def _check_columns(table: Table, recipe: FigureRecipe) -> None:
    missing = table.missing_columns(recipe.required_columns)
    if missing:
        raise PlotError(f"{table.path}: missing columns: {', '.join(missing)}")
    if not table.rows:
        raise PlotError(f"{table.path}: empty table (no data rows)")


def _series(table: Table, recipe: FigureRecipe):
    """Split rows into (label, xs, ys, errs) series, one per group value."""
    group_idx = [table.columns.index(c) for c in recipe.group_columns]
    x_idx = table.columns.index(recipe.x_column)
    y_idx = table.columns.index(recipe.y_column)
    err_idx = (
        table.columns.index(recipe.error_column) if recipe.error_column else None
    )
    grouped: dict[tuple, list] = {}
    for row in table.rows:
        key = tuple(row[i] for i in group_idx)
        grouped.setdefault(key, []).append(row)
    for key in sorted(grouped):
        xs, ys, errs = [], [], []
        for row in grouped[key]:
            x, y = float(row[x_idx]), float(row[y_idx])
            if math.isnan(y):
                continue  # undefined point (e.g. PDoP below anchor minimum)
            xs.append(x)
            ys.append(y)
            errs.append(float(row[err_idx]) if err_idx is not None else 0.0)
        label = " / ".join(key) if key else recipe.y_label
        yield label, xs, ys, errs


def _draw_axis(ax, table: Table, recipe: FigureRecipe) -> None:
    for i, (label, xs, ys, errs) in enumerate(_series(table, recipe)):
        marker = _MARKERS[i % len(_MARKERS)]
        if recipe.scatter:
            ax.scatter(xs, ys, marker=marker, label=label, s=18)
        elif any(errs):
            ax.errorbar(xs, ys, yerr=errs, marker=marker, capsize=2, label=label)
        else:
            ax.plot(xs, ys, marker=marker, label=label)
    ax.set_xscale(recipe.x_scale)
    ax.set_yscale(recipe.y_scale)
    ax.set_xlabel(recipe.x_label)
    ax.set_ylabel(recipe.y_label)


def _save(fig, path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    if path.lower().endswith(".svg"):
        fig.savefig(path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(path, metadata={})
    plt.close(fig)


def render(recipe: FigureRecipe) -> str:
    """Render one figure; returns the output path.

    Raises PlotError (and writes no file) on a missing input, missing
    columns, or an empty table.
    """
    table = read_table(recipe.input_path)
    _check_columns(table, recipe)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        _draw_axis(ax, table, recipe)
        if recipe.y2_column is not None:
            twin = ax.twinx()
            twin_recipe = FigureRecipe(
                input_path=recipe.input_path,
                kind=recipe.kind,
                output_path=recipe.output_path,
                x_column=recipe.x_column,
                y_column=recipe.y2_column,
                group_columns=(),
                x_label=recipe.x_label,
                y_label=recipe.y2_label or recipe.y2_column,
                x_scale=recipe.x_scale,
                y_scale=recipe.y2_scale,
                error_column=recipe.error2_column,
            )
            for _, xs, ys, errs in _series(table, twin_recipe):
                twin.errorbar(
                    xs, ys, yerr=errs, marker="s", capsize=2,
                    color="tab:red", label=twin_recipe.y_label,
                )
            twin.set_yscale(recipe.y2_scale)
            twin.set_ylabel(twin_recipe.y_label)
            twin.grid(False)
            handles, labels = ax.get_legend_handles_labels()
            h2, l2 = twin.get_legend_handles_labels()
            ax.legend(handles + h2, labels + l2, loc="best")
        elif recipe.group_columns:
            ax.legend(loc="best")
        ax.set_title(recipe.kind.replace("_", " "))
        fig.tight_layout()
        _save(fig, recipe.output_path)
    return recipe.output_path


def _discover(results_dir: str) -> dict[str, Table]:
    """Map figure kind -> parsed table for every result CSV in a directory."""
    if not os.path.isdir(results_dir):
        raise PlotError(f"{results_dir}: no such directory")
    by_kind: dict[str, Table] = {}
    for name in sorted(os.listdir(results_dir)):
        if not name.endswith(".csv") or name.endswith(".raw.csv"):
            continue
        table = read_table(os.path.join(results_dir, name))
        kind = table.kind
        if kind in FIGURE_KINDS and kind not in by_kind:
            by_kind[kind] = table
    return by_kind


def render_all(results_dir: str, out_dir: str) -> list[str]:
    """Render every known figure kind from a directory of preset CSVs.

    Fails (writing nothing) if any of the seven kinds has no CSV or any
    input is missing required columns; the error names every problem.
    """
    by_kind = _discover(results_dir)
    problems = []
    missing_kinds = [k for k in FIGURE_KINDS if k not in by_kind]
    if missing_kinds:
        problems.append(f"no CSV found for kinds: {', '.join(missing_kinds)}")
    recipes = []
    for kind in FIGURE_KINDS:
        if kind not in by_kind:
            continue
        table = by_kind[kind]
        recipe = recipe_for(kind, table.path, os.path.join(out_dir, f"{kind}.svg"))
        try:
            _check_columns(table, recipe)
        except PlotError as exc:
            problems.append(str(exc))
            continue
        recipes.append(recipe)
    if problems:
        raise PlotError("; ".join(problems))
    return [render(recipe) for recipe in recipes]
