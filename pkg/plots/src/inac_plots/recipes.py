"""Figure recipes: one fixed layout per experiment kind.

A recipe binds an input CSV and output image path to the axis columns,
scales, labels, and series-grouping columns of a known figure kind.
Styling is fixed — no configuration — so rendered output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tables import PlotError


@dataclass(frozen=True)
class FigureRecipe:
    input_path: str
    kind: str
    output_path: str
    x_column: str
    y_column: str
    group_columns: tuple[str, ...]
    x_label: str
    y_label: str
    x_scale: str = "linear"
    y_scale: str = "linear"
    error_column: str | None = None
    scatter: bool = False
    # optional second y-axis (error/rate trade-off figure)
    y2_column: str | None = None
    y2_label: str | None = None
    y2_scale: str = "linear"
    error2_column: str | None = None

    @property
    def required_columns(self) -> list[str]:
        cols = [self.x_column, self.y_column, *self.group_columns]
        for extra in (self.error_column, self.y2_column, self.error2_column):
            if extra is not None:
                cols.append(extra)
        # preserve order, drop duplicates
        return list(dict.fromkeys(cols))


# Axis layout per figure kind.  Keys match the experiment `kind` metadata
# written into each preset CSV, so render-all can pair files to figures
# without relying on file names.
_KIND_FIELDS: dict[str, dict] = {
    "error_vs_pdop": dict(
        x_column="pdop",
        y_column="mean_error_m",
        group_columns=("user_kind",),
        x_label="PDoP",
        y_label="positioning error (m)",
        y_scale="log",
        error_column="stderr_m",
        scatter=True,
    ),
    "error_vs_num_sats": dict(
        x_column="num_anchors",
        y_column="mean_error_m",
        group_columns=("algo", "user_kind"),
        x_label="number of anchors",
        y_label="positioning error (m)",
        y_scale="log",
        error_column="stderr_m",
    ),
    "power_vs_elements": dict(
        x_column="n_elements",
        y_column="power_w",
        group_columns=("mode", "signal"),
        x_label="STAR-RIS elements",
        y_label="minimum transmit power (W)",
        x_scale="log",
        y_scale="log",
    ),
    "pdop_vs_direct_sats": dict(
        x_column="num_direct",
        y_column="pdop",
        group_columns=("variant",),
        x_label="directly visible satellites",
        y_label="PDoP",
    ),
    "rate_vs_elements": dict(
        x_column="n_elements",
        y_column="mean_rate",
        group_columns=("mode", "user_kind"),
        x_label="STAR-RIS elements",
        y_label="ergodic rate (bit/s/Hz)",
        x_scale="log",
        error_column="stderr",
    ),
    "rate_vs_alloc_factor": dict(
        x_column="omega_c",
        y_column="mean_rate",
        group_columns=("mode", "signal", "user_kind"),
        x_label="communication power factor",
        y_label="ergodic rate (bit/s/Hz)",
        error_column="stderr",
    ),
    "tradeoff_vs_distance": dict(
        x_column="distance_m",
        y_column="mean_error_m",
        group_columns=(),
        x_label="satellite-RIS distance (m)",
        y_label="positioning error (m)",
        y_scale="log",
        error_column="stderr_error",
        y2_column="mean_rate",
        y2_label="sum ergodic rate (bit/s/Hz)",
        error2_column="stderr_rate",
    ),
}

FIGURE_KINDS = tuple(_KIND_FIELDS)


def recipe_for(kind: str, input_path: str, output_path: str) -> FigureRecipe:
    try:
        fields = _KIND_FIELDS[kind]
    except KeyError:
        known = ", ".join(FIGURE_KINDS)
        raise PlotError(f"unknown figure kind {kind!r}; known kinds: {known}") from None
    return FigureRecipe(input_path=input_path, kind=kind, output_path=output_path, **fields)
