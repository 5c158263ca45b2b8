"""Figure templates for sweep results, LoS maps and LoS traces.

Each renderer takes the DataFrame written by src.data.results, so every
plot can be regenerated from CSV alone.
"""
from pathlib import Path
from typing import Union

import pandas as pd
import plotly.express as px
import plotly.graph_objects as go
import structlog

from src.charts.plotly_theme import STRATEGY_COLORS, apply_theme

logger = structlog.get_logger(__name__)

PathLike = Union[str, Path]

# Observable -> (aggregate column prefix, y-axis title, file stem)
SWEEP_OBSERVABLES = {
    "drop_blockage": ("drop_blockage", "Dropped due to blockage", "drop_blockage"),
    "drop_rate": ("drop_rate", "Dropped due to insufficient rate", "drop_rate"),
    "delay": ("mean_delay_ms", "Average caching delay [ms]", "delay"),
}


def render_sweep_chart(dataset: pd.DataFrame, observable: str) -> go.Figure:
    """Render one observable against interarrival time, one curve per strategy.

    Args:
        dataset: Aggregate DataFrame (see AGGREGATE_COLUMNS)
        observable: One of SWEEP_OBSERVABLES

    Returns:
        Plotly Figure with 95% CI whiskers
    """
    if observable not in SWEEP_OBSERVABLES:
        raise ValueError(f"Unknown observable: {observable}")
    prefix, y_title, _ = SWEEP_OBSERVABLES[observable]

    fig = go.Figure()
    for strategy, group in dataset.groupby("strategy", sort=False):
        group = group.sort_values("interarrival_ms")
        fig.add_trace(
            go.Scatter(
                x=group["interarrival_ms"],
                y=group[f"{prefix}_mean"],
                error_y=dict(type="data", array=group[f"{prefix}_ci95"], visible=True),
                mode="lines+markers",
                name=str(strategy),
                line=dict(color=STRATEGY_COLORS.get(str(strategy))),
            )
        )
    fig.update_layout(
        title=y_title,
        xaxis_title="Inter-arrival time [ms]",
        yaxis_title=y_title,
        height=400,
        width=600,
    )
    return apply_theme(fig)


def render_losmap_heatmap(dataset: pd.DataFrame) -> go.Figure:
    """Render a LoS probability map (long format: x_m, y_m, p_los) as a heat map."""
    grid = dataset.pivot(index="y_m", columns="x_m", values="p_los")
    fig = go.Figure(
        go.Heatmap(
            x=grid.columns,
            y=grid.index,
            z=grid.values,
            zmin=0.0,
            zmax=1.0,
            colorscale="Viridis",
            colorbar=dict(title="P(LoS)"),
        )
    )
    fig.update_layout(
        title="LoS probability to the base station",
        xaxis_title="x [m]",
        yaxis_title="y [m]",
        yaxis_scaleanchor="x",
        height=450,
        width=800,
    )
    return apply_theme(fig)


def render_trace_chart(dataset: pd.DataFrame) -> go.Figure:
    """Render per-link LoS traces (link, t_s, p_los), stacked one panel per link."""
    fig = px.line(
        dataset,
        x="t_s",
        y="p_los",
        color="link",
        facet_row="link",
        line_shape="hv",
    )
    fig.update_yaxes(range=[-0.05, 1.05], title_text="")
    fig.update_xaxes(title_text="")
    fig.for_each_annotation(lambda a: a.update(text=a.text.split("=")[-1]))
    fig.update_layout(
        title="LoS traces",
        showlegend=False,
        height=max(300, 150 * dataset["link"].nunique()),
        width=800,
    )
    return apply_theme(fig)


def export_svg(fig: go.Figure, path: PathLike) -> Path:
    """Write a figure as SVG (needs the kaleido engine)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.write_image(str(path), format="svg")
    logger.info("figure_written", path=str(path))
    return path


def write_sweep_plots(dataset: pd.DataFrame, out_dir: PathLike) -> list[Path]:
    """The three sweep plots (blockage drops, rate drops, delay) as SVG files."""
    out_dir = Path(out_dir)
    return [
        export_svg(render_sweep_chart(dataset, observable), out_dir / f"{stem}.svg")
        for observable, (_, _, stem) in SWEEP_OBSERVABLES.items()
    ]
