"""Layout shared by the exported SVG figures."""
import plotly.graph_objects as go

# Fixed per strategy so every sweep plot reads the same way
STRATEGY_COLORS = {
    "direct": "#dc2626",
    "storage": "#d97706",
    "predictive": "#2563eb",
}

_GRID_COLOR = "#e2e8f0"

# SVGs are viewed outside any page, so backgrounds are opaque white.
SVG_TEMPLATE = go.layout.Template(
    layout=go.Layout(
        colorway=list(STRATEGY_COLORS.values()),
        paper_bgcolor="#ffffff",
        plot_bgcolor="#ffffff",
        font=dict(family="DejaVu Sans, sans-serif", size=12, color="#334155"),
        xaxis=dict(gridcolor=_GRID_COLOR, zeroline=False),
        yaxis=dict(gridcolor=_GRID_COLOR, zeroline=False),
        legend=dict(bordercolor=_GRID_COLOR, borderwidth=1),
    )
)


def apply_theme(fig: go.Figure) -> go.Figure:
    """Apply SVG_TEMPLATE to a figure in place and return it."""
    fig.update_layout(template=SVG_TEMPLATE)
    return fig
