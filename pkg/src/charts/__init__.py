"""Plotly figures for sweep results, LoS maps and LoS traces."""
