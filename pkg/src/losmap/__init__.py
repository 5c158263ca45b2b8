"""Probabilistic LoS maps, link traces and short-horizon LoS prediction."""
from src.losmap.maps import (
    box_clear_probability,
    build_infra_los_map,
    build_point_los_map,
    grid_centers,
    has_motion,
    los_probability_d2d,
)
from src.losmap.models import (
    BASE_STATION,
    LOS_THRESHOLD,
    LinkId,
    LosMap,
    LosPrediction,
    LosTrace,
    infra_link,
)
from src.losmap.traces import (
    build_los_trace,
    learning_prior,
    los_fraction_any,
    predict_los,
    sample_times,
    trace_period,
    update_trace_from_observations,
)

__all__ = [
    "BASE_STATION",
    "LOS_THRESHOLD",
    "LinkId",
    "LosMap",
    "LosPrediction",
    "LosTrace",
    "box_clear_probability",
    "build_infra_los_map",
    "build_los_trace",
    "build_point_los_map",
    "grid_centers",
    "has_motion",
    "infra_link",
    "learning_prior",
    "los_fraction_any",
    "los_probability_d2d",
    "predict_los",
    "sample_times",
    "trace_period",
    "update_trace_from_observations",
]
