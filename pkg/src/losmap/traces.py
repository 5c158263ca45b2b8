"""Time-indexed LoS traces, short-horizon prediction and online refinement."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import structlog

from src.losmap.models import (
    BASE_STATION,
    LOS_THRESHOLD,
    Endpoint,
    LinkId,
    LosPrediction,
    LosTrace,
)
from src.scene import (
    Scene,
    box_owners,
    placed_boxes_at,
    poses_at,
    segments_blocked,
    trajectory_period,
)

logger = structlog.get_logger(__name__)

DEFAULT_TRACE_DT_S = 1e-3
DEFAULT_HORIZON_S = 0.05
DEFAULT_MARGINAL_DRAWS = 1000
DEFAULT_EMA_ALPHA = 0.2

# Upper bound on (samples x boxes) slab tests per vectorized batch.
_SEGMENTS_PER_BATCH = 500_000


def _endpoint_positions(scene: Scene, endpoint: Endpoint, times: np.ndarray) -> np.ndarray:
    if endpoint == BASE_STATION:
        return np.broadcast_to(scene.base_station.as_array(), (times.size, 3))
    device = scene.device(int(endpoint))
    out = np.empty((times.size, 3), dtype=float)
    out[:, :2] = poses_at(scene.trajectories[device.trajectory_id], times)
    out[:, 2] = device.antenna_height_m
    return out


def _endpoint_devices(link: LinkId) -> list[int]:
    return [int(e) for e in link if e != BASE_STATION]


def sample_times(dt: float, t_end: float) -> np.ndarray:
    """Sample instants k*dt covering [0, t_end)."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if t_end < dt:
        raise ValueError(f"t_end must be >= dt, got t_end={t_end}, dt={dt}")
    n = int(round(t_end / dt))
    return np.arange(n, dtype=float) * dt


def build_los_trace(
    scene: Scene,
    link: LinkId,
    dt: float = DEFAULT_TRACE_DT_S,
    t_end: float = 1.0,
    marginalize: bool = False,
    rng_seed: int = 0,
    n_draws: int = DEFAULT_MARGINAL_DRAWS,
) -> LosTrace:
    """LoS trace of a link sampled every dt over [0, t_end).

    With marginalize=False all trajectories and phases are known and each
    sample is the exact 0/1 LoS indicator. With marginalize=True the phase
    offsets of the blocker trajectories (those not carrying a link endpoint)
    are unknown and each sample averages n_draws random phase draws.
    """
    times = sample_times(dt, t_end)
    a_end, b_end = link
    a = _endpoint_positions(scene, a_end, times)
    b = _endpoint_positions(scene, b_end, times)
    endpoints = _endpoint_devices(link)
    active = ~np.isin(box_owners(scene), np.asarray(endpoints, dtype=np.int64))

    if not marginalize:
        samples = np.empty(times.size, dtype=float)
        per_batch = max(1, _SEGMENTS_PER_BATCH // max(1, active.size))
        for start in range(0, times.size, per_batch):
            stop = min(start + per_batch, times.size)
            boxes = placed_boxes_at(scene, times[start:stop])
            blocked = segments_blocked(boxes, a[start:stop], b[start:stop], active)
            samples[start:stop] = 1.0 - blocked
        return LosTrace(link_id=link, dt=dt, samples=samples)

    known = {scene.device(d).trajectory_id for d in endpoints}
    rng = np.random.default_rng(rng_seed)
    offsets = {
        trajectory_id: rng.uniform(0.0, trajectory_period(trajectory), n_draws)
        for trajectory_id, trajectory in sorted(scene.trajectories.items())
        if trajectory_id not in known
    }

    clear = np.zeros(times.size, dtype=float)
    per_batch = max(1, _SEGMENTS_PER_BATCH // (n_draws * max(1, active.size)))
    for start in range(0, times.size, per_batch):
        stop = min(start + per_batch, times.size)
        block = times[start:stop]
        clocks: dict[str, np.ndarray] = {}
        for trajectory_id, trajectory in scene.trajectories.items():
            if trajectory_id in known:
                # Known phase: pose_at already applies the trajectory's own offset.
                clocks[trajectory_id] = np.repeat(block, n_draws)
            else:
                # Unknown phase: replace the declared offset by the drawn one.
                own = trajectory.phase_offset_s
                clocks[trajectory_id] = (block[:, None] + offsets[trajectory_id][None, :] - own).ravel()
        boxes = placed_boxes_at(scene, clocks).reshape(stop - start, n_draws, -1, 5)
        blocked = segments_blocked(
            boxes, a[start:stop, None, :], b[start:stop, None, :], active
        )
        clear[start:stop] = 1.0 - blocked.mean(axis=1)

    logger.debug("trace_marginalized", link=str(link), samples=times.size, n_draws=n_draws)
    return LosTrace(link_id=link, dt=dt, samples=clear)


def _window_sum(trace: LosTrace, start: int, count: int) -> float:
    """Sum of `count` consecutive samples starting at absolute index `start` (periodic)."""
    n = trace.samples.size
    prefix = trace.prefix_sums
    total = prefix[-1]

    def cumulative(i: int) -> float:
        return (i // n) * total + prefix[i % n]

    return float(cumulative(start + count) - cumulative(start))


def predict_los(trace: LosTrace, t: float, horizon: float = DEFAULT_HORIZON_S) -> LosPrediction:
    """Short-horizon outlook of a link from its (periodic) trace.

    p_horizon averages the samples in [t, t + horizon); residual_los_s is the
    time until the state (p >= 0.5) first flips, capped at the trace period.
    """
    if t < 0 or horizon < 0:
        raise ValueError(f"t and horizon must be >= 0, got t={t}, horizon={horizon}")
    n = trace.samples.size
    k0 = trace.index_at(t)
    p_now = float(trace.samples[k0 % n])

    count = max(1, int(round(horizon / trace.dt)))
    p_horizon = min(1.0, max(0.0, _window_sum(trace, k0, count) / count))

    # First flip strictly after the current sample, within one period.
    position = k0 % n
    changes = trace.change_points
    nxt = np.searchsorted(changes, position, side="right")
    if nxt < changes.size:
        flip_index = k0 + int(changes[nxt]) - position
        residual = max(0.0, flip_index * trace.dt - t)
    else:
        residual = trace.period

    return LosPrediction(
        p_now=p_now,
        p_horizon=p_horizon,
        residual_los_s=min(residual, trace.period),
        horizon_s=horizon,
    )


def update_trace_from_observations(
    trace: LosTrace,
    observations: Iterable[tuple[float, bool]],
    alpha: float = DEFAULT_EMA_ALPHA,
) -> LosTrace:
    """Fold observed LoS states into the trace: p <- (1 - alpha) p + alpha obs."""
    observations = list(observations)
    if not observations:
        return trace
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie within (0, 1], got {alpha}")

    samples = trace.samples.copy()
    n = samples.size
    for t, los in observations:
        k = trace.index_at(t) % n
        samples[k] = (1.0 - alpha) * samples[k] + alpha * float(los)
    return LosTrace(link_id=trace.link_id, dt=trace.dt, samples=np.clip(samples, 0.0, 1.0))


def learning_prior(link: LinkId, dt: float, period: float, p0: float = 0.5) -> LosTrace:
    """Uninformed periodic trace that starts a learning period."""
    n = max(1, int(round(period / dt)))
    return LosTrace(link_id=link, dt=dt, samples=np.full(n, p0, dtype=float))


def trace_period(trace: LosTrace) -> float:
    return trace.period


def los_fraction_any(traces: Sequence[LosTrace]) -> float:
    """Fraction of sample instants at which at least one trace is in LoS (p >= 0.5)."""
    if not traces:
        raise ValueError("At least one trace is required")
    n = traces[0].samples.size
    if any(tr.samples.size != n for tr in traces):
        raise ValueError("Traces must share the same number of samples")
    states = np.stack([tr.samples >= LOS_THRESHOLD for tr in traces])
    return float(states.any(axis=0).mean())
