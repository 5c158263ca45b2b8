"""Per-run counters, the observables derived from them, and cross-run aggregation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.dissemination.models import Content, DropCause, Mode

CI_Z = 1.96


@dataclass
class DeviceMetrics:
    """Outcome counters of the contents originated by one device."""

    n_generated: int = 0
    n_delivered: int = 0
    n_dropped_blockage: int = 0
    n_dropped_rate: int = 0
    n_relayed_for_others: int = 0


@dataclass
class Metrics:
    """Outcome of one run.

    Contents still in flight at the end of the run are censored: counted in
    n_censored and excluded from drop and delay statistics.
    """

    strategy: str = ""
    interarrival_s: float = 0.0
    seed: int = 0
    n_generated: int = 0
    n_delivered: int = 0
    n_dropped_blockage: int = 0
    n_dropped_rate: int = 0
    n_censored: int = 0
    generated_bits: float = 0.0
    delivered_bits: float = 0.0
    dropped_bits: float = 0.0
    delay_samples: list[float] = field(default_factory=list)
    delivered_by_mode: dict[str, int] = field(
        default_factory=lambda: {mode.value: 0 for mode in Mode}
    )
    per_device: dict[int, DeviceMetrics] = field(default_factory=dict)

    @property
    def n_dropped(self) -> int:
        return self.n_dropped_blockage + self.n_dropped_rate

    @property
    def n_resolved(self) -> int:
        return self.n_delivered + self.n_dropped

    def device(self, device_id: int) -> DeviceMetrics:
        return self.per_device.setdefault(device_id, DeviceMetrics())

    def record_generated(self, content: Content) -> None:
        self.n_generated += 1
        self.generated_bits += content.size_bits
        self.device(content.origin_device).n_generated += 1

    def record_delivered(self, content: Content) -> None:
        self.n_delivered += 1
        self.delivered_bits += content.size_bits
        self.delay_samples.append(content.delay_s)
        mode = content.delivered_mode or Mode.DIRECT_PUSH
        self.delivered_by_mode[mode.value] += 1
        self.device(content.origin_device).n_delivered += 1
        if content.forwarded:
            self.device(content.holder).n_relayed_for_others += 1

    def record_dropped(self, content: Content) -> None:
        self.dropped_bits += content.size_bits
        origin = self.device(content.origin_device)
        if content.drop_cause is DropCause.BLOCKAGE:
            self.n_dropped_blockage += 1
            origin.n_dropped_blockage += 1
        else:
            self.n_dropped_rate += 1
            origin.n_dropped_rate += 1

    @property
    def in_flight(self) -> int:
        return self.n_generated - self.n_resolved


@dataclass(frozen=True)
class Observables:
    drop_blockage: float
    drop_rate: float
    mean_delay_s: float

    @property
    def drop_total(self) -> float:
        return self.drop_blockage + self.drop_rate


def observables(metrics: Metrics) -> Observables:
    """Drop proportions over resolved contents and the mean delivery delay (NaN if none)."""
    resolved = metrics.n_resolved
    if resolved == 0:
        drop_blockage = drop_rate = 0.0
    else:
        drop_blockage = metrics.n_dropped_blockage / resolved
        drop_rate = metrics.n_dropped_rate / resolved
    mean_delay = float(np.mean(metrics.delay_samples)) if metrics.delay_samples else math.nan
    return Observables(drop_blockage=drop_blockage, drop_rate=drop_rate, mean_delay_s=mean_delay)


@dataclass(frozen=True)
class Estimate:
    """Mean over runs with the half-width of its normal-approximation 95% CI."""

    mean: float
    ci95: float
    n: int


def estimate(values: Sequence[float]) -> Estimate:
    """Mean and 1.96 * s / sqrt(n); NaN entries are ignored, a single value has CI 0."""
    array = np.asarray(values, dtype=float)
    array = array[~np.isnan(array)]
    n = int(array.size)
    if n == 0:
        return Estimate(mean=math.nan, ci95=math.nan, n=0)
    mean = float(np.mean(array))
    ci = 0.0 if n == 1 else float(CI_Z * np.std(array, ddof=1) / math.sqrt(n))
    return Estimate(mean=mean, ci95=ci, n=n)


@dataclass(frozen=True)
class RunReport:
    """Runs of one (strategy, interarrival) point and their aggregate observables."""

    runs: tuple[Metrics, ...]
    drop_blockage: Estimate
    drop_rate: Estimate
    mean_delay_s: Estimate

    @property
    def strategy(self) -> str:
        return self.runs[0].strategy

    @property
    def interarrival_s(self) -> float:
        return self.runs[0].interarrival_s

    @property
    def drop_total(self) -> Estimate:
        return estimate([observables(m).drop_total for m in self.runs])


def aggregate(reports: Sequence[Metrics]) -> RunReport:
    """Aggregate runs (sorted by seed first, so the result is order-insensitive)."""
    if not reports:
        raise ValueError("aggregate needs at least one run")
    runs = tuple(sorted(reports, key=lambda m: m.seed))
    values = [observables(m) for m in runs]
    return RunReport(
        runs=runs,
        drop_blockage=estimate([v.drop_blockage for v in values]),
        drop_rate=estimate([v.drop_rate for v in values]),
        mean_delay_s=estimate([v.mean_delay_s for v in values]),
    )
