"""Deterministic tick-driven discrete-event simulation of one run.

Each tick covers [k * tick_s, (k + 1) * tick_s) and is processed when it
closes, after the arrivals inside it. Inside a tick the link states are
frozen; transfers progress analytically from max(tick start, creation), so
completions and deadlines land at exact instants rather than on tick
boundaries.
"""
from __future__ import annotations

import heapq
import math
from typing import Iterator, Optional

import numpy as np
import structlog

from src.dissemination.caching import cache_insert, cache_release
from src.dissemination.models import (
    CacheState,
    Content,
    ContentState,
    DecisionContext,
    Mode,
    Neighbor,
    StrategyKind,
)
from src.dissemination.policy import can_push, select_mode
from src.dissemination.transfer import advance_content, advance_handoff, begin_handoff
from src.engine.config import SimConfig
from src.engine.events import Event, EventKind, EventQueue
from src.engine.links import LinkTables, share_uplink
from src.engine.metrics import Metrics
from src.engine.prediction import make_predictor
from src.engine.traffic import generate_traffic, traffic_phases
from src.exceptions import ConservationError
from src.losmap.models import LosPrediction
from src.radio.models import LinkState
from src.scene import Scene, trajectory_period, with_phase_offsets

logger = structlog.get_logger(__name__)

_TIME_EPS_S = 1e-12

_WAITING = frozenset(
    {ContentState.QUEUED, ContentState.STORED_LOCAL, ContentState.FORWARDED_TO}
)
_PUSHABLE = _WAITING | {ContentState.UPLOADING}


def randomize_start_positions(scene: Scene, rng: np.random.Generator) -> Scene:
    """Draw a uniform phase offset for every trajectory that carries a device."""
    used = sorted({device.trajectory_id for device in scene.devices})
    offsets = {
        trajectory_id: float(rng.uniform(0.0, trajectory_period(scene.trajectories[trajectory_id])))
        for trajectory_id in used
    }
    return with_phase_offsets(scene, offsets)


def n_ticks_for(config: SimConfig) -> int:
    """Number of ticks starting before the end of the run."""
    return int(math.ceil(config.sim_duration_s / config.tick_s - 1e-9))


class _Device:
    """Mutable per-device run state."""

    def __init__(self, device_id: int, column: int, cache_capacity_bits: float):
        self.device_id = device_id
        self.column = column
        # Held contents in arrival order (dicts keep insertion order).
        self.fifo: dict[int, Content] = {}
        self.cache = CacheState(capacity_bits=cache_capacity_bits)
        # Accumulated uplink outage time; contents settle against it lazily.
        self.outage_clock = 0.0


class Simulator:
    """One run of a configuration under one seed."""

    def __init__(self, config: SimConfig, seed: int):
        config.validate()
        self.config = config
        self.seed = seed
        self.strategy = config.strategy
        self.thresholds = config.thresholds
        self.tick_s = config.tick_s
        self.n_ticks = n_ticks_for(config)

        rng = np.random.default_rng(seed)
        scene = config.scene
        if config.randomize_start_positions:
            scene = randomize_start_positions(scene, rng)
        self.scene = scene
        phases = traffic_phases(config, rng)

        horizon_ticks = int(math.ceil(self.thresholds.horizon_s / self.tick_s - 1e-9))
        self.links = LinkTables(
            scene,
            config.radio_infra,
            config.radio_d2d,
            self.tick_s,
            self.n_ticks + horizon_ticks,
        )
        self.predictor = make_predictor(config, scene, self.links)
        self.devices = {
            device_id: _Device(device_id, column, config.cache_capacity_bits)
            for column, device_id in enumerate(scene.device_ids)
        }

        self.metrics = Metrics(
            strategy=self.strategy.value, interarrival_s=config.interarrival_s, seed=seed
        )
        self.live: dict[int, Content] = {}
        self.handoffs: dict[int, Content] = {}
        self._marks: dict[int, float] = {}
        self._arrived: list[Content] = []
        self._deadlines: list[tuple[float, int]] = []
        self._predictions: dict[tuple[int, float], LosPrediction] = {}
        self._neighbor_links: dict[tuple[int, int], list[tuple[int, LinkState]]] = {}
        self._traffic: Iterator[Content] = generate_traffic(config, rng, phases)
        self.queue = EventQueue()

    # ------------------------------------------------------------------
    # Event loop
    # ------------------------------------------------------------------

    def run(self) -> Metrics:
        logger.info(
            "run_started",
            seed=self.seed,
            strategy=self.strategy.value,
            interarrival_ms=self.config.interarrival_s * 1e3,
            devices=len(self.devices),
            ticks=self.n_ticks,
        )
        self._schedule_next_arrival()
        self.queue.push(Event(0.0, EventKind.DECISION_EPOCH, payload=0))
        self.queue.push(self._tick_event(0))
        self.queue.push(Event(self.config.sim_duration_s, EventKind.SIM_END))

        while self.queue:
            event = self.queue.pop()
            if event.kind is EventKind.SIM_END:
                break
            if event.kind is EventKind.CONTENT_ARRIVAL:
                self._on_arrival(event)
            elif event.kind is EventKind.DECISION_EPOCH:
                self._on_decision_epoch(event)
            else:
                self._on_tick(event)

        self.metrics.n_censored = len(self.live)
        self._check_conservation(self.config.sim_duration_s)
        censored_bits = sum(c.size_bits for c in self.live.values())
        accounted = self.metrics.delivered_bits + self.metrics.dropped_bits + censored_bits
        if not math.isclose(accounted, self.metrics.generated_bits, rel_tol=1e-9, abs_tol=1e-6):
            raise ConservationError(
                self.config.sim_duration_s,
                self.metrics.n_generated,
                self.metrics.n_delivered,
                self.metrics.n_dropped,
                len(self.live),
            )
        logger.info(
            "run_finished",
            seed=self.seed,
            strategy=self.strategy.value,
            generated=self.metrics.n_generated,
            delivered=self.metrics.n_delivered,
            dropped_blockage=self.metrics.n_dropped_blockage,
            dropped_rate=self.metrics.n_dropped_rate,
            censored=self.metrics.n_censored,
        )
        return self.metrics

    def _schedule_next_arrival(self) -> None:
        content = next(self._traffic, None)
        if content is not None:
            self.queue.push(
                Event(content.created_at, EventKind.CONTENT_ARRIVAL, content.origin_device, content)
            )

    def _tick_index(self, t: float) -> int:
        return min(int(math.floor(t / self.tick_s + 1e-9)), self.n_ticks - 1)

    def _tick_event(self, k: int) -> Event:
        """Event closing tick k; the last one never lands after the end of the run."""
        return Event(
            min((k + 1) * self.tick_s, self.config.sim_duration_s), EventKind.TICK, payload=k
        )

    # ------------------------------------------------------------------
    # Handlers
    # ------------------------------------------------------------------

    def _on_arrival(self, event: Event) -> None:
        content: Content = event.payload
        device = self.devices[content.origin_device]
        self.metrics.record_generated(content)
        self.live[content.content_id] = content
        device.fifo[content.content_id] = content
        self._marks[content.content_id] = device.outage_clock
        self._arrived.append(content)
        heapq.heappush(self._deadlines, (content.deadline_at, content.content_id))

        if self.strategy is not StrategyKind.DIRECT:
            self._decide(content, event.time, self._tick_index(event.time))
        self._schedule_next_arrival()

    def _on_decision_epoch(self, event: Event) -> None:
        t = event.time
        k = self._tick_index(t)
        los = self.links.infra.los[k]
        for device in self.devices.values():
            self.predictor.observe(device.device_id, t, bool(los[device.column]))

        if self.strategy is not StrategyKind.DIRECT:
            self._neighbor_links.clear()
            for device in self.devices.values():
                for content in list(device.fifo.values()):
                    if content.state in _WAITING:
                        self._decide(content, t, k)

        epoch = event.payload + 1
        next_t = epoch * self.thresholds.redecision_s
        if next_t < self.config.sim_duration_s:
            self.queue.push(Event(next_t, EventKind.DECISION_EPOCH, payload=epoch))

    def _on_tick(self, event: Event) -> None:
        k: int = event.payload
        t = k * self.tick_s
        dt = self.tick_s
        self._predictions.clear()

        infra = self.links.infra
        rate = infra.rate_bps[k]
        outage = infra.outage[k]
        direct = self.strategy is StrategyKind.DIRECT

        if not direct:
            # Uploads that lose every usable rate fall back to local storage.
            for device in self.devices.values():
                if outage[device.column]:
                    for content in device.fifo.values():
                        if content.state is ContentState.UPLOADING:
                            self._store_locally(content)

        touched: list[Content] = []
        if self.handoffs:
            touched.extend(self._advance_handoffs(k, t, dt))
        touched.extend(self._push_heads(t, dt, rate, outage))

        while self._deadlines and self._deadlines[0][0] <= t + dt + _TIME_EPS_S:
            _, content_id = heapq.heappop(self._deadlines)
            content = self.live.get(content_id)
            if content is None:
                continue
            device = self.devices[content.holder]
            self._settle(content)
            advance_content(
                content,
                t,
                dt,
                0.0,
                in_outage=bool(outage[device.column]),
                block_threshold=self.thresholds.block,
            )
            self._finalize(content)

        for device in self.devices.values():
            if outage[device.column]:
                device.outage_clock += dt
        for content in touched:
            if not content.is_terminal and content.state is not ContentState.FORWARDING:
                self._marks[content.content_id] = self.devices[content.holder].outage_clock
        self._credit_arrivals(touched, outage, t + dt)

        self._check_conservation(t + dt)
        if k + 1 < self.n_ticks:
            self.queue.push(self._tick_event(k + 1))

    def _push_heads(
        self, t: float, dt: float, rate: np.ndarray, outage: np.ndarray
    ) -> list[Content]:
        """Processor sharing of the cell over [t, t + dt).

        Each pushing device uploads its head-of-line content. Heads join when
        they become available and leave when they complete or expire, at which
        point the next content in that device's queue takes over. The k heads
        active at any moment each get their own rate divided by k.
        """
        direct = self.strategy is StrategyKind.DIRECT
        end = t + dt
        heads: dict[int, Content] = {}
        for device in self.devices.values():
            # Other strategies leave devices without a usable uplink out of the cell.
            if not direct and outage[device.column]:
                continue
            head = self._head_of_line(device)
            if head is not None:
                heads[device.device_id] = head

        touched: dict[int, Content] = {}
        now = t
        while heads and now < end:
            active = [
                (device_id, content)
                for device_id, content in heads.items()
                if content.available_at <= now + _TIME_EPS_S
            ]
            joins = [c.available_at for c in heads.values() if c.available_at > now + _TIME_EPS_S]
            step_end = min(joins + [end])
            if not active:
                now = step_end
                continue

            columns = [self.devices[device_id].column for device_id, _ in active]
            shares = share_uplink(np.array([rate[column] for column in columns]))
            for (_, content), share in zip(active, shares):
                if share > 0:
                    step_end = min(step_end, now + content.remaining_bits / share)
                step_end = min(step_end, content.deadline_at)
            elapsed = max(0.0, step_end - now)

            for (device_id, content), column, share in zip(active, columns, shares):
                if content.content_id not in touched:
                    self._settle(content)
                advance_content(
                    content,
                    now,
                    elapsed,
                    float(share),
                    in_outage=bool(outage[column]),
                    block_threshold=self.thresholds.block,
                )
                if content.is_terminal:
                    touched.pop(content.content_id, None)
                    self._finalize(content)
                    successor = self._head_of_line(self.devices[device_id])
                    if successor is None:
                        del heads[device_id]
                    else:
                        heads[device_id] = successor
                else:
                    touched[content.content_id] = content
            now = max(now, step_end)
        return list(touched.values())

    def _advance_handoffs(self, k: int, t: float, dt: float) -> list[Content]:
        moved = []
        for content_id in sorted(self.handoffs):
            content = self.handoffs[content_id]
            origin = self.devices[content.holder]
            helper = self.devices[content.target]
            link = self.links.d2d_state(k, origin.device_id, helper.device_id)
            advance_handoff(
                content,
                t,
                dt,
                link.rate_bps,
                link.usable,
                in_outage=not link.usable,
                block_threshold=self.thresholds.block,
            )
            if content.state is ContentState.FORWARDING:
                continue
            del self.handoffs[content_id]
            if content.state is ContentState.FORWARDED_TO:
                del origin.fifo[content_id]
                helper.fifo[content_id] = content
                # Outage from here on is counted on the helper's uplink.
                self._marks[content_id] = helper.outage_clock
                moved.append(content)
            elif content.state is ContentState.STORED_LOCAL:
                cache_release(helper.cache, content_id)
                self._marks[content_id] = origin.outage_clock
            else:
                self._finalize(content)
        return moved

    # ------------------------------------------------------------------
    # Content helpers
    # ------------------------------------------------------------------

    def _credit_arrivals(self, touched: list[Content], outage: np.ndarray, end: float) -> None:
        """Charge contents born this tick that only waited for the part of it they lived."""
        advanced = {content.content_id for content in touched}
        for content in self._arrived:
            if content.is_terminal or content.state is ContentState.FORWARDING:
                continue
            if content.content_id in advanced:
                continue
            device = self.devices[content.holder]
            if outage[device.column]:
                content.outage_s += end - content.created_at
            self._marks[content.content_id] = device.outage_clock
        self._arrived.clear()

    def _head_of_line(self, device: _Device) -> Optional[Content]:
        for content in device.fifo.values():
            if content.state in _PUSHABLE and content.mode is Mode.DIRECT_PUSH:
                return content
        return None

    def _settle(self, content: Content) -> None:
        clock = self.devices[content.holder].outage_clock
        content.outage_s += clock - self._marks.get(content.content_id, clock)
        self._marks[content.content_id] = clock

    def _store_locally(self, content: Content) -> None:
        content.state = ContentState.STORED_LOCAL
        content.mode = Mode.STORE_AND_PUSH
        content.was_stored = True

    def _finalize(self, content: Content) -> None:
        content_id = content.content_id
        del self.live[content_id]
        self._marks.pop(content_id, None)
        self.handoffs.pop(content_id, None)
        self.devices[content.holder].fifo.pop(content_id, None)
        if content.target is not None:
            cache_release(self.devices[content.target].cache, content_id)
        if content.state is ContentState.DELIVERED:
            self.metrics.record_delivered(content)
        else:
            self.metrics.record_dropped(content)

    def _check_conservation(self, t: float) -> None:
        m = self.metrics
        if m.n_generated != m.n_delivered + m.n_dropped + len(self.live):
            raise ConservationError(t, m.n_generated, m.n_delivered, m.n_dropped, len(self.live))

    # ------------------------------------------------------------------
    # Decisions
    # ------------------------------------------------------------------

    def _predict(self, device_id: int, t: float) -> LosPrediction:
        key = (device_id, t)
        prediction = self._predictions.get(key)
        if prediction is None:
            prediction = self.predictor.predict(device_id, t)
            self._predictions[key] = prediction
        return prediction

    def _usable_neighbors(self, holder: int, k: int) -> list[tuple[int, LinkState]]:
        key = (holder, k)
        links = self._neighbor_links.get(key)
        if links is None:
            links = self.links.d2d_neighbors(k, holder)
            self._neighbor_links[key] = links
        return links

    def _decide(self, content: Content, t: float, k: int) -> None:
        holder = content.holder
        ctx = DecisionContext(
            device_id=holder,
            now=t,
            infra=self.links.infra_state(k, holder),
            infra_prediction=self._predict(holder, t),
            content_bits=content.size_bits,
        )
        # Relayed contents are never relayed again.
        if (
            self.strategy is StrategyKind.PREDICTIVE
            and not content.is_relayed
            and not can_push(ctx, self.thresholds)
        ):
            neighbors = tuple(
                Neighbor(
                    device_id=helper_id,
                    d2d=link,
                    helper_prediction=self._predict(helper_id, t),
                    headroom_bits=self.devices[helper_id].cache.headroom_bits,
                )
                for helper_id, link in self._usable_neighbors(holder, k)
            )
            ctx = DecisionContext(
                device_id=holder,
                now=t,
                infra=ctx.infra,
                infra_prediction=ctx.infra_prediction,
                neighbors=neighbors,
                content_bits=content.size_bits,
            )

        decision = select_mode(self.strategy, ctx, self.thresholds)
        if decision.mode is Mode.DIRECT_PUSH:
            content.mode = Mode.DIRECT_PUSH
        elif decision.mode is Mode.FORWARD_AND_PUSH and cache_insert(
            self.devices[decision.helper_id].cache, content, now=t
        ):
            self._settle(content)
            begin_handoff(content, decision.helper_id, self.config.radio_d2d.setup_time_s)
            self.handoffs[content.content_id] = content
        else:
            self._store_locally(content)


def run(config: SimConfig, seed: int) -> Metrics:
    """Simulate one run; identical (config, seed) give identical Metrics."""
    return Simulator(config, seed).run()
