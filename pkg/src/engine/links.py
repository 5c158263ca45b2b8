"""Per-tick link states of a run and uplink bandwidth sharing.

Device poses are known functions of time, so the infrastructure link table
of a run is computed up front in vectorized batches. D2D links are only
needed where a decision or a handoff looks at them, so they are evaluated on
demand for one transmitter at one tick.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import structlog

from src.losmap.models import LosTrace, infra_link
from src.radio.link_budget import MIN_DISTANCE_M, link_rates, pathloss_db, snr_db
from src.radio.models import LinkState, RadioParams
from src.scene import Scene, box_owners, device_positions, placed_boxes_at, segments_blocked

logger = structlog.get_logger(__name__)

# Upper bound on (ticks x devices x boxes) slab tests per infrastructure batch.
_INFRA_TESTS_PER_BATCH = 2_000_000


def share_uplink(own_rates: np.ndarray) -> np.ndarray:
    """Processor sharing on one cell: each of the k active transfers gets own_rate / k."""
    own_rates = np.asarray(own_rates, dtype=float)
    if own_rates.size == 0:
        raise ValueError("share_uplink needs at least one active transfer")
    return own_rates / own_rates.size


@dataclass(frozen=True)
class LinkArrays:
    """Link quantities over some leading shape: LoS, distance, pathloss, rate, usability."""

    los: np.ndarray
    distance_m: np.ndarray
    pathloss_db: np.ndarray
    rate_bps: np.ndarray
    usable: np.ndarray

    @property
    def outage(self) -> np.ndarray:
        """No usable rate. A usable NLoS link is degraded, not in outage."""
        return ~self.usable


def _evaluate(params: RadioParams, distance: np.ndarray, los: np.ndarray) -> LinkArrays:
    valid = distance > 0
    safe = np.where(valid, distance, MIN_DISTANCE_M)
    loss = np.asarray(pathloss_db(params, safe, los), dtype=float)
    loss = loss + np.where(los, 0.0, params.blockage_loss_db)
    rate, usable = link_rates(params, safe, los)
    rate = np.where(valid, rate, 0.0)
    return LinkArrays(
        los=los & valid,
        distance_m=distance,
        pathloss_db=loss,
        rate_bps=rate,
        usable=usable & valid,
    )


def _link_state(params: RadioParams, arrays: LinkArrays, index: tuple[int, ...]) -> LinkState:
    loss = float(arrays.pathloss_db[index])
    return LinkState(
        los=bool(arrays.los[index]),
        distance_m=float(arrays.distance_m[index]),
        pathloss_db=loss,
        snr_db=float(snr_db(params, loss)),
        rate_bps=float(arrays.rate_bps[index]),
        usable=bool(arrays.usable[index]),
    )


class LinkTables:
    """Infrastructure and D2D link states of one run, indexed by tick."""

    def __init__(
        self,
        scene: Scene,
        radio_infra: RadioParams,
        radio_d2d: RadioParams,
        tick_s: float,
        n_ticks: int,
    ):
        self.scene = scene
        self.radio_infra = radio_infra
        self.radio_d2d = radio_d2d
        self.tick_s = tick_s
        self.n_ticks = n_ticks
        self.device_ids = scene.device_ids
        self.column = {device_id: i for i, device_id in enumerate(self.device_ids)}

        self._owners = box_owners(scene)
        ids = np.asarray(self.device_ids, dtype=np.int64)
        # Self-exclusion masks: (N, B) for uplinks, (N, N, B) for D2D pairs.
        self._infra_active = self._owners[None, :] != ids[:, None]
        self._d2d_active = (
            (self._owners[None, None, :] != ids[:, None, None])
            & (self._owners[None, None, :] != ids[None, :, None])
        )
        # Geometry and D2D rows of the most recently inspected tick.
        self._snapshot_tick = -1
        self._positions = np.empty((0, 3))
        self._boxes = np.empty((0, 5))
        self._rows: dict[int, LinkArrays] = {}
        self.infra = self._compute_infra()

    def times(self, start: int, stop: int) -> np.ndarray:
        return np.arange(start, stop, dtype=float) * self.tick_s

    def _compute_infra(self) -> LinkArrays:
        n_devices = len(self.device_ids)
        n_boxes = self._owners.size
        bs = self.scene.base_station.as_array()
        los = np.empty((self.n_ticks, n_devices), dtype=bool)
        distance = np.empty((self.n_ticks, n_devices), dtype=float)

        per_batch = max(1, _INFRA_TESTS_PER_BATCH // max(1, n_devices * n_boxes))
        for start in range(0, self.n_ticks, per_batch):
            stop = min(start + per_batch, self.n_ticks)
            times = self.times(start, stop)
            positions = device_positions(self.scene, times)
            boxes = placed_boxes_at(self.scene, times)[:, None]
            blocked = segments_blocked(boxes, positions, bs, self._infra_active)
            los[start:stop] = ~blocked
            distance[start:stop] = np.linalg.norm(positions - bs, axis=-1)

        logger.debug("infra_links_computed", ticks=self.n_ticks, devices=n_devices)
        return _evaluate(self.radio_infra, distance, los)

    def _snapshot(self, tick: int) -> tuple[np.ndarray, np.ndarray]:
        """Antenna positions (N, 3) and placed boxes (B, 5) at a tick."""
        if tick != self._snapshot_tick:
            times = self.times(tick, tick + 1)
            self._positions = device_positions(self.scene, times)[0]
            self._boxes = placed_boxes_at(self.scene, times)[0]
            self._snapshot_tick = tick
            self._rows = {}
        return self._positions, self._boxes

    def _d2d_links(self, tick: int, tx_id: int, rx_columns: np.ndarray) -> LinkArrays:
        positions, boxes = self._snapshot(tick)
        i = self.column[tx_id]
        a = positions[i]
        b = positions[rx_columns]
        blocked = segments_blocked(boxes, a, b, self._d2d_active[i, rx_columns])
        distance = np.linalg.norm(b - a, axis=-1)
        return _evaluate(self.radio_d2d, distance, ~blocked)

    def d2d_row(self, tick: int, tx_id: int) -> LinkArrays:
        """D2D links (N,) from one device to every device at a tick.

        The transmitter's own entry has zero distance and is never usable.
        Rows are cached for the current tick only; ticks are visited in order.
        """
        self._snapshot(tick)
        row = self._rows.get(tx_id)
        if row is None:
            row = self._d2d_links(tick, tx_id, np.arange(len(self.device_ids)))
            self._rows[tx_id] = row
        return row

    def infra_state(self, tick: int, device_id: int) -> LinkState:
        return _link_state(self.radio_infra, self.infra, (tick, self.column[device_id]))

    def d2d_state(self, tick: int, tx_id: int, rx_id: int) -> LinkState:
        """One D2D link at a tick, reusing the transmitter's row when it is cached."""
        self._snapshot(tick)
        row = self._rows.get(tx_id)
        if row is not None:
            return _link_state(self.radio_d2d, row, (self.column[rx_id],))
        pair = self._d2d_links(tick, tx_id, np.array([self.column[rx_id]]))
        return _link_state(self.radio_d2d, pair, (0,))

    def d2d_neighbors(self, tick: int, tx_id: int) -> list[tuple[int, LinkState]]:
        """Every device reachable from tx_id over a usable D2D link at a tick."""
        row = self.d2d_row(tick, tx_id)
        return [
            (device_id, _link_state(self.radio_d2d, row, (column,)))
            for column, device_id in enumerate(self.device_ids)
            if row.usable[column]
        ]

    def infra_trace(self, device_id: int) -> LosTrace:
        """Exact 0/1 LoS trace of a device's uplink at tick resolution."""
        samples = self.infra.los[:, self.column[device_id]].astype(float)
        return LosTrace(link_id=infra_link(device_id), dt=self.tick_s, samples=samples)
