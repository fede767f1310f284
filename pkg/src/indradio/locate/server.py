"""Server-orchestrated localization round.

The server commands one two-way exchange per anchor, strictly one at a
time (ranging shares a TDD medium with data, so exchanges never overlap in
simulated time), collects the estimated distances, and runs the
trilateration solver. Fewer than four successful exchanges abort the fix;
there is no 2-D fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from ..events import Engine
from .trilateration import PositionEstimate, trilaterate
from .twr import Anchor, RangingNoise, simulate_exchange, tof_from_twr


class InsufficientRangingError(RuntimeError):
    """Fewer than four anchors answered; no position fix is attempted."""


@dataclass
class LocalizationServer:
    """Issues TWR commands over a shared virtual medium and keeps the
    resulting fixes keyed by (ms_id, completion time)."""

    anchors: list[Anchor]
    processing_delay_s: float = 200e-6
    turnaround_gap_s: float = 100e-6
    timeout_s: float = 2e-3
    engine: Engine = field(default_factory=Engine)
    fixes: dict = field(default_factory=dict)

    def __post_init__(self):
        ids = [a.anchor_id for a in self.anchors]
        if len(ids) != len(set(ids)):
            raise ValueError("anchor ids must be unique")
        self._down: set[int] = set()

    def set_anchor_down(self, anchor_id: int, down: bool = True) -> None:
        if down:
            self._down.add(anchor_id)
        else:
            self._down.discard(anchor_id)

    def locate(self, ms_id: int, true_position, noise: RangingNoise,
               rng: np.random.Generator) -> PositionEstimate:
        """Run one full localization round in simulated time."""
        if len(self.anchors) < 4:
            raise InsufficientRangingError("fewer than 4 registered anchors")
        eng = self.engine
        distances: list[tuple[Anchor, float]] = []

        for anchor in self.anchors:
            if anchor.anchor_id in self._down:
                # command goes out, nothing comes back until the timeout
                eng.schedule_in(round(self.timeout_s * 1e9), "twr_timeout",
                                f"anchor{anchor.anchor_id}")
                eng.run_until(eng.now + round(self.timeout_s * 1e9))
            else:
                ex = simulate_exchange(true_position, anchor, noise,
                                       self.processing_delay_s, rng)
                duration_ns = round(ex.t_round_s * 1e9)
                eng.schedule_in(duration_ns, "twr_done",
                                f"anchor{anchor.anchor_id}")
                eng.run_until(eng.now + duration_ns)
                distances.append((anchor, tof_from_twr(ex)))
            eng.run_until(eng.now + round(self.turnaround_gap_s * 1e9))

        if len(distances) < 4:
            raise InsufficientRangingError(
                f"only {len(distances)} anchors answered")
        estimate = trilaterate(distances)
        self.fixes[(ms_id, eng.now)] = estimate
        return estimate


# Documented acceptance geometry: a 10 x 10 x 3 m hall with three floor
# anchors spread wide and one ceiling anchor above the center, giving the
# most isotropic dilution of precision a four-anchor thin room allows.
DEFAULT_ROOM_ANCHORS = [
    Anchor(0, (0.0, 0.0, 0.0)),
    Anchor(1, (10.0, 0.0, 0.0)),
    Anchor(2, (5.0, 10.0, 0.0)),
    Anchor(3, (5.0, 5.0, 3.0)),
]

# Mobile devices are carried by people, away from the walls.
DEFAULT_MS_REGION = ((1.0, 9.0), (1.0, 9.0), (0.5, 2.5))


def sample_ms_position(rng: np.random.Generator,
                       region=DEFAULT_MS_REGION) -> np.ndarray:
    lo = [r[0] for r in region]
    hi = [r[1] for r in region]
    return rng.uniform(lo, hi)
