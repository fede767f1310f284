"""Two-way ranging: timing exchange simulation and time-of-flight math.

TWR needs no clock synchronization between the nodes: the responder's
reply time cancels out of the round-trip measurement, so
tof = (t_round - t_reply) / 2 regardless of the processing delay.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


class InvalidExchangeError(ValueError):
    """Round-trip shorter than the reply time: a clock anomaly, never
    clamped to zero range."""


@dataclass(frozen=True)
class Anchor:
    anchor_id: int
    position: tuple[float, float, float]

    @property
    def xyz(self) -> np.ndarray:
        return np.asarray(self.position, dtype=float)


@dataclass(frozen=True)
class RangingExchange:
    t_round_s: float      # measured by the initiator
    t_reply_s: float      # measured by the responder
    anchor_id: int


@dataclass(frozen=True)
class RangingNoise:
    sigma_d_m: float = 0.0   # per-distance Gaussian std, meters
    bias_m: float = 0.0

    def __post_init__(self):
        if self.sigma_d_m < 0:
            raise ValueError("sigma_d must be nonnegative")


def tof_from_twr(exchange: RangingExchange) -> float:
    """Distance in meters from one two-way exchange."""
    if exchange.t_round_s < exchange.t_reply_s:
        raise InvalidExchangeError(
            f"t_round {exchange.t_round_s} < t_reply {exchange.t_reply_s}")
    return SPEED_OF_LIGHT * (exchange.t_round_s - exchange.t_reply_s) / 2.0


def simulate_exchange(true_ms_pos, anchor: Anchor, noise: RangingNoise,
                      processing_delay_s: float,
                      rng: np.random.Generator) -> RangingExchange:
    """One simulated exchange: the reply leaves after the responder's
    processing delay; ranging error enters as an equivalent path-length
    perturbation on top of the true geometric distance.

    The perturbed distance is floored at zero: a first-path estimator
    never reports a negative range, so generated exchanges are always
    physically valid (tof_from_twr still rejects anomalous ones built by
    hand)."""
    if processing_delay_s < 0:
        raise ValueError("processing delay must be nonnegative")
    dist = float(np.linalg.norm(np.asarray(true_ms_pos, float) - anchor.xyz))
    err = noise.bias_m
    if noise.sigma_d_m > 0:
        err += noise.sigma_d_m * rng.normal()
    measured = max(0.0, dist + err)
    t_round = processing_delay_s + 2.0 * measured / SPEED_OF_LIGHT
    return RangingExchange(t_round_s=t_round, t_reply_s=processing_delay_s,
                           anchor_id=anchor.anchor_id)
