"""Shared types for the channel-access models: PHY timing, traffic classes,
scenarios, and latency accounting.

All times are integer nanoseconds internally; the dataclass fields use the
unit named in their suffix.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from ..events import NS_PER_MS, NS_PER_US

# Fixed control-frame body sizes (bytes). Frame airtime adds the PHY
# preamble/header overhead on top of body bits at the data rate.
POLL_BYTES = 24
NULL_BYTES = 14
ACK_BYTES = 14
BEACON_BYTES = 100

SAFETY = "safety"
AR = "ar"


@dataclass(frozen=True)
class PhyParams:
    """5 GHz OFDM PHY defaults; every value can be overridden via config.

    The structural identities difs = sifs + 2*slot and pifs = sifs + slot
    are enforced. ``legacy_overhead_us`` is the long preamble/PLCP cost that
    applies to every frame of the legacy polling mode (PCF predates the QoS
    amendment, so its exchanges run with long-preamble protection); the
    contention and TXOP modes use ``per_frame_overhead_us``.
    """

    slot_us: float = 9.0
    sifs_us: float = 16.0
    difs_us: float = 34.0
    pifs_us: float = 25.0
    cw_min: int = 15
    cw_max: int = 1023
    retry_limit: int = 7
    data_rate_mbps: float = 65.0
    ack_us: float = 44.0
    beacon_interval_ms: float = 48.0
    per_frame_overhead_us: float = 50.0
    legacy_overhead_us: float = 192.0
    msdu_bytes: int = 1500

    def __post_init__(self):
        if abs(self.difs_us - (self.sifs_us + 2 * self.slot_us)) > 1e-9:
            raise ValueError("difs must equal sifs + 2*slot")
        if abs(self.pifs_us - (self.sifs_us + self.slot_us)) > 1e-9:
            raise ValueError("pifs must equal sifs + slot")

    # -- integer-ns timing helpers -------------------------------------
    @property
    def slot_ns(self) -> int:
        return round(self.slot_us * NS_PER_US)

    @property
    def sifs_ns(self) -> int:
        return round(self.sifs_us * NS_PER_US)

    @property
    def difs_ns(self) -> int:
        return round(self.difs_us * NS_PER_US)

    @property
    def pifs_ns(self) -> int:
        return round(self.pifs_us * NS_PER_US)

    @property
    def ack_ns(self) -> int:
        return round(self.ack_us * NS_PER_US)

    @property
    def beacon_interval_ns(self) -> int:
        return round(self.beacon_interval_ms * NS_PER_MS)

    def frame_ns(self, payload_bytes: int, legacy: bool = False) -> int:
        ovh = self.legacy_overhead_us if legacy else self.per_frame_overhead_us
        return round(ovh * NS_PER_US + payload_bytes * 8000.0 / self.data_rate_mbps)

    def data_exchange_ns(self, payload_bytes: int) -> int:
        """Data frame through end of its ACK (QoS-era framing)."""
        return self.frame_ns(payload_bytes) + self.sifs_ns + self.ack_ns

    def msdu_slot_ns(self, payload_bytes: int) -> int:
        """Fully padded exchange inside a TXOP: frame+SIFS+ACK+SIFS."""
        return self.data_exchange_ns(payload_bytes) + self.sifs_ns

    def poll_ns(self) -> int:
        """QoS poll frame plus the SIFS before the response."""
        return self.frame_ns(POLL_BYTES) + self.sifs_ns

    def null_resp_ns(self) -> int:
        """Null response plus the SIFS after it."""
        return self.frame_ns(NULL_BYTES) + self.sifs_ns

    def beacon_ns(self) -> int:
        return self.frame_ns(BEACON_BYTES)

    # legacy (long-preamble) variants used by the polled CFP mode
    def legacy_poll_ns(self) -> int:
        return self.frame_ns(POLL_BYTES, legacy=True) + self.sifs_ns

    def legacy_null_resp_ns(self) -> int:
        return self.frame_ns(NULL_BYTES, legacy=True) + self.sifs_ns

    def legacy_ack_ns(self) -> int:
        return self.frame_ns(ACK_BYTES, legacy=True)

    def legacy_data_exchange_ns(self, payload_bytes: int) -> int:
        return self.frame_ns(payload_bytes, legacy=True) + self.sifs_ns + self.legacy_ack_ns()

    def legacy_beacon_ns(self) -> int:
        return self.frame_ns(BEACON_BYTES, legacy=True)


@dataclass(frozen=True)
class TrafficClass:
    """Periodic burst source: one burst of payload_bytes per generation
    period, with a service deadline of msi_ms per burst.

    phase_ns shifts the whole generation grid; the cyclic (safety) class
    runs phase-aligned with the coordinator's service grid, which is how
    isochronous industrial traffic is deployed in practice.
    """

    kind: str
    generation_period_ms: float
    msi_ms: float
    payload_bytes: int
    phase_ns: int = 0

    def __post_init__(self):
        if self.msi_ms <= 0 or self.generation_period_ms <= 0:
            raise ValueError("msi and generation period must be positive")

    @property
    def period_ns(self) -> int:
        return round(self.generation_period_ms * NS_PER_MS)

    @property
    def msi_ns(self) -> int:
        return round(self.msi_ms * NS_PER_MS)


def safety_class(msi_ms: float = 8.0, payload_bytes: int = 64,
                 generation_period_ms: float = 8.0) -> TrafficClass:
    return TrafficClass(SAFETY, generation_period_ms, msi_ms, payload_bytes)


def ar_class(msi_ms: float = 50.0, payload_bytes: int = 4200,
             generation_period_ms: float = 50.0) -> TrafficClass:
    """High-rate bulk class, one burst per service interval.

    The default burst size is a calibration knob: 4200 B per 50 ms per
    station (three MSDUs) places the polled-mode saturation points where
    the channel-access studies need them at 65 Mbit/s. Raising it moves
    every capacity crossover proportionally earlier.
    """
    return TrafficClass(AR, generation_period_ms, msi_ms, payload_bytes)


@dataclass(frozen=True)
class Scenario:
    n_safety: int = 2
    n_ar: int = 10
    access: str = "hcca"            # dcf | pcf | hcca
    scheduler: str = "ref"          # ref | edf (hcca only)
    duration_s: float = 30.0
    seed: int = 1
    safety: TrafficClass = field(default_factory=safety_class)
    ar: TrafficClass = field(default_factory=ar_class)
    phy: PhyParams = field(default_factory=PhyParams)

    @property
    def duration_ns(self) -> int:
        return round(self.duration_s * 1e9)

    def with_(self, **kw) -> "Scenario":
        return replace(self, **kw)


@dataclass
class ClassStats:
    """Latency accounting for one traffic class.

    Delay is generation-to-ACK-received. A deadline miss is a burst
    delivered later than its MSI or dropped outright; bursts still queued
    when the run ends count in neither bucket (conservation covers them).
    """

    generated: int = 0
    delivered: int = 0
    dropped: int = 0
    miss_count: int = 0
    delay_sum_ns: int = 0
    max_delay_ns: int = 0

    def record_delivery(self, delay_ns: int, msi_ns: int) -> None:
        self.delivered += 1
        self.delay_sum_ns += delay_ns
        if delay_ns > self.max_delay_ns:
            self.max_delay_ns = delay_ns
        if delay_ns > msi_ns:
            self.miss_count += 1

    def record_drop(self) -> None:
        self.dropped += 1
        self.miss_count += 1

    @property
    def samples(self) -> int:
        return self.delivered

    @property
    def in_queue(self) -> int:
        return self.generated - self.delivered - self.dropped

    @property
    def mean_delay_ms(self) -> float:
        return (self.delay_sum_ns / self.delivered) / NS_PER_MS if self.delivered else 0.0

    @property
    def max_delay_ms(self) -> float:
        return self.max_delay_ns / NS_PER_MS

    @property
    def miss_rate(self) -> float:
        done = self.delivered + self.dropped
        return self.miss_count / done if done else 0.0


@dataclass
class RunResult:
    per_class: dict[str, ClassStats]
    collisions: int = 0
    admission_failed: bool = False

    def stats(self, kind: str) -> ClassStats:
        return self.per_class[kind]


def new_result() -> RunResult:
    return RunResult(per_class={SAFETY: ClassStats(), AR: ClassStats()})


@dataclass
class Burst:
    """One generated application burst, queued until the MAC serves it."""

    station: int
    kind: str
    gen_time: int
    payload_bytes: int


class PeriodicSource:
    """Lazy periodic burst generator: arrivals with gen_time <= t are pumped
    into the station queue on demand, keeping polled-mode runs event-light."""

    __slots__ = ("station", "traffic", "stats", "next_gen")

    def __init__(self, station: int, traffic: TrafficClass, stats: ClassStats):
        self.station = station
        self.traffic = traffic
        self.stats = stats
        self.next_gen = traffic.phase_ns

    def pump(self, t_ns: int, sink) -> None:
        """Deliver every arrival with gen_time <= t_ns to sink(burst)."""
        while self.next_gen <= t_ns:
            self.stats.generated += 1
            sink(Burst(self.station, self.traffic.kind, self.next_gen,
                       self.traffic.payload_bytes))
            self.next_gen += self.traffic.period_ns
