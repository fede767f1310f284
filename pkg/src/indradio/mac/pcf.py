"""Point-coordinated channel access: beaconed superframes with class-blind
round-robin polling.

The superframe adapts to the lowest MSI among registered stations. Each
superframe the coordinator beacons, then polls stations one at a time from
a cyclic pointer; a polled station answers with one whole queued burst (or
a null frame). The coordinator cannot know the response length in advance,
so it initiates a poll whenever at least a null exchange still fits -- a
long burst then overruns the boundary and delays the next beacon. Stations
not reached before the boundary carry over to the next round, which is the
overload regime of interest.

Exchanges run with long-preamble (legacy) framing: this polling mode
predates the QoS amendment and its certified implementations interoperate
at protected rates.
"""

from __future__ import annotations

from collections import deque

from ..events import Engine
from .core import Burst, PeriodicSource, RunResult, Scenario, new_result


class _PolledStation:
    __slots__ = ("sid", "traffic", "queue", "source")

    def __init__(self, sid, traffic, stats):
        self.sid = sid
        self.traffic = traffic
        self.queue: deque[Burst] = deque()
        self.source = PeriodicSource(sid, traffic, stats)

    def pump(self, t: int) -> None:
        self.source.pump(t, self.queue.append)


def run_pcf(scenario: Scenario) -> RunResult:
    if scenario.access != "pcf":
        raise ValueError("scenario.access must be 'pcf'")
    phy = scenario.phy
    result = new_result()
    engine = Engine()

    stations: list[_PolledStation] = []
    sid = 0
    for _ in range(scenario.n_safety):
        stations.append(_PolledStation(sid, scenario.safety,
                                       result.per_class[scenario.safety.kind]))
        sid += 1
    for _ in range(scenario.n_ar):
        stations.append(_PolledStation(sid, scenario.ar,
                                       result.per_class[scenario.ar.kind]))
        sid += 1

    n = len(stations)
    if n:
        superframe_ns = min(st.traffic.msi_ns for st in stations)
    else:
        superframe_ns = phy.beacon_interval_ns

    poll_ns = phy.legacy_poll_ns()
    null_ns = phy.legacy_null_resp_ns()
    beacon_ns = phy.legacy_beacon_ns()
    sifs = phy.sifs_ns
    state = {"free_at": 0, "pointer": 0}
    duration = scenario.duration_ns

    def poll_one(st: _PolledStation, t: int) -> tuple[int, bool]:
        """Poll st at time t; returns (new t, station reported more data)."""
        st.pump(t)
        t += poll_ns
        if st.queue:
            burst = st.queue.popleft()
            t += phy.legacy_data_exchange_ns(burst.payload_bytes)
            result.per_class[burst.kind].record_delivery(
                t - burst.gen_time, st.traffic.msi_ns)
            t += sifs
            return t, bool(st.queue)
        return t + null_ns, False

    def superframe(k: int) -> None:
        t_grid = k * superframe_ns
        t = max(t_grid, state["free_at"])
        t += beacon_ns + phy.pifs_ns
        sf_end = t_grid + superframe_ns
        polled = 0
        ptr = state["pointer"]
        more: list[_PolledStation] = []
        while n and polled < n and t + poll_ns + null_ns <= sf_end:
            st = stations[ptr]
            t, more_data = poll_one(st, t)
            if more_data:
                more.append(st)
            ptr = (ptr + 1) % n
            polled += 1
        # Stations that set the more-data flag may be polled again while CFP
        # time remains (only reachable when the primary round completed).
        while polled >= n and more and t + poll_ns + null_ns <= sf_end:
            st = more.pop(0)
            t, more_data = poll_one(st, t)
            if more_data:
                more.append(st)
        state["pointer"] = ptr
        state["free_at"] = t
        if sf_end < duration:
            engine.schedule(sf_end, "superframe", "ap", lambda k=k + 1: superframe(k))

    engine.schedule(0, "superframe", "ap", lambda: superframe(0))
    engine.run_until(duration)
    for st in stations:           # account bursts generated but never polled
        st.pump(duration)
    return result
