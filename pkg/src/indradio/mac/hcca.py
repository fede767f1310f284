"""Coordinated channel access with per-flow transmit opportunities and a
pluggable scheduler.

Reference scheduler: one global service interval (the largest submultiple
of the beacon interval that fits under the smallest MSI), a fixed polling
table walked from the top every SI, and demand-sized TXOPs. When a service
interval cannot hold the whole table, the tail rows are skipped until the
next interval -- polling instants stay fixed, which is precisely the
rigidity the deadline scheduler removes. An infeasible table (total TXOP
time above the SI) is reported as an admission failure but the run still
executes, because the overload regime is the object of study.

Deadline (EDF) scheduler: queued packets carry deadline = arrival + MSI,
and every grant goes to the backlogged flow whose head packet has the
earliest deadline (ties to the lower station id), sized to the flow's
per-MSI demand. Queue state is known to the coordinator (stations
piggyback it on QoS headers), so no air is burned polling empty stations.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from ..events import Engine, NS_PER_MS
from .core import (Burst, PeriodicSource, PhyParams, RunResult, Scenario,
                   TrafficClass, new_result)


@dataclass(frozen=True)
class FlowSpec:
    flow_id: int
    traffic: TrafficClass


@dataclass
class ScheduleTable:
    si_per_beacon: int
    beacon_interval_ns: int
    order: list[int]                      # flow ids, polled top-down each SI
    txop_ns: dict[int, int]
    grant_frames: dict[int, int]
    feasible: bool

    @property
    def si_ns(self) -> float:
        return self.beacon_interval_ns / self.si_per_beacon

    @property
    def si_ms(self) -> float:
        return self.si_ns / NS_PER_MS

    def si_start(self, index: int) -> int:
        b, r = divmod(index, self.si_per_beacon)
        return b * self.beacon_interval_ns + round(r * self.beacon_interval_ns
                                                   / self.si_per_beacon)


def nominal_frame_bytes(traffic: TrafficClass, phy: PhyParams) -> int:
    return min(traffic.payload_bytes, phy.msdu_bytes)


def demand_frames(traffic: TrafficClass, phy: PhyParams, interval_ns: float) -> int:
    """Frames owed per service of length interval_ns: ceil(interval*rate/L),
    never below one maximum-size frame."""
    L = nominal_frame_bytes(traffic, phy)
    bytes_per_interval = traffic.payload_bytes * interval_ns / traffic.period_ns
    return max(1, math.ceil(bytes_per_interval / L))


def reference_scheduler(flows: list[FlowSpec], phy: PhyParams,
                        beacon_interval_ns: int | None = None) -> ScheduleTable:
    """Build the fixed polling table.

    SI = largest submultiple of the beacon interval <= min MSI; every flow
    gets TXOP = demand over one SI. Recomputed only when registrations
    change.
    """
    if beacon_interval_ns is None:
        beacon_interval_ns = phy.beacon_interval_ns
    if not flows:
        return ScheduleTable(1, beacon_interval_ns, [], {}, {}, True)
    min_msi = min(f.traffic.msi_ns for f in flows)
    k = max(1, math.ceil(beacon_interval_ns / min_msi))
    si_ns = beacon_interval_ns / k

    order = [f.flow_id for f in sorted(flows, key=lambda f: (f.traffic.msi_ns,
                                                             f.flow_id))]
    txop: dict[int, int] = {}
    grant: dict[int, int] = {}
    for f in flows:
        n = demand_frames(f.traffic, phy, si_ns)
        L = nominal_frame_bytes(f.traffic, phy)
        grant[f.flow_id] = n
        txop[f.flow_id] = n * phy.msdu_slot_ns(L)

    load = phy.beacon_ns() + phy.pifs_ns + sum(phy.poll_ns() + txop[f.flow_id]
                                               for f in flows)
    feasible = load <= si_ns
    return ScheduleTable(k, beacon_interval_ns, order, txop, grant, feasible)


def edf_next_grant(pending: list[tuple[int, int]]) -> int:
    """Pick the next flow to grant: minimum deadline, ties by ascending id.

    pending: (deadline_ns, flow_id) for every flow with queued traffic.
    """
    if not pending:
        raise ValueError("no pending flows")
    return min(pending, key=lambda p: (p[0], p[1]))[1]


class _Flow:
    __slots__ = ("fid", "traffic", "queue", "source", "_msdu")

    def __init__(self, fid: int, traffic: TrafficClass, stats, phy: PhyParams):
        self.fid = fid
        self.traffic = traffic
        self.queue: deque[tuple[int, Burst, bool]] = deque()  # (bytes, burst, last)
        self.source = PeriodicSource(fid, traffic, stats)
        self._msdu = phy.msdu_bytes

    def _fragment(self, burst: Burst) -> None:
        remaining = burst.payload_bytes
        while remaining > 0:
            chunk = min(remaining, self._msdu)
            remaining -= chunk
            self.queue.append((chunk, burst, remaining == 0))

    def pump(self, t: int) -> None:
        self.source.pump(t, self._fragment)

    def head_deadline(self) -> int:
        return self.queue[0][1].gen_time + self.traffic.msi_ns


def _build_flows(scenario: Scenario, result: RunResult) -> list[_Flow]:
    flows = []
    fid = 0
    for _ in range(scenario.n_safety):
        flows.append(_Flow(fid, scenario.safety,
                           result.per_class[scenario.safety.kind], scenario.phy))
        fid += 1
    for _ in range(scenario.n_ar):
        flows.append(_Flow(fid, scenario.ar,
                           result.per_class[scenario.ar.kind], scenario.phy))
        fid += 1
    return flows


def _run_reference(scenario: Scenario) -> RunResult:
    phy = scenario.phy
    result = new_result()
    flows = _build_flows(scenario, result)
    table = reference_scheduler([FlowSpec(f.fid, f.traffic) for f in flows], phy)
    result.admission_failed = not table.feasible
    by_id = {f.fid: f for f in flows}
    engine = Engine()
    duration = scenario.duration_ns
    poll = phy.poll_ns()
    null = phy.null_resp_ns()
    sifs = phy.sifs_ns

    def service_interval(index: int) -> None:
        t = table.si_start(index)
        si_end = table.si_start(index + 1)
        if index % table.si_per_beacon == 0:
            t += phy.beacon_ns()
        t += phy.pifs_ns
        for fid in table.order:
            flow = by_id[fid]
            flow.pump(t)
            if t + poll + null > si_end:
                break                      # fixed table: tail waits a full SI
            t += poll
            if flow.queue:
                used = 0
                budget = table.txop_ns[fid]
                while flow.queue:
                    nbytes, burst, last = flow.queue[0]
                    slot = phy.msdu_slot_ns(nbytes)
                    if used + slot > budget or t + slot > si_end:
                        break
                    flow.queue.popleft()
                    t += phy.data_exchange_ns(nbytes)
                    if last:
                        result.per_class[burst.kind].record_delivery(
                            t - burst.gen_time, flow.traffic.msi_ns)
                    t += sifs
                    used += slot
                if used == 0:
                    t += null                # nothing fit; poll wasted
            else:
                t += null
        if si_end < duration:
            engine.schedule(si_end, "si", "ap",
                            lambda i=index + 1: service_interval(i))

    engine.schedule(0, "si", "ap", lambda: service_interval(0))
    engine.run_until(duration)
    for f in flows:
        f.pump(duration)
    return result


def _run_edf(scenario: Scenario) -> RunResult:
    phy = scenario.phy
    result = new_result()
    flows = _build_flows(scenario, result)
    engine = Engine()
    duration = scenario.duration_ns
    poll = phy.poll_ns()
    sifs = phy.sifs_ns
    grant_frames = {f.fid: demand_frames(f.traffic, phy, f.traffic.msi_ns)
                    for f in flows}

    load = (phy.beacon_ns() + phy.pifs_ns) / phy.beacon_interval_ns
    for f in flows:
        L = nominal_frame_bytes(f.traffic, phy)
        load += (poll + grant_frames[f.fid] * phy.msdu_slot_ns(L)) / f.traffic.msi_ns
    result.admission_failed = load > 1.0

    state = {"busy_until": 0, "next_beacon": 0}

    def wake() -> None:
        now = engine.now
        if now < state["busy_until"]:
            return
        if state["next_beacon"] <= now:
            end = now + phy.beacon_ns() + phy.pifs_ns
            state["busy_until"] = end
            state["next_beacon"] += phy.beacon_interval_ns
            if end <= duration:
                engine.schedule(end, "wake", "ap", wake)
            return
        for f in flows:
            f.pump(now)
        pending = [(f.head_deadline(), f.fid) for f in flows if f.queue]
        if not pending:
            nxt = min([f.source.next_gen for f in flows] + [state["next_beacon"]],
                      default=state["next_beacon"])
            if nxt <= duration and nxt > now:
                engine.schedule(nxt, "wake", "ap", wake)
            return
        fid = edf_next_grant(pending)
        flow = next(f for f in flows if f.fid == fid)
        t = now + poll
        served = 0
        while flow.queue and served < grant_frames[fid]:
            nbytes, burst, last = flow.queue.popleft()
            t += phy.data_exchange_ns(nbytes)
            if last:
                result.per_class[burst.kind].record_delivery(
                    t - burst.gen_time, flow.traffic.msi_ns)
            t += sifs
            served += 1
        state["busy_until"] = t
        if t <= duration:
            engine.schedule(t, "wake", "ap", wake)

    engine.schedule(0, "wake", "ap", wake)
    engine.run_until(duration)
    for f in flows:
        f.pump(duration)
    return result


def run_hcca(scenario: Scenario) -> RunResult:
    if scenario.access != "hcca":
        raise ValueError("scenario.access must be 'hcca'")
    if scenario.scheduler == "ref":
        return _run_reference(scenario)
    if scenario.scheduler == "edf":
        return _run_edf(scenario)
    raise ValueError(f"unknown scheduler {scenario.scheduler!r}")
