"""Contention-based channel access (CSMA/CA with binary exponential backoff).

Every station with a queued burst senses a DIFS of idle air, then counts a
uniform backoff from [0, CW] in slot ticks. Counters freeze while the
channel is busy and resume after it goes idle again. Two counters expiring
on the same tick collide: both transmissions burn the air for the longest
frame involved, then each station doubles its CW and retries. The retry
limit drops the burst and books a deadline miss.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from ..events import Engine, EventHandle, Rng
from .core import Burst, PeriodicSource, PhyParams, RunResult, Scenario, new_result


class _Channel:
    __slots__ = ("idle_since", "busy", "tx_start", "tx_end", "participants")

    def __init__(self):
        self.idle_since = 0
        self.busy = False
        self.tx_start = -1
        self.tx_end = -1
        self.participants: list["_DcfStation"] = []


class _DcfStation:
    def __init__(self, sid: int, traffic, phy: PhyParams, sim: "_DcfSim"):
        self.sid = sid
        self.traffic = traffic
        self.phy = phy
        self.sim = sim
        self.queue: deque[Burst] = deque()
        self.cw = phy.cw_min
        self.retries = 0
        self.slots_left = 0
        self.contending = False
        self.t_mark = 0                       # idle reference for the current arming
        self.expiry: Optional[EventHandle] = None

    # -- queue / contention lifecycle -----------------------------------
    def enqueue(self, burst: Burst) -> None:
        self.queue.append(burst)
        if not self.contending:
            self.begin_contention()

    def begin_contention(self) -> None:
        self.contending = True
        self.cw = self.phy.cw_min
        self.retries = 0
        self.slots_left = int(self.sim.rng.integers(0, self.cw + 1))
        self.arm()

    def arm(self) -> None:
        """(Re)schedule the backoff expiry if the channel is idle."""
        ch = self.sim.channel
        if ch.busy:
            return
        now = self.sim.engine.now
        self.t_mark = max(now, ch.idle_since)
        t_fire = self.t_mark + self.phy.difs_ns + self.slots_left * self.phy.slot_ns
        self.expiry = self.sim.engine.schedule(t_fire, "backoff_expiry",
                                               f"sta{self.sid}", self.on_expiry)

    def freeze(self, t_busy: int) -> None:
        """Channel went busy at t_busy: cancel the pending expiry and keep
        the not-yet-elapsed slots."""
        if self.expiry is None:
            return
        if self.expiry.time > t_busy:
            self.expiry.cancel()
            elapsed = (t_busy - (self.t_mark + self.phy.difs_ns)) // self.phy.slot_ns
            if elapsed > 0:
                self.slots_left = max(0, self.slots_left - int(elapsed))
        self.expiry = None

    def on_expiry(self) -> None:
        self.expiry = None
        self.sim.transmit_attempt(self)

    # -- outcomes --------------------------------------------------------
    def on_success(self, ack_end: int) -> None:
        burst = self.queue.popleft()
        st = self.sim.result.per_class[burst.kind]
        st.record_delivery(ack_end - burst.gen_time, self.traffic.msi_ns)
        self.contending = False
        if self.queue:
            self.contending = True
            self.cw = self.phy.cw_min
            self.retries = 0
            self.slots_left = int(self.sim.rng.integers(0, self.cw + 1))
            # re-armed by the channel-idle notification that follows the ACK

    def on_collision(self) -> None:
        self.retries += 1
        if self.retries > self.phy.retry_limit:
            burst = self.queue.popleft()
            self.sim.result.per_class[burst.kind].record_drop()
            self.contending = False
            if self.queue:
                self.begin_contention_after_busy()
            return
        self.cw = min(2 * self.cw + 1, self.phy.cw_max)
        self.slots_left = int(self.sim.rng.integers(0, self.cw + 1))

    def begin_contention_after_busy(self) -> None:
        # like begin_contention() but without arming; the idle notification
        # that resolves the collision re-arms everyone
        self.contending = True
        self.cw = self.phy.cw_min
        self.retries = 0
        self.slots_left = int(self.sim.rng.integers(0, self.cw + 1))

    def frame_ns(self) -> int:
        return self.phy.frame_ns(self.queue[0].payload_bytes)


class _DcfSim:
    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.phy = scenario.phy
        self.engine = Engine()
        self.rng = Rng(scenario.seed).stream("dcf")
        self.channel = _Channel()
        self.result = new_result()
        self.stations: list[_DcfStation] = []
        self.sources: list[PeriodicSource] = []
        self._tx_end_handle: Optional[EventHandle] = None

        sid = 0
        for _ in range(scenario.n_safety):
            self._add_station(sid, scenario.safety)
            sid += 1
        for _ in range(scenario.n_ar):
            self._add_station(sid, scenario.ar)
            sid += 1

    def _add_station(self, sid: int, traffic) -> None:
        sta = _DcfStation(sid, traffic, self.phy, self)
        self.stations.append(sta)
        src = PeriodicSource(sid, traffic, self.result.per_class[traffic.kind])
        self.sources.append(src)

        def gen_event(sta=sta, src=src):
            src.pump(self.engine.now, sta.enqueue)
            nxt = src.next_gen
            if nxt <= self.scenario.duration_ns:
                self.engine.schedule(nxt, "gen", f"sta{sid}", gen_event)

        self.engine.schedule(traffic.phase_ns, "gen", f"sta{sid}", gen_event)

    # -- channel transitions ----------------------------------------------
    def transmit_attempt(self, sta: _DcfStation) -> None:
        now = self.engine.now
        ch = self.channel
        if ch.busy:
            if ch.tx_start == now:
                # simultaneous expiry: join the ongoing start => collision
                ch.participants.append(sta)
                new_end = max(ch.tx_end, now + sta.frame_ns())
                if new_end != ch.tx_end:
                    ch.tx_end = new_end
                    self._tx_end_handle.cancel()
                    self._tx_end_handle = self.engine.schedule(
                        new_end, "tx_end", "channel", self.on_tx_end)
            else:
                sta.arm()  # stale wakeup; should not happen, recover safely
            return
        ch.busy = True
        ch.tx_start = now
        ch.tx_end = now + sta.frame_ns()
        ch.participants = [sta]
        self._tx_end_handle = self.engine.schedule(ch.tx_end, "tx_end",
                                                   "channel", self.on_tx_end)
        for other in self.stations:
            if other is not sta and other.contending:
                other.freeze(now)

    def on_tx_end(self) -> None:
        ch = self.channel
        now = self.engine.now
        if len(ch.participants) == 1:
            sta = ch.participants[0]
            ack_end = now + self.phy.sifs_ns + self.phy.ack_ns
            self.engine.schedule(ack_end, "ack_end", f"sta{sta.sid}",
                                 lambda: self.on_ack_end(sta))
        else:
            self.result.collisions += 1
            for sta in ch.participants:
                sta.on_collision()
            self.channel_idle(now)

    def on_ack_end(self, sta: _DcfStation) -> None:
        sta.on_success(self.engine.now)
        self.channel_idle(self.engine.now)

    def channel_idle(self, t: int) -> None:
        ch = self.channel
        ch.busy = False
        ch.idle_since = t
        ch.participants = []
        for sta in self.stations:
            if sta.contending and sta.expiry is None:
                sta.arm()

    def run(self) -> RunResult:
        self.engine.run_until(self.scenario.duration_ns)
        return self.result


def run_dcf(scenario: Scenario) -> RunResult:
    if scenario.access != "dcf":
        raise ValueError("scenario.access must be 'dcf'")
    return _DcfSim(scenario).run()
