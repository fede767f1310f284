"""Deterministic discrete-event engine.

Virtual time is integer nanoseconds. Events with equal timestamps fire in
insertion order (a monotone sequence counter breaks ties), so a fixed
(scenario, seed) pair always replays the same trace, on any platform.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Optional, TextIO

import numpy as np

NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_S = 1_000_000_000


class SchedulingError(ValueError):
    """Raised when an event is scheduled before the current virtual time."""


@dataclass(order=True)
class Event:
    time: int
    seq: int
    kind: str = field(compare=False)
    target: str = field(compare=False)
    callback: Optional[Callable[[], None]] = field(compare=False, default=None, repr=False)
    cancelled: bool = field(compare=False, default=False, repr=False)


class EventHandle:
    """Returned by schedule(); permits cancellation before the event fires."""

    __slots__ = ("_event",)

    def __init__(self, event: Event):
        self._event = event

    def cancel(self) -> None:
        self._event.cancelled = True

    @property
    def cancelled(self) -> bool:
        return self._event.cancelled

    @property
    def time(self) -> int:
        return self._event.time


class Engine:
    """Event queue plus virtual clock.

    The clock only moves forward, and only when an event is dequeued or a
    run_until() horizon is reached.
    """

    def __init__(self, trace: Optional[TextIO] = None):
        self.now: int = 0
        self._heap: list[Event] = []
        self._seq = 0
        self._trace = trace

    def schedule(self, time_ns: int, kind: str, target: str = "",
                 callback: Optional[Callable[[], None]] = None) -> EventHandle:
        if time_ns < self.now:
            raise SchedulingError(
                f"cannot schedule {kind!r} at t={time_ns} ns; clock is at {self.now} ns")
        ev = Event(int(time_ns), self._seq, kind, target, callback)
        self._seq += 1
        heapq.heappush(self._heap, ev)
        return EventHandle(ev)

    def schedule_in(self, delay_ns: int, kind: str, target: str = "",
                    callback: Optional[Callable[[], None]] = None) -> EventHandle:
        return self.schedule(self.now + delay_ns, kind, target, callback)

    def run_until(self, t_end_ns: int) -> int:
        """Process every uncancelled event with time <= t_end_ns, in order.

        Returns the number of events processed. The clock lands exactly on
        t_end_ns afterwards, even if the queue drained earlier.
        """
        if t_end_ns < self.now:
            raise SchedulingError(
                f"run_until({t_end_ns}) is before current time {self.now}")
        processed = 0
        while self._heap and self._heap[0].time <= t_end_ns:
            ev = heapq.heappop(self._heap)
            if ev.cancelled:
                continue
            self.now = ev.time
            if self._trace is not None:
                self._trace.write(f"{ev.time}\t{ev.seq}\t{ev.kind}\t{ev.target}\n")
            processed += 1
            if ev.callback is not None:
                ev.callback()
        self.now = t_end_ns
        return processed

    def pending(self) -> int:
        return sum(1 for ev in self._heap if not ev.cancelled)


class Rng:
    """Named, seed-derived random streams (PCG64 under the hood).

    Streams are derived from (seed, label) through SeedSequence, so draws in
    one stream never perturb another and the whole set is reproducible from
    the single 64-bit seed.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._streams: dict[str, np.random.Generator] = {}

    def stream(self, label: str) -> np.random.Generator:
        gen = self._streams.get(label)
        if gen is None:
            key = [ord(c) for c in label]
            ss = np.random.SeedSequence(entropy=self.seed, spawn_key=tuple(key))
            gen = np.random.Generator(np.random.PCG64(ss))
            self._streams[label] = gen
        return gen
