import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indradio.events import Engine, SchedulingError


def test_dequeue_in_time_order():
    eng = Engine()
    fired = []
    for t in (30, 10, 20):
        eng.schedule(t, "e", callback=lambda t=t: fired.append(t))
    eng.run_until(100)
    assert fired == [10, 20, 30]


def test_equal_times_fire_in_insertion_order():
    eng = Engine()
    fired = []
    eng.schedule(5, "a", callback=lambda: fired.append("a"))
    eng.schedule(5, "b", callback=lambda: fired.append("b"))
    eng.schedule(5, "c", callback=lambda: fired.append("c"))
    eng.run_until(5)
    assert fired == ["a", "b", "c"]


def test_schedule_at_now_fires_immediately():
    eng = Engine()
    eng.run_until(7)
    fired = []
    eng.schedule(7, "now", callback=lambda: fired.append(1))
    eng.run_until(7)
    assert fired == [1]


def test_schedule_in_past_rejected():
    eng = Engine()
    eng.run_until(10)
    with pytest.raises(SchedulingError):
        eng.schedule(9, "late")


def test_run_until_empty_queue_advances_clock():
    eng = Engine()
    n = eng.run_until(1_000_000_000)
    assert n == 0
    assert eng.now == 1_000_000_000


def test_run_until_processes_only_due_events():
    eng = Engine()
    fired = []
    for t_ms in (1, 2, 3):
        eng.schedule(t_ms * 1_000_000, "e", callback=lambda t=t_ms: fired.append(t))
    n = eng.run_until(2_000_000)
    assert n == 2 and fired == [1, 2]
    assert eng.now == 2_000_000


def test_cancelled_event_never_fires():
    eng = Engine()
    fired = []
    h = eng.schedule(5, "x", callback=lambda: fired.append("x"))
    eng.schedule(6, "y", callback=lambda: fired.append("y"))
    h.cancel()
    eng.run_until(10)
    assert fired == ["y"]


def test_trace_dump_format():
    buf = io.StringIO()
    eng = Engine(trace=buf)
    eng.schedule(100, "gen", "sta0")
    eng.schedule(100, "poll", "ap")
    eng.schedule(50, "beacon", "ap")
    eng.run_until(200)
    assert buf.getvalue() == ("50\t2\tbeacon\tap\n"
                              "100\t0\tgen\tsta0\n"
                              "100\t1\tpoll\tap\n")


@given(st.lists(st.integers(min_value=0, max_value=10_000), max_size=200))
def test_events_fire_sorted_with_stable_ties(times):
    eng = Engine()
    fired = []
    for i, t in enumerate(times):
        eng.schedule(t, "e", callback=lambda t=t, i=i: fired.append((t, i)))
    eng.run_until(10_001)
    assert fired == sorted(fired)
    assert len(fired) == len(times)


@given(st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=60),
       st.integers(min_value=0, max_value=1000))
def test_no_event_loss_up_to_horizon(times, horizon):
    eng = Engine()
    count = eng.run_until(horizon)  # empty pre-run
    assert count == 0
    eng2 = Engine()
    for t in times:
        eng2.schedule(t, "e")
    done = eng2.run_until(horizon)
    assert done == sum(1 for t in times if t <= horizon)
