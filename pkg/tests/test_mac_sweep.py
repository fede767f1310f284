import pytest

from indradio.mac import Scenario, sweep, sweep_rows_to_csv
from indradio.mac.sweep import parse_range


def test_parse_range_forms():
    assert parse_range("5..50:5") == list(range(5, 51, 5))
    assert parse_range("5..8") == [5, 6, 7, 8]
    assert parse_range("20") == [20]
    with pytest.raises(ValueError):
        parse_range("9..5")


def test_sweep_row_count_two_classes_per_point():
    base = Scenario(access="hcca", scheduler="ref", duration_s=0.5)
    csv = sweep_rows_to_csv(sweep(base, parse_range("5..50:5")))
    lines = csv.strip().split("\n")
    assert lines[0] == "n_ar,class,mean_ms,max_ms,miss_rate,samples"
    assert len(lines) == 1 + 10 * 2


def test_sweep_identical_seed_identical_bytes():
    base = Scenario(access="dcf", duration_s=0.5, seed=5)
    a = sweep_rows_to_csv(sweep(base, [2, 4]))
    b = sweep_rows_to_csv(sweep(base, [2, 4]))
    assert a == b


def test_dcf_max_delay_grows_with_station_count():
    # fixed seed; tolerate Monte-Carlo wiggle but require the broad trend
    base = Scenario(access="dcf", duration_s=2.0, seed=2)
    results = sweep(base, [5, 15, 30, 45])
    maxes = [res.stats("safety").max_delay_ms for _, res in results]
    assert maxes[-1] > maxes[0]
    running = 0.0
    for m in maxes:
        assert m >= 0.5 * running
        running = max(running, m)


def test_sweep_parallel_workers_match_serial():
    base = Scenario(access="hcca", scheduler="ref", duration_s=0.5)
    serial = sweep_rows_to_csv(sweep(base, [5, 10, 15]))
    parallel = sweep_rows_to_csv(sweep(base, [5, 10, 15], workers=3))
    assert serial == parallel
