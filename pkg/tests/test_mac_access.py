"""Behavioral tests for the three channel-access models."""

import pytest

from indradio.mac import Scenario, run_dcf, run_hcca, run_pcf, run_scenario
from indradio.mac.core import AR, SAFETY, safety_class


def conservation_ok(result):
    for st in result.per_class.values():
        if st.generated != st.delivered + st.dropped + st.in_queue:
            return False
        if st.in_queue < 0:
            return False
    return True


# ---------------------------------------------------------------- DCF

def test_dcf_single_station_matches_closed_form_oracle():
    sc = Scenario(access="dcf", n_safety=1, n_ar=0, duration_s=85.0, seed=3)
    res = run_dcf(sc)
    st = res.stats(SAFETY)
    assert st.samples >= 10_000
    phy = sc.phy
    t_tx_ms = (phy.frame_ns(64) + phy.sifs_ns + phy.ack_ns) / 1e6
    oracle_ms = (phy.difs_ns + (phy.cw_min / 2) * phy.slot_ns) / 1e6 + t_tx_ms
    assert st.mean_delay_ms == pytest.approx(oracle_ms, rel=0.01)


def test_dcf_no_stations_empty_stats():
    res = run_dcf(Scenario(access="dcf", n_safety=0, n_ar=0, duration_s=1.0))
    assert res.stats(SAFETY).samples == 0
    assert res.stats(AR).samples == 0


def test_dcf_many_ar_stations_blow_safety_deadline():
    res = run_dcf(Scenario(access="dcf", n_ar=50, duration_s=3.0, seed=1))
    assert res.stats(SAFETY).max_delay_ms > 8.0
    assert conservation_ok(res)


def test_dcf_seed_determinism():
    a = run_dcf(Scenario(access="dcf", n_ar=8, duration_s=2.0, seed=11))
    b = run_dcf(Scenario(access="dcf", n_ar=8, duration_s=2.0, seed=11))
    assert a.stats(SAFETY).delay_sum_ns == b.stats(SAFETY).delay_sum_ns
    assert a.stats(AR).max_delay_ns == b.stats(AR).max_delay_ns
    assert a.collisions == b.collisions


def test_dcf_wrong_access_rejected():
    with pytest.raises(ValueError):
        run_dcf(Scenario(access="pcf"))


# ---------------------------------------------------------------- PCF

def test_pcf_two_safety_stations_served_within_superframe():
    res = run_pcf(Scenario(access="pcf", n_ar=0, duration_s=10.0))
    st = res.stats(SAFETY)
    assert st.miss_count == 0
    # one superframe plus the service time of one polling round
    assert st.max_delay_ms <= 8.0 + 2.0
    assert conservation_ok(res)


def test_pcf_no_stations_beacons_only():
    res = run_pcf(Scenario(access="pcf", n_safety=0, n_ar=0, duration_s=1.0))
    assert res.stats(SAFETY).samples == 0
    assert res.stats(AR).samples == 0


def test_pcf_ten_ar_stations_mean_under_max_over_deadline():
    res = run_pcf(Scenario(access="pcf", n_ar=10, duration_s=10.0, seed=1))
    st = res.stats(SAFETY)
    assert st.mean_delay_ms < 8.0
    assert st.max_delay_ms > 8.0
    assert conservation_ok(res)


def test_pcf_never_collides_by_construction():
    res = run_pcf(Scenario(access="pcf", n_ar=12, duration_s=5.0))
    assert res.collisions == 0


# ---------------------------------------------------------------- HCCA

def test_hcca_reference_safety_guarantee_at_30_ar():
    res = run_hcca(Scenario(access="hcca", scheduler="ref", n_ar=30, duration_s=10.0))
    st = res.stats(SAFETY)
    assert st.max_delay_ms <= 8.0
    assert st.miss_count == 0
    assert conservation_ok(res)


def test_hcca_reference_ar_overload_at_35():
    res = run_hcca(Scenario(access="hcca", scheduler="ref", n_ar=35, duration_s=10.0))
    assert res.stats(AR).max_delay_ms > 50.0
    assert res.admission_failed


def test_hcca_no_ar_both_safety_served_every_si():
    res = run_hcca(Scenario(access="hcca", scheduler="ref", n_ar=0, duration_s=10.0))
    st = res.stats(SAFETY)
    assert st.samples > 0
    assert st.max_delay_ms <= 8.0
    assert not res.admission_failed


def test_hcca_edf_meets_safety_deadlines_with_45_ar():
    sc = Scenario(access="hcca", scheduler="edf", n_ar=45, duration_s=10.0,
                  safety=safety_class(msi_ms=24.0))
    res = run_hcca(sc)
    assert res.stats(SAFETY).miss_count == 0
    assert res.stats(AR).miss_count == 0
    assert conservation_ok(res)


def test_hcca_collision_free():
    res = run_hcca(Scenario(access="hcca", scheduler="ref", n_ar=20, duration_s=2.0))
    assert res.collisions == 0


def test_hcca_unknown_scheduler_rejected():
    with pytest.raises(ValueError):
        run_hcca(Scenario(access="hcca", scheduler="wfq"))


def test_run_scenario_dispatches_all_access_methods():
    for access in ("dcf", "pcf", "hcca"):
        res = run_scenario(Scenario(access=access, n_ar=2, duration_s=0.5))
        assert res.stats(SAFETY).generated > 0
