"""Acceptance suite: one test per shipped claim, each printing a verdict
line (run with -s to see them inline). Tolerances are fixed here, not
calibrated at run time.

The channel-access points use the calibrated default traffic model
(4200-byte bulk bursts per 50 ms); sweep durations are 30 s of simulated
time where the claim pins them and 10 s elsewhere (the polled-mode engines
are deterministic, so the shorter horizon reproduces the same steady-state
figures).
"""

import math
import time

import numpy as np

from indradio.gfdm import (SHIPPED_CONFIGS, GfdmConfig, bits_to_symbols,
                           build_frame, gfdm_demodulate, gfdm_modulate,
                           map_resources, ber_run, schmidl_cox_sync)
from indradio.gfdm.channel import ChannelModel, awgn, noise_sigma_for_ebn0
from indradio.locate import (DEFAULT_ROOM_ANCHORS, Anchor, LocalizationServer,
                             RangingNoise, sample_ms_position, trilaterate)
from indradio.mac import Scenario, run_scenario, sweep, sweep_rows_to_csv
from indradio.mac.core import AR, SAFETY, safety_class
from indradio.nlos import (ForestParams, SUBSETS, SyntheticCirParams,
                           evaluate_subsets, extract_features, generate_dataset)


def report(num: int, detail: str) -> None:
    print(f"[criterion {num:02d}] PASS — {detail}")


def qfunc(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))


# ------------------------------------------------------------------ MAC

def hcca(n_ar, duration_s=10.0, scheduler="ref", safety_msi=8.0, seed=1):
    return run_scenario(Scenario(access="hcca", scheduler=scheduler, n_ar=n_ar,
                                 duration_s=duration_s, seed=seed,
                                 safety=safety_class(msi_ms=safety_msi)))


def test_criterion_01_hcca_safety_guarantee():
    t0 = time.monotonic()
    worst = 0.0
    for n_ar in range(5, 51, 5):
        res = hcca(n_ar, duration_s=30.0)
        st = res.stats(SAFETY)
        assert st.max_delay_ms <= 8.0, f"safety max {st.max_delay_ms} at n={n_ar}"
        assert st.miss_count == 0, f"{st.miss_count} safety misses at n={n_ar}"
        worst = max(worst, st.max_delay_ms)
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0, f"sweep took {elapsed:.1f}s"
    report(1, f"HCCA safety max {worst:.3f} ms <= 8 ms, zero misses over "
              f"n_ar 5..50 ({elapsed:.1f}s < 120s)")


def test_criterion_02_access_method_ordering_at_20_ar():
    dcf = run_scenario(Scenario(access="dcf", n_ar=20, duration_s=10.0, seed=1))
    pcf = run_scenario(Scenario(access="pcf", n_ar=20, duration_s=10.0, seed=1))
    hc = hcca(20, duration_s=10.0)
    d, p, h = (r.stats(SAFETY).max_delay_ms for r in (dcf, pcf, hc))
    assert d > 8.0, f"DCF safety max {d}"
    assert p > 8.0, f"PCF safety max {p}"
    assert h <= 8.0, f"HCCA safety max {h}"
    report(2, f"safety max at n_ar=20: DCF {d:.1f} ms > 8, PCF {p:.1f} ms > 8, "
              f"HCCA {h:.3f} ms <= 8")


def test_criterion_03_hcca_ar_capacity_crossover():
    crossover = None
    for n_ar in range(20, 41):
        res = hcca(n_ar)
        if res.stats(AR).max_delay_ms > 50.0:
            crossover = n_ar
            break
    assert crossover is not None, "no crossover up to 40 stations"
    assert 25 <= crossover <= 40, f"crossover at {crossover}"
    report(3, f"HCCA-reference AR max delay first exceeds 50 ms at "
              f"n_ar={crossover} (window [25, 40], model target 30)")


def test_criterion_04_pcf_crossovers():
    max_cross = mean_cross = None
    for n_ar in range(2, 17):
        res = run_scenario(Scenario(access="pcf", n_ar=n_ar, duration_s=10.0,
                                    seed=1))
        st = res.stats(SAFETY)
        if max_cross is None and st.max_delay_ms > 8.0:
            max_cross = n_ar
        if mean_cross is None and st.mean_delay_ms > 8.0:
            mean_cross = n_ar
    assert max_cross is not None and 4 <= max_cross <= 10, max_cross
    assert mean_cross is not None and 8 <= mean_cross <= 16, mean_cross
    report(4, f"PCF safety max first exceeds MSI at n_ar={max_cross} "
              f"(window [4, 10]); mean at n_ar={mean_cross} (window [8, 16])")


def test_criterion_05_edf_vs_reference_scheduler():
    edf45 = hcca(45, scheduler="edf", safety_msi=24.0)
    assert edf45.stats(AR).miss_count == 0
    assert edf45.stats(SAFETY).miss_count == 0
    ref_fail = None
    for n_ar in range(25, 46):
        res = hcca(n_ar, scheduler="ref", safety_msi=24.0)
        if res.stats(AR).miss_count > 0:
            ref_fail = n_ar
            break
    assert ref_fail is not None and ref_fail < 45, ref_fail

    ns = np.arange(5, 46, 5, dtype=float)
    ys = np.array([hcca(int(n), scheduler="edf", safety_msi=24.0)
                   .stats(AR).max_delay_ms for n in ns])
    a = np.vstack([ns, np.ones_like(ns)]).T
    coef, residual, *_ = np.linalg.lstsq(a, ys, rcond=None)
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r2 = 1.0 - (float(residual[0]) if residual.size else 0.0) / ss_tot
    assert r2 >= 0.9, f"R^2 = {r2:.4f}"
    report(5, f"EDF meets every deadline at 45 AR stations; reference first "
              f"fails at {ref_fail}; EDF max-delay linear fit R^2 = {r2:.4f}")


def test_criterion_06_dcf_single_station_oracle():
    sc = Scenario(access="dcf", n_safety=1, n_ar=0, duration_s=85.0, seed=3)
    st = run_scenario(sc).stats(SAFETY)
    assert st.samples >= 10_000
    phy = sc.phy
    t_tx = (phy.frame_ns(64) + phy.sifs_ns + phy.ack_ns) / 1e6
    oracle = (phy.difs_ns + (phy.cw_min / 2) * phy.slot_ns) / 1e6 + t_tx
    rel = abs(st.mean_delay_ms - oracle) / oracle
    assert rel <= 0.01, f"relative error {rel:.4%}"
    report(6, f"DCF single-station mean delay {st.mean_delay_ms:.4f} ms vs "
              f"closed form {oracle:.4f} ms ({rel:.3%} over {st.samples} packets)")


# ----------------------------------------------------------------- GFDM

def test_criterion_07_gfdm_correctness():
    t0 = time.monotonic()
    rng = np.random.default_rng(5)
    worst_zf = 0.0
    for name, cfg in SHIPPED_CONFIGS.items():
        bits = rng.integers(0, 2, cfg.bits_per_block)
        grid = map_resources(bits_to_symbols(bits, cfg.constellation), cfg)
        rec = gfdm_demodulate(gfdm_modulate(grid, cfg), cfg)
        worst_zf = max(worst_zf, float(np.max(np.abs(rec - grid))))
    assert worst_zf <= 1e-9, f"ZF identity error {worst_zf:.2e}"

    ofdm = GfdmConfig(k=64, m=1, pulse="rect")
    bits = rng.integers(0, 2, ofdm.bits_per_block)
    grid = map_resources(bits_to_symbols(bits, "qpsk"), ofdm)
    err = np.max(np.abs(gfdm_modulate(grid, ofdm)
                        - np.fft.ifft(grid[:, 0]) * np.sqrt(64)))
    assert err <= 1e-12, f"IDFT oracle error {err:.2e}"

    cfg = GfdmConfig(k=512, m=1, pulse="rect", cp_len=8, constellation="qpsk",
                     preamble_boost_db=12.0)
    zs = []
    for ebn0 in (0.0, 4.0, 8.0):
        sigma = noise_sigma_for_ebn0(cfg, ebn0)
        res = ber_run(cfg, awgn(sigma, delay=13), 1_000_000, seed=9)
        p = qfunc(math.sqrt(2.0 * 10.0 ** (ebn0 / 10.0)))
        sd = math.sqrt(p * (1 - p) / res.bit_count)
        z = (res.ber - p) / sd
        assert abs(z) <= 3.0, f"{ebn0} dB: ber {res.ber:.6f} vs {p:.6f} (z={z:+.2f})"
        zs.append(z)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"BER block took {elapsed:.1f}s"
    report(7, f"ZF identity {worst_zf:.1e} <= 1e-9; IDFT oracle {err:.1e} <= "
              f"1e-12; AWGN z-scores {['%+.2f' % z for z in zs]} within 3 "
              f"sigma ({elapsed:.1f}s < 60s)")


def test_criterion_08_schmidl_cox():
    cfg = GfdmConfig(k=64, m=1, cp_len=0, cs_len=0, preamble_boost_db=6.0)
    rng = np.random.default_rng(2)
    bits = rng.integers(0, 2, cfg.bits_per_block)
    grid = map_resources(bits_to_symbols(bits, "qpsk"), cfg)
    frame = build_frame(gfdm_modulate(grid, cfg), cfg)

    rx = np.concatenate([np.zeros(37, complex), frame.samples,
                         np.zeros(12, complex)])
    res = schmidl_cox_sync(rx, cfg)
    assert res.frame_start == 37
    assert abs(res.cfo_hat) <= 0.01

    ch = ChannelModel(cfo=0.25, delay=21, tail_pad=12)
    res = schmidl_cox_sync(ch.apply(frame.samples, cfg, rng), cfg)
    assert abs(res.cfo_hat - 0.25) <= 0.01

    snr_lin = 10.0
    sigma = float(np.sqrt(np.mean(np.abs(frame.samples) ** 2) / snr_lin))
    hits = 0
    trials = 1000
    for _ in range(trials):
        delay = int(rng.integers(5, 40))
        noisy = ChannelModel(noise_sigma=sigma, delay=delay, tail_pad=16)
        got = schmidl_cox_sync(noisy.apply(frame.samples, cfg, rng), cfg)
        hits += abs(got.frame_start - delay) <= 2
    assert hits / trials >= 0.99, f"{hits}/{trials} within 2 samples"
    report(8, f"noiseless timing and CFO exact; 10 dB timing within 2 samples "
              f"in {hits / 10:.1f}% of {trials} trials (>= 99%)")


# ---------------------------------------------------------- localization

def test_criterion_09_localization_accuracy():
    t0 = time.monotonic()
    rng = np.random.default_rng(2024)
    for _ in range(200):
        anchors = [Anchor(i, tuple(rng.uniform(0, 10, 3))) for i in range(4)]
        pts = np.array([a.xyz for a in anchors])
        if abs(np.linalg.det(pts[1:] - pts[0])) < 5.0:
            continue
        p = rng.uniform(0, 10, 3)
        meas = [(a, float(np.linalg.norm(p - a.xyz))) for a in anchors]
        est = trilaterate(meas)
        assert np.linalg.norm(est.position - p) < 1e-6

    server = LocalizationServer(anchors=list(DEFAULT_ROOM_ANCHORS))
    noise = RangingNoise(sigma_d_m=1.0)
    mc_rng = np.random.default_rng(7)
    sq = 0.0
    trials = 1000
    for t in range(trials):
        p = sample_ms_position(mc_rng)
        est = server.locate(ms_id=t, true_position=p, noise=noise, rng=mc_rng)
        sq += float(np.sum((est.position - p) ** 2))
    per_axis_rms = math.sqrt(sq / (3 * trials))
    elapsed = time.monotonic() - t0
    assert 0.8 <= per_axis_rms <= 1.6, f"per-axis RMS {per_axis_rms:.3f} m"
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    report(9, f"sigma_d=1 m, 1000 fixes: per-axis RMS error "
              f"{per_axis_rms:.3f} m in [0.8, 1.6]; exact recovery on 200 "
              f"random geometries ({elapsed:.1f}s < 30s)")


# -------------------------------------------------------------- NLOS id

def test_criterion_10_nlos_feature_study():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        taps = rng.normal(size=12) + 1j * rng.normal(size=12)
        fv = extract_features(taps)
        a = np.abs(taps)
        mu = a.sum() / a.size
        m2 = ((a - mu) ** 2).sum() / a.size
        m3 = ((a - mu) ** 3).sum() / a.size
        m4 = ((a - mu) ** 4).sum() / a.size
        assert abs(fv.mu - mu) < 1e-12
        assert abs(fv.sigma - math.sqrt(m2)) < 1e-12
        assert abs(fv.skewness - m3 / m2 ** 1.5) < 1e-12
        assert abs(fv.kurtosis - m4 / m2 ** 2) < 1e-12

    means = {name: [] for name in SUBSETS}
    for seed in range(10):
        cirs, labels = generate_dataset(SyntheticCirParams(n_per_class=1000,
                                                           seed=seed))
        for acc in evaluate_subsets(cirs, labels,
                                    params=ForestParams(n_trees=40), seed=seed):
            means[acc.subset].append(acc.overall)
    m = {k: float(np.mean(v)) for k, v in means.items()}
    tol = 0.02
    assert m["s4"] >= m["s3"] - tol, m
    assert m["s3"] >= max(m["s1"], m["s2"]) - tol, m
    report(10, "moment oracle to 1e-12; 10-seed mean accuracies "
               + " ".join(f"{k}={m[k]:.3f}" for k in ("s1", "s2", "s3", "s4"))
               + " satisfy S4 >= S3 >= max(S1, S2) within 2 points")


# ---------------------------------------------------------- determinism

def test_criterion_11_byte_identical_reruns(tmp_path):
    base = Scenario(access="hcca", scheduler="ref", duration_s=10.0, seed=42)
    a = sweep_rows_to_csv(sweep(base, [5, 20, 35]))
    b = sweep_rows_to_csv(sweep(base, [5, 20, 35]))
    assert a == b
    dcf = Scenario(access="dcf", n_ar=10, duration_s=2.0, seed=42)
    c = sweep_rows_to_csv(sweep(dcf, [10]))
    d = sweep_rows_to_csv(sweep(dcf, [10]))
    assert c == d

    from indradio.cli import main
    p1, p2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    argv = ["loc", "sim", "--sigma-d", "1.0", "--trials", "50", "--seed", "6"]
    assert main(argv + ["--out", str(p1)]) == 0
    assert main(argv + ["--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    report(11, "repeated seeded runs produced byte-identical CSV output "
               "(MAC sweeps and localization CLI)")
