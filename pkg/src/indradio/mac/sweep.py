"""Sweep driver: run one scenario per AR-station count and emit CSV rows."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from .core import AR, SAFETY, RunResult, Scenario
from .dcf import run_dcf
from .hcca import run_hcca
from .pcf import run_pcf

CSV_HEADER = "n_ar,class,mean_ms,max_ms,miss_rate,samples"


def run_scenario(scenario: Scenario) -> RunResult:
    if scenario.access == "dcf":
        return run_dcf(scenario)
    if scenario.access == "pcf":
        return run_pcf(scenario)
    if scenario.access == "hcca":
        return run_hcca(scenario)
    raise ValueError(f"unknown access method {scenario.access!r}")


def _run_point(scenario: Scenario) -> tuple[int, RunResult]:
    return scenario.n_ar, run_scenario(scenario)


def sweep(base: Scenario, n_ar_values: Sequence[int],
          workers: int = 1) -> list[tuple[int, RunResult]]:
    """One independent run per point; rows come back ordered by n_ar
    regardless of completion order."""
    scenarios = [base.with_(n_ar=n) for n in n_ar_values]
    if workers > 1 and len(scenarios) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, scenarios))
    else:
        results = [_run_point(s) for s in scenarios]
    return results


def sweep_rows(results: Iterable[tuple[int, RunResult]]) -> list[str]:
    rows = []
    for n_ar, res in results:
        for cls in (SAFETY, AR):
            st = res.stats(cls)
            rows.append(f"{n_ar},{cls},{st.mean_delay_ms:.6f},"
                        f"{st.max_delay_ms:.6f},{st.miss_rate:.6f},{st.samples}")
    return rows


def sweep_rows_to_csv(results: Iterable[tuple[int, RunResult]]) -> str:
    return "\n".join([CSV_HEADER, *sweep_rows(results)]) + "\n"


def parse_range(spec: str) -> list[int]:
    """Parse 'A..B[:step]' or a single integer (e.g. '5..50:5')."""
    if ".." not in spec:
        return [int(spec)]
    lo, rest = spec.split("..", 1)
    if ":" in rest:
        hi, step = rest.split(":", 1)
    else:
        hi, step = rest, "1"
    lo_i, hi_i, st_i = int(lo), int(hi), int(step)
    if st_i <= 0 or hi_i < lo_i:
        raise ValueError(f"bad range spec {spec!r}")
    return list(range(lo_i, hi_i + 1, st_i))
