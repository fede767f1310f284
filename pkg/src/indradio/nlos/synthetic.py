"""Synthetic CIR generator standing in for a measured indoor campaign.

Line-of-sight responses get a Rician first tap (deterministic component set
by the K-factor) over a short exponential power-delay profile; obstructed
responses are all-Rayleigh with a longer delay spread. The defaults give
overlapping-but-separable feature clouds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import LOS, NLOS


@dataclass(frozen=True)
class SyntheticCirParams:
    n_per_class: int = 1000
    tap_count: int = 16
    los_k_factor_db: float = 6.0
    los_delay_spread_taps: float = 2.5
    nlos_delay_spread_taps: float = 7.5     # 3:1 spread ratio vs LOS
    seed: int = 1

    def __post_init__(self):
        if self.tap_count < 8:
            raise ValueError("tap_count must be at least 8")
        if self.los_k_factor_db <= 0:
            raise ValueError("LOS K-factor must be positive (dB)")


def _exponential_pdp(tap_count: int, spread: float) -> np.ndarray:
    p = np.exp(-np.arange(tap_count) / spread)
    return p / p.sum()


def _rayleigh_taps(rng, n, pdp):
    scale = np.sqrt(pdp / 2.0)
    return (rng.normal(size=(n, pdp.size)) + 1j * rng.normal(size=(n, pdp.size))) * scale


def generate_dataset(params: SyntheticCirParams) -> tuple[np.ndarray, np.ndarray]:
    """Balanced labeled set: (cirs complex (2n, taps), labels (2n,)).

    Label 0 is line-of-sight, 1 is obstructed. Deterministic under the
    params seed.
    """
    if params.n_per_class < 100:
        raise ValueError("n_per_class must be at least 100")
    rng = np.random.default_rng(params.seed)
    n, taps = params.n_per_class, params.tap_count

    pdp_los = _exponential_pdp(taps, params.los_delay_spread_taps)
    los = _rayleigh_taps(rng, n, pdp_los)
    k = 10.0 ** (params.los_k_factor_db / 10.0)
    # first tap: deterministic ray of power K/(K+1), scatter 1/(K+1)
    p0 = pdp_los[0]
    phases = rng.uniform(0, 2 * np.pi, n)
    los[:, 0] = (np.sqrt(k / (k + 1) * p0) * np.exp(1j * phases)
                 + los[:, 0] / np.sqrt(k + 1))

    pdp_nlos = _exponential_pdp(taps, params.nlos_delay_spread_taps)
    nlos = _rayleigh_taps(rng, n, pdp_nlos)

    cirs = np.concatenate([los, nlos])
    labels = np.concatenate([np.full(n, LOS), np.full(n, NLOS)])
    return cirs, labels


def estimate_rician_k(first_taps: np.ndarray) -> float:
    """Moment-based K-factor estimator over a sample of complex gains."""
    power = np.abs(np.asarray(first_taps)) ** 2
    mean_p = power.mean()
    gamma = power.var() / mean_p ** 2
    if gamma >= 1.0:
        return 0.0
    root = np.sqrt(1.0 - gamma)
    return float(root * (root + 1.0) / gamma)
