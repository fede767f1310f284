"""Channel models for the modem chain: delay, FIR multipath, carrier
frequency offset, and additive white Gaussian noise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import GfdmConfig


@dataclass
class ChannelModel:
    """Applies y = (x conv taps) * exp(j 2 pi cfo n / K) + noise, after an
    integer sample delay. cfo is in subcarrier spacings; noise_sigma is the
    per-complex-sample standard deviation (E|n|^2 = sigma^2)."""

    taps: Optional[np.ndarray] = None
    noise_sigma: float = 0.0
    cfo: float = 0.0
    delay: int = 0
    normalize_taps: bool = True
    tail_pad: int = 0

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError("delay must be nonnegative")
        if self.taps is not None:
            t = np.asarray(self.taps, dtype=complex)
            if self.normalize_taps:
                t = t / np.linalg.norm(t)
            self.taps = t

    def apply(self, x: np.ndarray, config: GfdmConfig,
              rng: np.random.Generator) -> np.ndarray:
        y = np.asarray(x, dtype=complex)
        if self.taps is not None:
            y = np.convolve(y, self.taps)
        if self.delay:
            y = np.concatenate([np.zeros(self.delay, dtype=complex), y])
        if self.tail_pad:
            y = np.concatenate([y, np.zeros(self.tail_pad, dtype=complex)])
        if self.cfo:
            n = np.arange(y.size)
            y = y * np.exp(2j * np.pi * self.cfo * n / config.k)
        if self.noise_sigma > 0:
            s = self.noise_sigma / np.sqrt(2.0)
            y = y + rng.normal(0.0, s, y.size) + 1j * rng.normal(0.0, s, y.size)
        return y


def ideal() -> ChannelModel:
    return ChannelModel()


def awgn(noise_sigma: float, delay: int = 0) -> ChannelModel:
    return ChannelModel(noise_sigma=noise_sigma, delay=delay)


def noise_sigma_for_ebn0(config: GfdmConfig, ebn0_db: float) -> float:
    """Per-sample noise std for a target Eb/N0 with unit-power symbols and
    orthonormal modulation columns (exact in the inverse-DFT mode)."""
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return float(np.sqrt(1.0 / (config.bits_per_symbol * ebn0)))
