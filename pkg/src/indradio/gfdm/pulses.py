"""Prototype transmit pulses, sampled circularly over one block of N = K*M
samples and normalized to unit energy."""

from __future__ import annotations

import numpy as np

from .config import GfdmConfig


def _centered_times(k: int, n: int) -> np.ndarray:
    # circular time axis in subsymbol units, peak at sample 0
    idx = np.arange(n)
    return (((idx + n // 2) % n) - n // 2) / k


def _raised_cosine(t: np.ndarray, alpha: float) -> np.ndarray:
    out = np.sinc(t)
    denom = 1.0 - (2.0 * alpha * t) ** 2
    near_null = np.isclose(denom, 0.0)
    safe = np.where(near_null, 1.0, denom)
    out = out * np.cos(np.pi * alpha * t) / safe
    if np.any(near_null):
        out[near_null] = np.sinc(t[near_null]) * np.pi / 4.0
    return out


def _root_raised_cosine(t: np.ndarray, alpha: float) -> np.ndarray:
    out = np.empty_like(t)
    zero = np.isclose(t, 0.0)
    if alpha > 0:
        brewster = np.isclose(np.abs(t), 1.0 / (4.0 * alpha))
    else:
        brewster = np.zeros_like(zero)
    regular = ~(zero | brewster)
    tr = t[regular]
    num = (np.sin(np.pi * tr * (1 - alpha))
           + 4 * alpha * tr * np.cos(np.pi * tr * (1 + alpha)))
    den = np.pi * tr * (1 - (4 * alpha * tr) ** 2)
    out[regular] = num / den
    out[zero] = 1.0 - alpha + 4.0 * alpha / np.pi
    if np.any(brewster):
        out[brewster] = (alpha / np.sqrt(2.0)) * (
            (1 + 2 / np.pi) * np.sin(np.pi / (4 * alpha))
            + (1 - 2 / np.pi) * np.cos(np.pi / (4 * alpha)))
    return out


def prototype_pulse(config: GfdmConfig) -> np.ndarray:
    """Unit-energy length-N prototype for the configured pulse family."""
    n = config.n
    if config.pulse == "rect":
        g = np.zeros(n)
        g[: config.k] = 1.0
    elif config.pulse == "rc":
        g = _raised_cosine(_centered_times(config.k, n), config.rolloff)
    elif config.pulse == "rrc":
        g = _root_raised_cosine(_centered_times(config.k, n), config.rolloff)
    else:  # pragma: no cover - guarded by config validation
        raise ValueError(config.pulse)
    return g / np.linalg.norm(g)
