"""Resource mapping, pulse-shaped block modulation, and demodulation.

The modulator implements x[n] = sum_k sum_m d[k,m] g[(n - mK) mod N]
exp(j 2 pi k n / K), evaluated per subsymbol through a K-point inverse DFT,
so the whole chain is linear in the resource grid. The receiver equalizes
per frequency bin and then inverts the block either with the conjugate
transpose (matched filter) or the exact inverse (zero forcing) of the
N x N modulation matrix.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .config import GfdmConfig
from .pulses import prototype_pulse

_two_pi = 2.0 * np.pi


class NonInvertibleConfigError(ValueError):
    """Zero-forcing requested for a singular modulation matrix."""


# ------------------------------------------------------------------ bits

def bits_to_symbols(bits: np.ndarray, constellation: str) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    if constellation == "bpsk":
        return (1.0 - 2.0 * bits).astype(complex)
    if constellation == "qpsk":
        b = bits.reshape(-1, 2)
        return ((1 - 2 * b[:, 0]) + 1j * (1 - 2 * b[:, 1])) / np.sqrt(2.0)
    if constellation == "qam16":
        b = bits.reshape(-1, 4)
        # gray per axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
        lvl = np.array([-3.0, -1.0, 1.0, 3.0])
        gray = np.array([0, 1, 3, 2])                 # index -> gray code
        inv = np.argsort(gray)                        # gray code -> level index
        i_code = 2 * b[:, 0] + b[:, 1]
        q_code = 2 * b[:, 2] + b[:, 3]
        return (lvl[inv[i_code]] + 1j * lvl[inv[q_code]]) / np.sqrt(10.0)
    raise ValueError(constellation)


def symbols_to_bits(symbols: np.ndarray, constellation: str) -> np.ndarray:
    s = np.asarray(symbols)
    if constellation == "bpsk":
        return (s.real < 0).astype(np.int64)
    if constellation == "qpsk":
        out = np.empty((s.size, 2), dtype=np.int64)
        out[:, 0] = s.real < 0
        out[:, 1] = s.imag < 0
        return out.reshape(-1)
    if constellation == "qam16":
        lvl_idx = lambda x: np.clip(np.round((x * np.sqrt(10.0) + 3) / 2), 0, 3).astype(int)
        gray = np.array([0, 1, 3, 2])
        i_code = gray[lvl_idx(s.real)]
        q_code = gray[lvl_idx(s.imag)]
        out = np.empty((s.size, 4), dtype=np.int64)
        out[:, 0] = i_code >> 1
        out[:, 1] = i_code & 1
        out[:, 2] = q_code >> 1
        out[:, 3] = q_code & 1
        return out.reshape(-1)
    raise ValueError(constellation)


# ------------------------------------------------------------- resources

def map_resources(symbols: np.ndarray, config: GfdmConfig) -> np.ndarray:
    """Fill the K x M grid column-major: subsymbol m outer, active
    subcarrier k inner. Inactive rows stay exactly zero."""
    symbols = np.asarray(symbols, dtype=complex)
    if symbols.size != config.symbols_per_block:
        raise ValueError(f"need {config.symbols_per_block} symbols, got {symbols.size}")
    grid = np.zeros((config.k, config.m), dtype=complex)
    act = np.asarray(config.active)
    grid[act, :] = symbols.reshape(config.m, config.n_active).T
    return grid


def demap_resources(grid: np.ndarray, config: GfdmConfig) -> np.ndarray:
    grid = np.asarray(grid)
    if grid.shape != (config.k, config.m):
        raise ValueError(f"grid must be {config.k}x{config.m}")
    act = np.asarray(config.active)
    return grid[act, :].T.reshape(-1)


# ------------------------------------------------------------ modulation

def gfdm_modulate(grid: np.ndarray, config: GfdmConfig) -> np.ndarray:
    grid = np.asarray(grid, dtype=complex)
    if grid.shape != (config.k, config.m):
        raise ValueError(f"grid must be {config.k}x{config.m}")
    g = prototype_pulse(config)
    k, m, n = config.k, config.m, config.n
    # per-subsymbol K-point IDFT, tiled over the block and pulse-shaped
    b = np.fft.ifft(grid, axis=0) * k
    x = np.zeros(n, dtype=complex)
    for mm in range(m):
        x += np.tile(b[:, mm], m) * np.roll(g, mm * k)
    return x


def modulation_matrix(config: GfdmConfig) -> np.ndarray:
    """Explicit N x N block matrix; column order matches the resource
    demapper's vectorization (subsymbol-major)."""
    g = prototype_pulse(config)
    k, m, n = config.k, config.m, config.n
    cols = np.empty((n, n), dtype=complex)
    ns = np.arange(n)
    for mm in range(m):
        shifted = np.roll(g, mm * k)
        for kk in range(k):
            cols[:, mm * k + kk] = shifted * np.exp(1j * _two_pi * kk * ns / k)
    return cols


def _vec_to_grid(vec: np.ndarray, config: GfdmConfig) -> np.ndarray:
    return vec.reshape(config.m, config.k).T


@lru_cache(maxsize=32)
def _receiver_matrices(config: GfdmConfig) -> tuple[np.ndarray, float]:
    a = modulation_matrix(config)
    return a, float(np.linalg.cond(a))


def gfdm_demodulate(samples: np.ndarray, config: GfdmConfig,
                    h: np.ndarray | None = None) -> np.ndarray:
    """Equalize per bin (when h is given) and invert the block.

    Returns the estimated K x M resource grid. The matched filter applies
    the conjugate transpose; zero forcing solves the exact system and
    refuses singular configurations. The inverse-DFT mode (M = 1, rect
    pulse) takes the unitary FFT shortcut.
    """
    y = np.asarray(samples, dtype=complex)
    if y.size != config.n:
        raise ValueError(f"need {config.n} samples, got {y.size}")
    if h is not None:
        h = np.asarray(h, dtype=complex)
        if h.size != config.n:
            raise ValueError("per-bin gains must have N entries")
        y = np.fft.ifft(np.fft.fft(y) / h)
    if config.m == 1 and config.pulse == "rect":
        # unitary case: ZF and MF coincide with plain DFT demodulation
        return (np.fft.fft(y) / np.sqrt(config.k)).reshape(config.k, 1)
    a, cond = _receiver_matrices(config)
    if config.receiver == "mf":
        vec = a.conj().T @ y
    else:
        if cond > 1e10:
            raise NonInvertibleConfigError(
                f"modulation matrix is singular for K={config.k}, M={config.m}, "
                f"pulse={config.pulse!r}")
        vec = np.linalg.solve(a, y)
    return _vec_to_grid(vec, config)
