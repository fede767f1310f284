"""Monte-Carlo uncoded BER through the complete transmit/receive chain:
map, modulate, frame, channel, synchronize, estimate, equalize,
demodulate, demap, decide."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..events import Rng
from .chanest import ls_channel_estimate
from .channel import ChannelModel
from .config import GfdmConfig
from .framing import build_frame, preamble
from .modem import (bits_to_symbols, demap_resources, gfdm_demodulate,
                    gfdm_modulate, map_resources, symbols_to_bits)
from .sync import schmidl_cox_sync


@dataclass(frozen=True)
class BerResult:
    ber: float
    bit_errors: int
    bit_count: int


def _gate_impulse_response(h: np.ndarray, lead: int, wrap: int) -> np.ndarray:
    """Suppress estimation noise outside the plausible support of the
    channel impulse response: a valid channel fits inside the CP (lead
    taps) and residual timing error can push the response a few taps
    across the circular boundary (wrap taps)."""
    n = h.size
    if lead + wrap >= n:
        return h
    ir = np.fft.ifft(h)
    mask = np.zeros(n)
    mask[:lead] = 1.0
    if wrap:
        mask[-wrap:] = 1.0
    return np.fft.fft(ir * mask)


def _common_phase_correction(symbols: np.ndarray, constellation: str) -> np.ndarray:
    """Decision-directed removal of the residual common rotation left by
    the carrier-offset estimate drifting between preamble and payload."""
    decided = bits_to_symbols(symbols_to_bits(symbols, constellation), constellation)
    ref = np.vdot(decided, symbols)
    if abs(ref) < 1e-12:
        return symbols
    return symbols * np.exp(-1j * np.angle(ref))


def _fine_timing(rx: np.ndarray, coarse_start: int, config: GfdmConfig) -> int:
    """Refine the correlation-based timing estimate with the strongest tap
    of a trial channel estimate (integer-exact at workable SNR)."""
    n_blk = config.n
    lo = max(0, coarse_start)
    trial = rx[lo:lo + n_blk]
    if trial.size < n_blk:
        return coarse_start
    h = ls_channel_estimate(trial, preamble(config))
    ir = np.fft.ifft(h)
    delta = int(np.argmax(np.abs(ir)))
    if delta >= n_blk // 2:
        delta -= n_blk
    return lo + delta


# Below this the offset estimate is indistinguishable from its own noise
# floor at workable SNRs; correcting by it would only inject phase slip.
CFO_CORRECTION_FLOOR = 0.02


def receive_frame(rx: np.ndarray, config: GfdmConfig) -> np.ndarray:
    """Synchronize and demodulate one frame; returns the equalized symbol
    vector (one entry per mapped constellation symbol)."""
    sync = schmidl_cox_sync(rx, config)
    cfo_corrected = abs(sync.cfo_hat) > CFO_CORRECTION_FLOOR
    if cfo_corrected:
        n = np.arange(rx.size)
        rx = rx * np.exp(-2j * np.pi * sync.cfo_hat * n / config.k)
    frame_start = _fine_timing(rx, sync.frame_start, config)
    # back off a little into the cyclic prefix so any leftover timing
    # error stays on the causal side of the FFT window
    mu = min(config.cp_len // 2, max(0, frame_start))
    start = frame_start - mu
    n_blk = config.n
    rx_pre = rx[start:start + n_blk]
    pay = start + n_blk + config.cs_len + config.cp_len
    rx_payload = rx[pay:pay + n_blk]
    if rx_pre.size < n_blk or rx_payload.size < n_blk:
        raise ValueError("frame truncated at buffer edge")
    # reference the estimator against the backed-off preamble so the
    # estimate stays smooth across interpolated bins, then fold the known
    # window-offset ramp back in exactly
    h_smooth = ls_channel_estimate(rx_pre, np.roll(preamble(config), mu))
    if config.cp_len:
        h_smooth = _gate_impulse_response(h_smooth, config.cp_len + 4, 4)
    ramp = np.exp(-2j * np.pi * np.arange(n_blk) * mu / n_blk)
    grid = gfdm_demodulate(rx_payload, config, h_smooth * ramp)
    symbols = demap_resources(grid, config)
    if cfo_corrected:
        # mop up the preamble-to-payload phase slip left by the estimate
        symbols = _common_phase_correction(symbols, config.constellation)
    return symbols


def ber_run(config: GfdmConfig, channel: ChannelModel, n_bits: int,
            seed: int) -> BerResult:
    if n_bits < 10_000:
        raise ValueError("n_bits must be at least 10^4 for a meaningful estimate")
    rng = Rng(seed)
    bit_rng = rng.stream("bits")
    noise_rng = rng.stream("noise")
    per_frame = config.bits_per_block
    errors = 0
    counted = 0
    while counted < n_bits:
        bits = bit_rng.integers(0, 2, size=per_frame)
        syms = bits_to_symbols(bits, config.constellation)
        grid = map_resources(syms, config)
        tx = build_frame(gfdm_modulate(grid, config), config).samples
        rx = channel.apply(tx, config, noise_rng)
        est = receive_frame(rx, config)
        bits_hat = symbols_to_bits(est, config.constellation)
        errors += int(np.count_nonzero(bits_hat != bits))
        counted += per_frame
    return BerResult(ber=errors / counted, bit_errors=errors, bit_count=counted)


def latency_report(config: GfdmConfig) -> dict[str, int]:
    """Algorithmic latency of each processing stage in samples (the block
    sizes a streaming implementation must buffer before it can emit)."""
    n = config.n
    frame_len = 2 * (config.cp_len + config.cs_len) + 2 * n
    return {
        "block_samples": n,
        "preamble_samples": n,
        "frame_samples": frame_len,
        "sync_lookahead_samples": n,
        "modulator_samples": n,
        "demodulator_samples": n,
    }
