"""Frequency-domain least-squares channel estimation over the preamble,
with linear interpolation (real and imaginary parts independently) across
bins where the reference carries no energy and nearest-pilot extrapolation
at the edges."""

from __future__ import annotations

import numpy as np

PILOT_FLOOR = 1e-12


def ls_channel_estimate(rx_preamble: np.ndarray, tx_preamble: np.ndarray) -> np.ndarray:
    """Per-bin complex gains over the preamble FFT grid.

    Bins whose reference magnitude sits below the floor (the repeated
    preamble leaves every odd bin empty) are filled by interpolating the
    surrounding pilot estimates.
    """
    rx = np.asarray(rx_preamble, dtype=complex)
    tx = np.asarray(tx_preamble, dtype=complex)
    if rx.shape != tx.shape:
        raise ValueError("preamble length mismatch")
    n = rx.size
    rx_f = np.fft.fft(rx)
    tx_f = np.fft.fft(tx)
    pilots = np.abs(tx_f) > PILOT_FLOOR
    if not np.any(pilots):
        raise ValueError("reference preamble carries no pilot energy")
    h = np.empty(n, dtype=complex)
    idx = np.arange(n)
    pi = idx[pilots]
    hp = rx_f[pilots] / tx_f[pilots]
    h[pilots] = hp
    if pilots.all():
        return h
    holes = idx[~pilots]
    h[holes] = (np.interp(holes, pi, hp.real)
                + 1j * np.interp(holes, pi, hp.imag))
    return h
