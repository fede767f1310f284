"""Waveform parameterization for the block-based multicarrier modem."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

CONSTELLATION_BITS = {"bpsk": 1, "qpsk": 2, "qam16": 4}
PULSES = ("rect", "rc", "rrc")
RECEIVERS = ("zf", "mf")


@dataclass(frozen=True)
class GfdmConfig:
    """K subcarriers by M subsymbols; one block spans N = K*M samples.

    M = 1 with the rect pulse collapses the modulator to a plain K-point
    inverse DFT; K = 1 collapses it to single-carrier transmission.
    """

    k: int = 64
    m: int = 1
    pulse: str = "rect"
    rolloff: float = 0.5
    active_subcarriers: Optional[tuple[int, ...]] = None   # None = all
    cp_len: int = 0
    cs_len: int = 0
    constellation: str = "qpsk"
    receiver: str = "zf"
    preamble_seed: int = 2024
    preamble_boost_db: float = 3.0
    window_len: int = 0          # raised-cosine edge taper; 0 disables it

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be >= 1")
        if self.pulse not in PULSES:
            raise ValueError(f"unknown pulse {self.pulse!r}")
        if self.constellation not in CONSTELLATION_BITS:
            raise ValueError(f"unknown constellation {self.constellation!r}")
        if self.receiver not in RECEIVERS:
            raise ValueError(f"unknown receiver {self.receiver!r}")
        if self.active_subcarriers is not None:
            act = tuple(sorted(set(self.active_subcarriers)))
            if not act or act[0] < 0 or act[-1] >= self.k:
                raise ValueError("active subcarriers must be a nonempty subset of [0, k)")
            object.__setattr__(self, "active_subcarriers", act)
        if not 0 <= self.cp_len <= self.n or not 0 <= self.cs_len <= self.n:
            raise ValueError("cp/cs length must be within [0, N]")
        if self.window_len < 0 or 2 * self.window_len > self.n:
            raise ValueError("window_len too large for the block")

    @property
    def n(self) -> int:
        return self.k * self.m

    @property
    def active(self) -> tuple[int, ...]:
        if self.active_subcarriers is None:
            return tuple(range(self.k))
        return self.active_subcarriers

    @property
    def n_active(self) -> int:
        return len(self.active)

    @property
    def bits_per_symbol(self) -> int:
        return CONSTELLATION_BITS[self.constellation]

    @property
    def symbols_per_block(self) -> int:
        return self.n_active * self.m

    @property
    def bits_per_block(self) -> int:
        return self.symbols_per_block * self.bits_per_symbol


# Configurations exercised by the perfect-reconstruction checks. RC/RRC
# prototypes with an even subsymbol count have spectral nulls that make the
# modulation matrix singular, so the shipped set keeps M odd for those.
SHIPPED_CONFIGS: dict[str, GfdmConfig] = {
    "ofdm64": GfdmConfig(k=64, m=1, pulse="rect"),
    "rect8x4": GfdmConfig(k=8, m=4, pulse="rect"),
    "rc16x3": GfdmConfig(k=16, m=3, pulse="rc", rolloff=0.5),
    "rrc32x5": GfdmConfig(k=32, m=5, pulse="rrc", rolloff=0.25),
    "rc4x7": GfdmConfig(k=4, m=7, pulse="rc", rolloff=0.9),
    "sc8": GfdmConfig(k=1, m=8, pulse="rect"),
}
