from .ber import BerResult, ber_run, latency_report, receive_frame
from .chanest import ls_channel_estimate
from .channel import ChannelModel, awgn, ideal, noise_sigma_for_ebn0
from .config import SHIPPED_CONFIGS, GfdmConfig
from .framing import Frame, build_frame, preamble
from .modem import (NonInvertibleConfigError, bits_to_symbols, demap_resources,
                    gfdm_demodulate, gfdm_modulate, map_resources,
                    modulation_matrix, symbols_to_bits)
from .pulses import prototype_pulse
from .sync import NoFrameDetected, SyncResult, schmidl_cox_sync, timing_metric

__all__ = [
    "GfdmConfig", "SHIPPED_CONFIGS", "prototype_pulse",
    "map_resources", "demap_resources", "gfdm_modulate", "gfdm_demodulate",
    "modulation_matrix", "bits_to_symbols", "symbols_to_bits",
    "NonInvertibleConfigError",
    "Frame", "build_frame", "preamble",
    "schmidl_cox_sync", "timing_metric", "SyncResult", "NoFrameDetected",
    "ls_channel_estimate",
    "ChannelModel", "ideal", "awgn", "noise_sigma_for_ebn0",
    "ber_run", "receive_frame", "latency_report", "BerResult",
]
