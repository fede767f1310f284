"""indradio: simulation toolkit for industrial WLAN latency, waveform,
localization, and NLOS-identification studies."""

__version__ = "0.1.0"
