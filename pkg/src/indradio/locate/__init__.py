from .server import (DEFAULT_MS_REGION, DEFAULT_ROOM_ANCHORS,
                     InsufficientRangingError, LocalizationServer,
                     sample_ms_position)
from .trilateration import (DegenerateGeometryError, PositionEstimate,
                            trilaterate)
from .twr import (SPEED_OF_LIGHT, Anchor, InvalidExchangeError,
                  RangingExchange, RangingNoise, simulate_exchange,
                  tof_from_twr)

__all__ = [
    "Anchor", "RangingExchange", "RangingNoise", "SPEED_OF_LIGHT",
    "tof_from_twr", "simulate_exchange", "InvalidExchangeError",
    "trilaterate", "PositionEstimate", "DegenerateGeometryError",
    "LocalizationServer", "InsufficientRangingError",
    "DEFAULT_ROOM_ANCHORS", "DEFAULT_MS_REGION", "sample_ms_position",
]
