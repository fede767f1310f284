"""Statistical features of the channel impulse response amplitude:
the first to fourth central moments (mean, standard deviation, skewness,
kurtosis), computed as population moments (divide by n).

Skewness and kurtosis are invariant under positive scaling of the taps, so
classifiers restricted to them are blind to received-power level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LOS = 0
NLOS = 1

FEATURE_NAMES = ("mu", "sigma", "skewness", "kurtosis")


@dataclass(frozen=True)
class FeatureVector:
    mu: float
    sigma: float
    skewness: float
    kurtosis: float
    degenerate: bool = False

    def as_array(self) -> np.ndarray:
        return np.array([self.mu, self.sigma, self.skewness, self.kurtosis])


def extract_features(taps: np.ndarray) -> FeatureVector:
    """Moments of the tap amplitude sample; a constant sample (zero spread)
    maps skewness and kurtosis to 0 and raises the degenerate flag rather
    than returning NaN."""
    a = np.abs(np.asarray(taps))
    if a.size < 2:
        raise ValueError("need at least 2 taps")
    mu = float(np.mean(a))
    centered = a - mu
    m2 = float(np.mean(centered ** 2))
    sigma = float(np.sqrt(m2))
    if sigma == 0.0:
        return FeatureVector(mu, 0.0, 0.0, 0.0, degenerate=True)
    m3 = float(np.mean(centered ** 3))
    m4 = float(np.mean(centered ** 4))
    return FeatureVector(mu, sigma, m3 / sigma ** 3, m4 / sigma ** 4)


def feature_matrix(cirs: np.ndarray) -> np.ndarray:
    """(n, 4) matrix of [mu, sigma, skewness, kurtosis] rows."""
    a = np.abs(np.asarray(cirs))
    mu = a.mean(axis=1)
    centered = a - mu[:, None]
    m2 = (centered ** 2).mean(axis=1)
    sigma = np.sqrt(m2)
    safe = np.where(sigma > 0, sigma, 1.0)
    m3 = (centered ** 3).mean(axis=1)
    m4 = (centered ** 4).mean(axis=1)
    s = np.where(sigma > 0, m3 / safe ** 3, 0.0)
    k = np.where(sigma > 0, m4 / safe ** 4, 0.0)
    return np.column_stack([mu, sigma, s, k])
