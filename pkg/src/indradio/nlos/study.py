"""Feature-subset identification study: train one forest per subset on a
stratified split and report per-class and overall accuracy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import LOS, NLOS, feature_matrix
from .forest import ForestParams, RandomForest

# The four studied subsets, keyed by the number of features involved.
FEATURE_INDEX = {"mu": 0, "sigma": 1, "skewness": 2, "kurtosis": 3}
SUBSETS: dict[str, tuple[str, ...]] = {
    "s1": ("sigma",),
    "s2": ("skewness", "kurtosis"),
    "s3": ("sigma", "skewness", "kurtosis"),
    "s4": ("mu", "sigma", "skewness", "kurtosis"),
}


@dataclass(frozen=True)
class SubsetAccuracy:
    subset: str
    los_acc: float
    nlos_acc: float
    overall: float


def subset_columns(subset: str) -> list[int]:
    try:
        names = SUBSETS[subset]
    except KeyError:
        raise ValueError(f"unknown feature subset {subset!r}") from None
    return [FEATURE_INDEX[n] for n in names]


def stratified_split(labels: np.ndarray, train_fraction: float,
                     rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    train_idx, test_idx = [], []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        idx = rng.permutation(idx)
        cut = int(round(train_fraction * idx.size))
        train_idx.append(idx[:cut])
        test_idx.append(idx[cut:])
    return np.concatenate(train_idx), np.concatenate(test_idx)


def evaluate_subsets(cirs: np.ndarray, labels: np.ndarray,
                     subsets: list[str] | None = None,
                     train_fraction: float = 0.7,
                     params: ForestParams = ForestParams(),
                     seed: int = 0) -> list[SubsetAccuracy]:
    """One forest per subset on a common stratified split."""
    subsets = list(SUBSETS) if subsets is None else subsets
    feats = feature_matrix(cirs)
    labels = np.asarray(labels, dtype=np.int64)
    rng = np.random.default_rng(seed)
    train, test = stratified_split(labels, train_fraction, rng)
    out = []
    for name in subsets:
        cols = subset_columns(name)
        forest = RandomForest(params, seed=seed).fit(feats[np.ix_(train, cols)],
                                                     labels[train])
        pred = forest.predict(feats[np.ix_(test, cols)])
        truth = labels[test]
        los_mask = truth == LOS
        nlos_mask = truth == NLOS
        out.append(SubsetAccuracy(
            subset=name,
            los_acc=float(np.mean(pred[los_mask] == LOS)),
            nlos_acc=float(np.mean(pred[nlos_mask] == NLOS)),
            overall=float(np.mean(pred == truth)),
        ))
    return out
