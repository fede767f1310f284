"""Random forest built from scratch: bootstrap-sampled trees with
axis-aligned Gini splits and per-split feature subsampling, majority-vote
classification with ties resolved toward line-of-sight.

Per-tree random streams are spawned from the master seed before any
training happens, so the ensemble is bit-reproducible no matter how the
trees would be scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .features import LOS


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: int = 8
    min_leaf: int = 2
    bootstrap: bool = True
    feature_subsampling: bool = True     # sqrt(d) candidates per split

    def __post_init__(self):
        if self.n_trees < 1 or self.max_depth < 1 or self.min_leaf < 1:
            raise ValueError("forest hyperparameters must be positive")


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: Optional["_Node"] = None
    right: Optional["_Node"] = None
    label: int = LOS


def _best_split(x: np.ndarray, y: np.ndarray, features: np.ndarray,
                min_leaf: int) -> Optional[tuple[float, int, float]]:
    """Scan every candidate threshold of the candidate features; returns
    (weighted gini, feature, threshold) of the best admissible split."""
    n = y.size
    total_pos = int(y.sum())
    best = None
    for f in features:
        order = np.argsort(x[:, f], kind="mergesort")
        xs = x[order, f]
        ys = y[order]
        cum_pos = np.cumsum(ys)
        left_n = np.arange(1, n)
        left_pos = cum_pos[:-1]
        valid = xs[1:] > xs[:-1]
        valid &= (left_n >= min_leaf) & ((n - left_n) >= min_leaf)
        if not valid.any():
            continue
        right_n = n - left_n
        right_pos = total_pos - left_pos
        with np.errstate(invalid="ignore", divide="ignore"):
            p_l = left_pos / left_n
            p_r = right_pos / right_n
            gini = (left_n * 2 * p_l * (1 - p_l)
                    + right_n * 2 * p_r * (1 - p_r)) / n
        gini = np.where(valid, gini, np.inf)
        i = int(np.argmin(gini))
        if best is None or gini[i] < best[0]:
            best = (float(gini[i]), int(f), float(0.5 * (xs[i] + xs[i + 1])))
    return best


class DecisionTree:
    """Single axis-aligned Gini tree (the degenerate one-tree forest)."""

    def __init__(self, params: ForestParams, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        self.root: Optional[_Node] = None

    def fit(self, x: np.ndarray, y: np.ndarray) -> "DecisionTree":
        self.root = self._grow(x, y, depth=0)
        return self

    def _grow(self, x: np.ndarray, y: np.ndarray, depth: int) -> _Node:
        n, d = x.shape
        pos = int(y.sum())
        # majority label; exact tie resolves to line-of-sight
        label = 1 if pos * 2 > n else LOS
        node = _Node(label=label)
        if depth >= self.params.max_depth or n < 2 * self.params.min_leaf \
                or pos == 0 or pos == n:
            return node
        if self.params.feature_subsampling:
            mtry = math.ceil(math.sqrt(d))
            feats = np.sort(self.rng.choice(d, size=mtry, replace=False))
        else:
            feats = np.arange(d)
        best = _best_split(x, y, feats, self.params.min_leaf)
        if best is None:
            return node
        _, f, thr = best
        mask = x[:, f] < thr
        node.feature = f
        node.threshold = thr
        node.left = self._grow(x[mask], y[mask], depth + 1)
        node.right = self._grow(x[~mask], y[~mask], depth + 1)
        return node

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.empty(x.shape[0], dtype=np.int64)
        self._route(self.root, x, np.arange(x.shape[0]), out)
        return out

    def _route(self, node: _Node, x: np.ndarray, idx: np.ndarray,
               out: np.ndarray) -> None:
        if node.left is None:
            out[idx] = node.label
            return
        mask = x[idx, node.feature] < node.threshold
        self._route(node.left, x, idx[mask], out)
        self._route(node.right, x, idx[~mask], out)

    def structure(self) -> list[tuple]:
        """Flat (feature, threshold, label) preorder dump, for determinism
        checks."""
        out: list[tuple] = []

        def walk(node):
            if node is None:
                return
            out.append((node.feature, round(node.threshold, 12), node.label))
            walk(node.left)
            walk(node.right)

        walk(self.root)
        return out


class RandomForest:
    def __init__(self, params: ForestParams = ForestParams(), seed: int = 0):
        self.params = params
        self.seed = seed
        self.trees: list[DecisionTree] = []

    def fit(self, x: np.ndarray, y: np.ndarray) -> "RandomForest":
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=np.int64)
        if x.ndim != 2 or x.shape[0] != y.size:
            raise ValueError("x must be (n, d) with one label per row")
        classes = np.unique(y)
        if classes.size < 2:
            raise ValueError("training data must contain both classes")
        n = y.size
        streams = np.random.SeedSequence(self.seed).spawn(self.params.n_trees)
        self.trees = []
        for ss in streams:
            rng = np.random.Generator(np.random.PCG64(ss))
            if self.params.bootstrap:
                idx = rng.integers(0, n, size=n)
            else:
                idx = np.arange(n)
            tree = DecisionTree(self.params, rng)
            tree.fit(x[idx], y[idx])
            self.trees.append(tree)
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        if not self.trees:
            raise RuntimeError("forest is not trained")
        x = np.atleast_2d(np.asarray(x, dtype=float))
        votes = np.zeros(x.shape[0], dtype=np.int64)
        for tree in self.trees:
            votes += tree.predict(x)
        # vote for class 1 must exceed half; exact tie goes to LOS
        return (votes * 2 > len(self.trees)).astype(np.int64)
