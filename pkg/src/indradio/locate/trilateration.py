"""Position estimation from anchor distances: damped Gauss-Newton least
squares on the range residuals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .twr import Anchor

MAX_ITERATIONS = 100
STEP_TOLERANCE_M = 1e-9


class DegenerateGeometryError(ValueError):
    """Anchors coplanar or coincident: the 3-D fix is ambiguous."""


@dataclass(frozen=True)
class PositionEstimate:
    position: np.ndarray
    residual_rms_m: float
    iterations: int
    converged: bool


def _geometry_condition(points: np.ndarray) -> float:
    centered = points - points.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    return float(s[0] / s[-1]) if s[-1] > 0 else float("inf")


def _linear_seed(anchors: np.ndarray, dists: np.ndarray) -> np.ndarray:
    """Closed-form seed from differencing the sphere equations against the
    first anchor; keeps Gauss-Newton out of mirror-image local minima."""
    a0 = anchors[0]
    d0 = dists[0]
    rows = anchors[1:] - a0
    rhs = 0.5 * (d0 ** 2 - dists[1:] ** 2
                 + np.sum(anchors[1:] ** 2, axis=1) - np.sum(a0 ** 2))
    rhs = rhs - rows @ a0
    seed, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    return a0 + seed


def trilaterate(measurements: Sequence[tuple[Anchor, float]],
                initial_guess: Optional[np.ndarray] = None) -> PositionEstimate:
    """Solve min_p sum_i (||p - a_i|| - d_i)^2 by Gauss-Newton with
    Levenberg damping. Starts from the anchor centroid unless told
    otherwise; converged means the step norm dropped under 1e-9 m.
    """
    if len(measurements) < 4:
        raise ValueError("need at least 4 anchor distances for a 3-D fix")
    anchors = np.array([a.xyz for a, _ in measurements], dtype=float)
    dists = np.array([d for _, d in measurements], dtype=float)
    cond = _geometry_condition(anchors)
    if cond > 1e8:
        raise DegenerateGeometryError(
            f"anchor geometry is (near-)coplanar: condition {cond:.3g}")

    if initial_guess is not None:
        p = np.asarray(initial_guess, dtype=float).copy()
    else:
        p = _linear_seed(anchors, dists)
        if not np.all(np.isfinite(p)):
            p = anchors.mean(axis=0)
    lam = 1e-3

    def residuals(pos):
        diff = pos - anchors
        rng_norm = np.linalg.norm(diff, axis=1)
        return rng_norm - dists, diff, rng_norm

    r, diff, rho = residuals(p)
    cost = float(r @ r)
    converged = False
    it = 0
    for it in range(1, MAX_ITERATIONS + 1):
        safe = np.maximum(rho, 1e-12)
        jac = diff / safe[:, None]
        g = jac.T @ r
        h = jac.T @ jac
        stepped = False
        for _ in range(20):
            try:
                delta = np.linalg.solve(h + lam * np.eye(3), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            r_new, diff_new, rho_new = residuals(p + delta)
            cost_new = float(r_new @ r_new)
            if cost_new <= cost:
                p = p + delta
                r, diff, rho, cost = r_new, diff_new, rho_new, cost_new
                lam = max(lam / 3.0, 1e-12)
                stepped = True
                break
            lam *= 10.0
        if not stepped:
            break
        if np.linalg.norm(delta) < STEP_TOLERANCE_M:
            converged = True
            break
    return PositionEstimate(position=p,
                            residual_rms_m=float(np.sqrt(cost / len(dists))),
                            iterations=it, converged=converged)
