"""Deterministic maximization of smooth functions on the unit sphere.

Strategy: evaluate on a Fibonacci lattice, then refine every lattice point by
cyclic coordinate ascent in (theta, phi) where each coordinate update is a
golden-section line search.  The objective callback must be vectorized:
f(theta, phi) -> values, all arrays of one shape.  Results are accepted only
when the best few starts agree, which guards against a basin being missed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
# Half-width of the coordinate line-search bracket, radians.
_BRACKET = 0.8


class OptimizerDidNotConverge(RuntimeError):
    """The best multi-start results disagree beyond the accepted spread."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the multi-start sphere maximizer.

    n_starts    Fibonacci lattice size (every start is refined).
    tol         accepted spread between the best three refined starts.
    step_tol    ascent stops once neither coordinate moves more than this.
    max_sweeps  hard cap on coordinate-ascent sweeps.
    """

    n_starts: int = 512
    tol: float = 1e-9
    step_tol: float = 1e-10
    max_sweeps: int = 60

    def __post_init__(self):
        if self.n_starts < 4:
            raise ValueError("n_starts must be at least 4")
        if self.tol <= 0 or self.step_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")


def unit_vectors(theta, phi):
    """Stack (sin t cos p, sin t sin p, cos t) along the last axis."""
    theta = np.asarray(theta, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def fibonacci_lattice(n: int):
    """Angles (theta, phi) of the n-point Fibonacci sphere lattice."""
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.mod(i * (np.pi * (3.0 - np.sqrt(5.0))), 2.0 * np.pi)
    return theta, phi


def _golden_section(f_coord, center, half_width, step_tol):
    """Vectorized golden-section maximization on [center-h, center+h].

    f_coord maps a coordinate array to objective values.  Returns the bracket
    midpoints after narrowing every bracket below step_tol.
    """
    lo = center - half_width
    hi = center + half_width
    width = 2.0 * half_width
    n_iter = max(1, int(np.ceil(np.log(step_tol / width) / np.log(_INVPHI))))
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = f_coord(x1)
    f2 = f_coord(x2)
    for _ in range(n_iter):
        right = f2 >= f1  # keep the right sub-bracket where x2 wins
        lo = np.where(right, x1, lo)
        hi = np.where(right, hi, x2)
        x_keep = np.where(right, x2, x1)
        f_keep = np.where(right, f2, f1)
        x_new = np.where(right, lo + _INVPHI * (hi - lo), hi - _INVPHI * (hi - lo))
        f_new = f_coord(x_new)
        x1 = np.where(right, x_keep, x_new)
        f1 = np.where(right, f_keep, f_new)
        x2 = np.where(right, x_new, x_keep)
        f2 = np.where(right, f_new, f_keep)
    return (lo + hi) / 2.0


def maximize_on_sphere(objective, config: OptimizerConfig = OptimizerConfig()):
    """Maximize objective(theta, phi) over the unit sphere.

    Parameters
    ----------
    objective : callable
        Vectorized map from angle arrays to values of the same shape.
    config : OptimizerConfig

    Returns
    -------
    (theta, phi, value) of the best refined start.

    Raises
    ------
    OptimizerDidNotConverge
        If the best three refined starts spread more than config.tol.
    """
    theta, phi = fibonacci_lattice(config.n_starts)
    value = objective(theta, phi)

    for _ in range(config.max_sweeps):
        th_cand = _golden_section(
            lambda t: objective(t, phi), theta, _BRACKET, config.step_tol
        )
        v_cand = objective(th_cand, phi)
        take = v_cand > value
        moved_th = np.where(take, np.abs(th_cand - theta), 0.0)
        theta = np.where(take, th_cand, theta)
        value = np.where(take, v_cand, value)

        ph_cand = _golden_section(
            lambda p: objective(theta, p), phi, _BRACKET, config.step_tol
        )
        v_cand = objective(theta, ph_cand)
        take = v_cand > value
        moved_ph = np.where(take, np.abs(ph_cand - phi), 0.0)
        phi = np.where(take, ph_cand, phi)
        value = np.where(take, v_cand, value)

        if moved_th.max() < config.step_tol and moved_ph.max() < config.step_tol:
            break

    order = np.argsort(value)
    best = int(order[-1])
    spread = float(value[order[-1]] - value[order[-3]])
    if spread > config.tol:
        raise OptimizerDidNotConverge(
            f"best starts disagree by {spread:.3e} > {config.tol:.1e}"
        )
    return float(theta[best]), float(phi[best]), float(value[best])
