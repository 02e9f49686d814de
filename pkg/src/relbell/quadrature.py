"""Adaptive 2D quadrature on a rectangle, tensor Gauss-Kronrod 7/15.

The integrand is evaluated on a 15x15 tensor grid per panel. Because the
7-point Gauss nodes are a subset of the 15-point Kronrod nodes, a single
grid yields the full estimate plus two embedded lower-order estimates
(Gauss along x, Gauss along y) whose deviations serve as per-axis error
indicators. The panel with the largest error is bisected along its worse
axis until the summed error meets the tolerance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable

import numpy as np

# 15-point Kronrod nodes (positive half) and weights, with the embedded
# 7-point Gauss weights. Values are the standard double precision ones.
_XGK_HALF = np.array([
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
])
_WGK_HALF = np.array([
    0.022935322010529224,
    0.06309209262997855,
    0.10479001032225018,
    0.14065325971552592,
    0.1690047266392679,
    0.19035057806478542,
    0.20443294007529889,
    0.20948214108472782,
])
_WG_HALF = np.array([
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
])

# full symmetric arrays on [-1, 1], ascending
_NODES = np.concatenate([-_XGK_HALF[:-1], [0.0], _XGK_HALF[:-1][::-1]])
_WK = np.concatenate([_WGK_HALF[:-1], [_WGK_HALF[-1]], _WGK_HALF[:-1][::-1]])
# Gauss nodes sit at the odd Kronrod indices 1,3,...,13
_WG = np.zeros(15)
_WG[1:14:2] = np.concatenate([_WG_HALF[:-1], [_WG_HALF[-1]], _WG_HALF[:-1][::-1]])


class QuadratureConvergenceError(RuntimeError):
    """Raised when the panel budget is exhausted before the tolerance is met.

    Carries the best available estimate so callers can decide whether the
    residual is acceptable for their purpose.
    """

    def __init__(self, best_estimate: float, residual: float, panels: int):
        self.best_estimate = best_estimate
        self.residual = residual
        self.panels = panels
        super().__init__(
            f"quadrature did not converge after {panels} panels: "
            f"estimate {best_estimate!r}, residual {residual:.3e}"
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    panels: int
    evaluations: int


def _panel_estimates(f, xa, xb, ya, yb):
    """Kronrod 15x15 value and the two per-axis Gauss deviations."""
    hx = 0.5 * (xb - xa)
    hy = 0.5 * (yb - ya)
    x = xa + hx * (_NODES + 1.0)
    y = ya + hy * (_NODES + 1.0)
    fx = np.asarray(f(x[:, None], y[None, :]), dtype=float)
    try:
        fx = np.broadcast_to(fx, (15, 15))
    except ValueError:
        raise ValueError("integrand must broadcast to the evaluation grid") from None
    jac = hx * hy
    i15 = jac * (_WK @ fx @ _WK)
    ig_x = jac * (_WG @ fx @ _WK)   # Gauss along x, Kronrod along y
    ig_y = jac * (_WK @ fx @ _WG)   # Kronrod along x, Gauss along y
    return i15, abs(i15 - ig_x), abs(i15 - ig_y)


def integrate_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xa: float,
    xb: float,
    ya: float,
    yb: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    max_subdivisions: int = 1_000_000,
) -> QuadratureResult:
    """Integrate f over [xa, xb] x [ya, yb] to the requested tolerance.

    f must accept broadcasting arrays (shape (15,1) and (1,15)) and return
    the integrand on the tensor grid. Convergence means the summed panel
    error is at most max(abs_tol, rel_tol * |integral|).
    """
    if not (xb > xa and yb > ya):
        raise ValueError("integration rectangle must have positive extent")
    if rel_tol <= 0 or abs_tol < 0:
        raise ValueError("rel_tol must be positive and abs_tol nonnegative")

    i15, ex, ey = _panel_estimates(f, xa, xb, ya, yb)
    total = i15
    total_err = ex + ey
    seq = 0
    # heap entries: (-panel_error, tiebreak, bounds, value, ex, ey)
    heap = [(-(ex + ey), seq, (xa, xb, ya, yb), i15, ex, ey)]
    panels = 1
    splits = 0

    while total_err > max(abs_tol, rel_tol * abs(total)):
        if splits >= max_subdivisions:
            raise QuadratureConvergenceError(total, total_err, panels)
        neg_err, _, (a, b, c, d), val, pex, pey = heapq.heappop(heap)
        total -= val
        total_err += neg_err  # neg_err is -(pex + pey)
        if pex >= pey:
            mid = 0.5 * (a + b)
            children = [(a, mid, c, d), (mid, b, c, d)]
        else:
            mid = 0.5 * (c + d)
            children = [(a, b, c, mid), (a, b, mid, d)]
        for bounds in children:
            ci, cex, cey = _panel_estimates(f, *bounds)
            total += ci
            total_err += cex + cey
            seq += 1
            heapq.heappush(heap, (-(cex + cey), seq, bounds, ci, cex, cey))
        panels += 1
        splits += 1

    return QuadratureResult(
        value=total,
        error=total_err,
        panels=panels,
        evaluations=225 * (2 * splits + 1),
    )
