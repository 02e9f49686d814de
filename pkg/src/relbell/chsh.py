"""Two-qubit spin state after the momentum trace, and CHSH machinery.

The decoherence factors V and W enter only through the multiplicative
degradation (1-2V)(1-2W) of the singlet correlations; every operation here
takes them as plain numbers, decoupled from how they were computed.

Measurement directions live in the plane orthogonal to the boost axis.
Angles are measured from a fixed reference axis in that plane (taken along
y, rotating toward z); only angle differences are observable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .decoherence import QuadratureConfig, decoherence_factor, decoherence_factor_ultra
from .relkin import AlphaLike, _alpha_value
from .wavepacket import PacketSpec

LOSS_FACTOR = 0.5 * (1.0 - math.sqrt(0.8))
"""Factor value at which the constrained CHSH maximum drops to 2."""

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


class ThresholdNotReachableError(RuntimeError):
    """Raised when the decoherence factor never reaches the loss level."""


@dataclass(frozen=True)
class Direction:
    """In-plane measurement direction, as angle from the reference axis."""

    theta: float

    def operator(self) -> np.ndarray:
        return math.cos(self.theta) * _SY + math.sin(self.theta) * _SZ


@dataclass(frozen=True)
class ChshSetting:
    a1: Direction
    a2: Direction
    b1: Direction
    b2: Direction


@dataclass(frozen=True)
class ThresholdResult:
    parameter: float
    bracket: Tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class ReducedSpinState:
    matrix: np.ndarray
    v_factor: float
    w_factor: float


def reduced_density_matrix(V: float, W: float) -> ReducedSpinState:
    """Spin state of the pair after tracing out the momenta.

    Built from the four 2x2 blocks per side; at V = W = 0 it collapses to
    the singlet projector. Values above 1/2 are accepted but flagged, since
    there the correlation factor changes sign.
    """
    for name, val in (("V", V), ("W", W)):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if val > 0.5:
            warnings.warn(
                f"{name} = {val} exceeds 1/2; the correlation factor flips sign",
                stacklevel=2,
            )
    r1 = np.array([[1 - V, 0.0], [0.0, V]])
    r2 = np.array([[0.0, 1 - 3 * V], [-V, 0.0]])
    r3 = np.array([[0.0, -V], [1 - 3 * V, 0.0]])
    r4 = np.array([[V, 0.0], [0.0, 1 - V]])
    s1 = np.array([[W, 0.0], [0.0, 1 - W]])
    s2 = np.array([[0.0, -W], [1 - 3 * W, 0.0]])
    s3 = np.array([[0.0, 1 - 3 * W], [-W, 0.0]])
    s4 = np.array([[1 - W, 0.0], [0.0, W]])
    tau = 0.5 * (
        np.kron(r1, s1) - np.kron(r2, s2) - np.kron(r3, s3) + np.kron(r4, s4)
    )
    return ReducedSpinState(matrix=tau.astype(complex), v_factor=V, w_factor=W)


def pair_expectation(V: float, W: float, u: Direction, v: Direction) -> float:
    """Joint spin expectation along two in-plane directions."""
    return -(1.0 - 2.0 * V) * (1.0 - 2.0 * W) * math.cos(u.theta - v.theta)


def chsh_value(V: float, W: float, s: ChshSetting) -> float:
    """CHSH combination for four in-plane directions, factorized form."""
    combo = (
        math.cos(s.a2.theta - s.b1.theta)
        + math.cos(s.a2.theta - s.b2.theta)
        + math.cos(s.a1.theta - s.b1.theta)
        - math.cos(s.a1.theta - s.b2.theta)
    )
    return (1.0 - 2.0 * V) * (1.0 - 2.0 * W) * abs(combo)


def chsh_constrained(V: float, W: float, phi: float) -> float:
    """One-parameter CHSH family with a2 = b1 and common separation phi.

    Maximum over phi sits at pi/3 with value 2.5 (1-2V)(1-2W); the bound 2
    is lost exactly when (1-2V)(1-2W) drops below 4/5.
    """
    return (
        (1.0 - 2.0 * V)
        * (1.0 - 2.0 * W)
        * abs(1.0 + 2.0 * math.cos(phi) - math.cos(2.0 * phi))
    )


def chsh_smallwidth(alpha: AlphaLike, w: float, phi: float) -> float:
    """Narrow-packet closed form of the constrained CHSH value."""
    a = _alpha_value(alpha)
    f0 = (1.0 - (w * w / 4.0) * math.tanh(0.5 * abs(a)) ** 2) ** 2
    return f0 * abs(1.0 + 2.0 * math.cos(phi) - math.cos(2.0 * phi))


def chsh_bound_check(value: float) -> bool:
    """True iff the value satisfies the local-hidden-variable bound."""
    return abs(value) <= 2.0


def sample_outcomes(
    state: ReducedSpinState,
    a: Direction,
    b: Direction,
    n: int,
    seed: int,
) -> Tuple[float, float]:
    """Draw n joint spin outcomes and return the estimated correlation.

    Outcomes are +-1/2 per side; the estimator is 4/n times the sum of
    outcome products, so it lives in [-1, 1]. Deterministic for a given
    seed via a counter-based generator.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    eye = np.eye(2)
    proj_a = {0.5: 0.5 * (eye + a.operator()), -0.5: 0.5 * (eye - a.operator())}
    proj_b = {0.5: 0.5 * (eye + b.operator()), -0.5: 0.5 * (eye - b.operator())}
    labels = [(0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5)]
    probs = np.array(
        [
            float(np.real(np.trace(state.matrix @ np.kron(proj_a[sa], proj_b[sb]))))
            for sa, sb in labels
        ]
    )
    if abs(probs.sum() - 1.0) > 1e-10:
        raise RuntimeError(
            f"outcome probabilities sum to {probs.sum()!r}, state is inconsistent"
        )
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    gen = np.random.Generator(np.random.Philox(key=seed))
    counts = gen.multinomial(n, probs)
    total = sum(
        c * 4.0 * sa * sb for c, (sa, sb) in zip(counts, labels)
    )
    e_hat = total / n
    std_error = math.sqrt(max(1.0 - e_hat * e_hat, 0.0) / n)
    return (e_hat, std_error)


def _bisect(g, lo: float, hi: float, tol: float) -> Tuple[float, float, int]:
    glo = g(lo)
    ghi = g(hi)
    if glo * ghi > 0:
        raise ThresholdNotReachableError(
            f"no sign change on [{lo}, {hi}]: g(lo)={glo:.3e}, g(hi)={ghi:.3e}"
        )
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gmid = g(mid)
        if glo * gmid <= 0:
            hi = mid
        else:
            lo, glo = mid, gmid
        iterations += 1
    return lo, hi, iterations


def threshold_rapidity(
    packet: PacketSpec,
    tol: float = 1e-3,
    cfg: Optional[QuadratureConfig] = None,
) -> ThresholdResult:
    """Rapidity at which the maximal constrained CHSH value drops to 2.

    Root of V(alpha) = (1 - sqrt(4/5))/2 on [0, 30] by bisection; V is
    monotone in alpha over the regimes of interest, making bisection
    unconditionally safe. Raises ThresholdNotReachableError when the packet
    is too narrow for the factor ever to reach the loss level.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    def g(alpha: float) -> float:
        return decoherence_factor(alpha, packet, cfg).value - LOSS_FACTOR

    lo, hi, iterations = _bisect(g, 0.0, 30.0, tol)
    return ThresholdResult(0.5 * (lo + hi), (lo, hi), iterations)


def threshold_width(
    k: float,
    tol: float = 1e-3,
    cfg: Optional[QuadratureConfig] = None,
) -> ThresholdResult:
    """Packet width at which violation is lost in the saturated limit.

    Root of V_inf(w) = (1 - sqrt(4/5))/2 on [0.01, 10] by bisection.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    def g(w: float) -> float:
        return decoherence_factor_ultra(PacketSpec(k, w), cfg).value - LOSS_FACTOR

    lo, hi, iterations = _bisect(g, 0.01, 10.0, tol)
    return ThresholdResult(0.5 * (lo + hi), (lo, hi), iterations)
