"""Decoherence factors from tracing out momenta of boosted packets.

The factor V (and its mirror W on the other side) is the packet-averaged
spin-flip weight induced by the boost to the detector frame. Positive
`alpha` with a positive packet center reproduces the receding-detectors
configuration; the signed form, where the boost sign enters relative to
the packet direction, is what the integrand implements.

Routes into the same number, kept deliberately distinct:
  decoherence_factor            adaptive 2D quadrature, cylindrical form
  mc_decoherence_factor         Monte Carlo, Cartesian form
  decoherence_factor_ultra      closed-form large-rapidity limit
  decoherence_factor_smallwidth leading order in the squared width
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .quadrature import QuadratureConvergenceError, integrate_2d
from .relkin import AlphaLike, _alpha_value
from .wavepacket import PacketSpec

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and domain controls for the quadrature evaluations.

    The integration rectangle is the packet center plus or minus
    truncation_sigmas widths (radial part from zero). Above
    ultra_crossover the large-rapidity limit is used directly, since the
    hyperbolic factors would otherwise lose precision and eventually
    overflow.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    truncation_sigmas: float = 10.0
    max_subdivisions: int = 1_000_000
    ultra_crossover: float = 25.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if not self.truncation_sigmas >= 6:
            raise ValueError("truncation_sigmas must be at least 6")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


@dataclass(frozen=True)
class McConfig:
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 1000:
            raise ValueError("need at least 1000 samples")


@dataclass(frozen=True)
class DecoherenceFactor:
    """Nonnegative scalar degrading spin correlations, with error estimate."""

    value: float
    error: float = 0.0


def decoherence_integrand(qx, qr, k: float, w: float, alpha: AlphaLike):
    """Cylindrical-coordinate integrand of the decoherence integral.

    qr is the radial momentum transverse to the boost axis; the angular
    integral has already been folded into the qr^3 factor. Vectorized over
    qx and qr.
    """
    a = _alpha_value(alpha)
    qx = np.asarray(qx, dtype=float)
    qr = np.asarray(qr, dtype=float)
    if np.any(qr < 0):
        raise ValueError("radial momentum must be nonnegative")
    q0 = np.sqrt(qx * qx + qr * qr + 1.0)
    p0 = q0 * math.cosh(a) - qx * math.sinh(a)
    gauss = np.exp(-((qx - k) ** 2 + qr * qr) / (w * w))
    out = qr**3 * gauss / ((q0 + 1.0) * (p0 + 1.0))
    return out if out.shape else float(out)


def _correction_scale(packet: PacketSpec) -> float:
    # conservative size of the leading exp(-|alpha|) finite-rapidity
    # correction over the packet bulk, used to widen the error estimate
    # when delegating to the large-rapidity limit
    return 4.0 * (abs(packet.k) + packet.w) ** 2 / (1.0 + packet.w**2) + 4.0


def decoherence_factor(
    alpha: AlphaLike,
    packet: PacketSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> DecoherenceFactor:
    """Decoherence factor by adaptive quadrature over the truncated domain.

    Zero exactly at alpha = 0. Beyond cfg.ultra_crossover the saturated
    limit is returned with the error estimate widened by a bound on the
    remaining exp(-|alpha|) correction.
    """
    cfg = cfg or QuadratureConfig()
    a = _alpha_value(alpha)
    if a == 0.0:
        return DecoherenceFactor(0.0, 0.0)
    if abs(a) > cfg.ultra_crossover:
        sat = decoherence_factor_ultra(packet, cfg)
        corr = sat.value * math.exp(-abs(a)) * _correction_scale(packet)
        return DecoherenceFactor(sat.value, sat.error + corr)

    k, w = packet.k, packet.w
    t = cfg.truncation_sigmas * w
    pref = math.sinh(0.5 * abs(a)) ** 2 / (_SQRT_PI * w**3)
    try:
        # tolerances apply to the returned factor, not the raw integral
        res = integrate_2d(
            lambda qx, qr: decoherence_integrand(qx, qr, k, w, a),
            k - t,
            k + t,
            0.0,
            t,
            rel_tol=cfg.rel_tol,
            abs_tol=cfg.abs_tol / pref,
            max_subdivisions=cfg.max_subdivisions,
        )
    except QuadratureConvergenceError as exc:
        raise QuadratureConvergenceError(
            pref * exc.best_estimate, pref * exc.residual, exc.panels
        ) from None
    return DecoherenceFactor(pref * res.value, pref * res.error)


def decoherence_factor_ultra(
    packet: PacketSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> DecoherenceFactor:
    """Saturated decoherence factor in the infinite-rapidity limit.

    The sinh^2(|a|/2) growth of the prefactor cancels against the boosted
    energy in the denominator, leaving (q0 - qx) in place of the
    alpha-dependent factor. For qx > 0 that difference is computed as
    (1 + qr^2)/(q0 + qx) to avoid cancellation at large packet centers.
    """
    cfg = cfg or QuadratureConfig()
    k, w = packet.k, packet.w
    t = cfg.truncation_sigmas * w
    pref = 1.0 / (2.0 * _SQRT_PI * w**3)

    def integrand(qx, qr):
        q0 = np.sqrt(qx * qx + qr * qr + 1.0)
        diff = np.where(qx > 0, (1.0 + qr * qr) / (q0 + qx), q0 - qx)
        gauss = np.exp(-((qx - k) ** 2 + qr * qr) / (w * w))
        return qr**3 * gauss / ((q0 + 1.0) * diff)

    try:
        res = integrate_2d(
            integrand,
            k - t,
            k + t,
            0.0,
            t,
            rel_tol=cfg.rel_tol,
            abs_tol=cfg.abs_tol / pref,
            max_subdivisions=cfg.max_subdivisions,
        )
    except QuadratureConvergenceError as exc:
        raise QuadratureConvergenceError(
            pref * exc.best_estimate, pref * exc.residual, exc.panels
        ) from None
    return DecoherenceFactor(pref * res.value, pref * res.error)


def decoherence_factor_smallwidth(alpha: AlphaLike, w: float) -> DecoherenceFactor:
    """Leading-order factor (w^2/8) tanh^2(|alpha|/2) for narrow packets.

    Valid for w much below 1 with the packet near rest; no guard is
    applied, the regime is the caller's responsibility.
    """
    a = _alpha_value(alpha)
    return DecoherenceFactor(w * w / 8.0 * math.tanh(0.5 * abs(a)) ** 2, 0.0)


_MC_BATCH = 1_000_000


def mc_decoherence_factor(
    alpha: AlphaLike,
    packet: PacketSpec,
    mc: McConfig,
) -> Tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of the decoherence factor.

    Importance-samples the squared packet amplitude, which is exactly the
    3D Gaussian factor of the Cartesian integrand, leaving the bounded
    ratio qz^2 / ((q0+1)(p0+1)) as the sampled quantity. Counter-based
    Philox streams jumped per fixed-size batch keep the result bit-stable
    for a given seed regardless of batching or parallel evaluation order.
    """
    a = _alpha_value(alpha)
    if a == 0.0:
        return (0.0, 0.0)
    k, w = packet.k, packet.w
    ca, sa = math.cosh(a), math.sinh(a)
    scale = w / math.sqrt(2.0)
    root = np.random.Philox(key=mc.seed)

    n_total = mc.samples
    n_batches = (n_total + _MC_BATCH - 1) // _MC_BATCH
    acc_sum = 0.0
    acc_sq = 0.0
    for i in range(n_batches):
        m = min(_MC_BATCH, n_total - i * _MC_BATCH)
        gen = np.random.Generator(root.jumped(i))
        q = gen.standard_normal((m, 3)) * scale
        q[:, 0] += k
        q0 = np.sqrt(1.0 + np.einsum("ij,ij->i", q, q))
        p0 = q0 * ca - q[:, 0] * sa
        g = q[:, 2] ** 2 / ((q0 + 1.0) * (p0 + 1.0))
        acc_sum += float(np.sum(g))
        acc_sq += float(np.sum(g * g))

    mean = acc_sum / n_total
    # standard error of the mean: population variance over (n - 1)
    var = max(acc_sq / n_total - mean * mean, 0.0) / max(n_total - 1, 1)
    pref = math.sinh(0.5 * abs(a)) ** 2
    return (pref * mean, pref * math.sqrt(var))
