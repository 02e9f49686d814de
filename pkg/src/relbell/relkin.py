"""Lorentz kinematics for x-axis boosts and the induced spin rotations.

Everything is in units of the particle mass (m = 1). A boost with rapidity
alpha acts on momenta as the 2x2 hyperbolic rotation of (q0, qx); the spin
of a momentum eigenstate picks up the momentum-dependent SU(2) rotation
implemented by wigner_matrix. Detector rapidities follow the convention
rapidity = -atanh(velocity), so a detector moving toward +x has negative
rapidity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .wavepacket import PacketSpec, gaussian_amplitude

_ONSHELL_RTOL = 1e-12


@dataclass(frozen=True)
class Rapidity:
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("rapidity must be finite")

    def velocity(self) -> float:
        return -math.tanh(self.alpha)


AlphaLike = Union[Rapidity, float, int]


def _alpha_value(alpha: AlphaLike) -> float:
    if isinstance(alpha, Rapidity):
        return alpha.alpha
    return float(alpha)


def rapidity_from_velocity(v: float) -> Rapidity:
    """Rapidity of a detector moving with velocity v along x, v in (-1, 1)."""
    if not abs(v) < 1.0:
        raise ValueError(f"detector velocity must satisfy |v| < 1, got {v}")
    return Rapidity(-math.atanh(v))


@dataclass(frozen=True)
class FourMomentum:
    """On-shell momentum (energy, 3-momentum) in units of m."""

    q0: float
    qx: float
    qy: float
    qz: float

    def __post_init__(self):
        e = math.sqrt(1.0 + self.qx**2 + self.qy**2 + self.qz**2)
        if abs(self.q0 - e) > _ONSHELL_RTOL * e:
            raise ValueError(f"momentum is off shell: q0={self.q0!r}, expected {e!r}")

    @classmethod
    def from_spatial(cls, qx: float, qy: float, qz: float) -> "FourMomentum":
        return cls(math.sqrt(1.0 + qx * qx + qy * qy + qz * qz), qx, qy, qz)

    @classmethod
    def rest(cls) -> "FourMomentum":
        return cls(1.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class LorentzBoost:
    """Pure boost along x with the given rapidity."""

    alpha: float

    def inverse(self) -> "LorentzBoost":
        return LorentzBoost(-self.alpha)


def apply_boost(b: LorentzBoost, p: FourMomentum) -> FourMomentum:
    ca, sa = math.cosh(b.alpha), math.sinh(b.alpha)
    return FourMomentum(
        q0=p.q0 * ca + p.qx * sa,
        qx=p.qx * ca + p.q0 * sa,
        qy=p.qy,
        qz=p.qz,
    )


@dataclass(frozen=True)
class WignerMatrix:
    """2x2 unitary spin rotation induced by a boost on momentum p."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("Wigner matrix must be 2x2")
        object.__setattr__(self, "entries", m)


def wigner_matrix(alpha_d: AlphaLike, p: FourMomentum) -> WignerMatrix:
    """Spin rotation for a boost of rapidity alpha_d acting on momentum p.

    The numerator is [(p0+1) cosh(a/2) + px sinh(a/2)] on the identity plus
    sinh(a/2) times i(py sz - pz sy) in Pauli terms; the normalization
    sqrt((p0+1)((boosted p)0+1)) makes it exactly unitary. Identity at
    alpha = 0 and for the rest momentum.
    """
    a = _alpha_value(alpha_d)
    if a == 0.0:
        return WignerMatrix(np.eye(2, dtype=complex))
    c = math.cosh(0.5 * a)
    s = math.sinh(0.5 * a)
    bp0 = p.q0 * math.cosh(a) + p.qx * math.sinh(a)
    den = math.sqrt((p.q0 + 1.0) * (bp0 + 1.0))
    u = (p.q0 + 1.0) * c + p.qx * s
    m = np.array(
        [
            [(u + 1j * s * p.qy) / den, -s * p.qz / den],
            [s * p.qz / den, (u - 1j * s * p.qy) / den],
        ],
        dtype=complex,
    )
    return WignerMatrix(m)


@dataclass(frozen=True)
class SpinorCoefficients:
    """Pair of spin amplitudes for one particle seen by a moving detector.

    Iterates as (first, second) so callers can unpack the pair directly;
    the kinematic normalization K and the half-angle factors ride along.
    """

    first: complex
    second: complex
    k_factor: float
    c_half: float
    s_half: float

    def __iter__(self):
        return iter((self.first, self.second))


def spinor_coefficients(
    alpha_d: AlphaLike,
    p: FourMomentum,
    packet: PacketSpec,
    side: str,
) -> SpinorCoefficients:
    """Spin amplitudes (a1, a2) for side A or (b1, b2) for side B.

    Evaluated at q = (inverse boost) p: the detector sees packet amplitude
    f(q) redistributed over the two spin components by the Wigner rotation.
    At alpha_d = 0 this collapses to (f(p), 0) on side A and (0, f(p)) on B.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    a = _alpha_value(alpha_d)
    q = apply_boost(LorentzBoost(-a), p)
    c = math.cosh(0.5 * a)
    s = math.sinh(0.5 * a)
    kfac = math.sqrt(q.q0 / p.q0) / math.sqrt((q.q0 + 1.0) * (p.q0 + 1.0))
    f = gaussian_amplitude(q, packet)
    base = kfac * f
    if side == "A":
        first = base * (c * (q.q0 + 1.0) + s * (q.qx + 1j * q.qy))
        second = complex(base * s * q.qz)
    else:
        first = complex(-base * s * q.qz)
        second = base * (c * (q.q0 + 1.0) + s * (q.qx - 1j * q.qy))
    return SpinorCoefficients(
        first=first,
        second=second,
        k_factor=kfac,
        c_half=c,
        s_half=s,
    )
