"""Gaussian momentum-space packets and the two-particle singlet amplitude.

All momenta are dimensionless (units of the particle mass). Amplitudes are
evaluated on demand; no momentum grid is ever stored, since every downstream
quantity is an integral whose nodes belong to the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .relkin import FourMomentum


@dataclass(frozen=True)
class PacketSpec:
    """Packet parameters: signed mean momentum k along x, width w > 0.

    Particle A carries +|k|, particle B carries -|k|.
    """

    k: float
    w: float

    def __post_init__(self):
        if not (self.w > 0):
            raise ValueError("packet width must be positive")
        if not math.isfinite(self.k):
            raise ValueError("packet center must be finite")


def gaussian_amplitude(p: "FourMomentum", packet: PacketSpec) -> float:
    """L2-normalized Gaussian amplitude centered at (packet.k, 0, 0).

    pi^(-3/4) w^(-3/2) exp(-|p - k|^2 / (2 w^2)), strictly positive.
    """
    w = packet.w
    d2 = (p.qx - packet.k) ** 2 + p.qy**2 + p.qz**2
    return math.pi ** (-0.75) * w ** (-1.5) * math.exp(-d2 / (2.0 * w * w))


def singlet_amplitude(
    pA: "FourMomentum",
    pB: "FourMomentum",
    sA: float,
    sB: float,
    kmag: float,
    w: float,
) -> complex:
    """Spin-singlet two-particle amplitude with back-to-back packets.

    Spins are labeled +0.5 / -0.5. Equal spin labels give zero; the two
    mixed components differ by sign, carrying the antisymmetry.
    """
    if abs(abs(sA) - 0.5) > 1e-12 or abs(abs(sB) - 0.5) > 1e-12:
        raise ValueError("spin labels must be +0.5 or -0.5")
    if sA * sB > 0:
        return 0j
    sign = 1.0 if sA > 0 else -1.0
    fA = gaussian_amplitude(pA, PacketSpec(abs(kmag), w))
    fB = gaussian_amplitude(pB, PacketSpec(-abs(kmag), w))
    return complex(sign * fA * fB / math.sqrt(2.0))
