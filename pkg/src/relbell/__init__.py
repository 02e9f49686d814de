"""Bell correlations between relativistically moving spin measurements.

The package follows the physics pipeline: single-particle kinematics and
spin rotations (relkin), momentum wavepackets (wavepacket), the detector
decoherence factor (decoherence), and the resulting two-spin state with
its CHSH value (chsh). The cli module exposes the whole chain as file
emitting subcommands.
"""

from .chsh import (
    LOSS_FACTOR,
    ChshSetting,
    Direction,
    ReducedSpinState,
    ThresholdNotReachableError,
    ThresholdResult,
    chsh_bound_check,
    chsh_constrained,
    chsh_smallwidth,
    chsh_value,
    pair_expectation,
    reduced_density_matrix,
    sample_outcomes,
    threshold_rapidity,
    threshold_width,
)
from .decoherence import (
    DecoherenceFactor,
    McConfig,
    QuadratureConfig,
    decoherence_factor,
    decoherence_factor_smallwidth,
    decoherence_factor_ultra,
    decoherence_integrand,
    mc_decoherence_factor,
)
from .quadrature import QuadratureConvergenceError, QuadratureResult, integrate_2d
from .relkin import (
    FourMomentum,
    LorentzBoost,
    Rapidity,
    SpinorCoefficients,
    WignerMatrix,
    apply_boost,
    rapidity_from_velocity,
    spinor_coefficients,
    wigner_matrix,
)
from .wavepacket import PacketSpec, gaussian_amplitude, singlet_amplitude

__version__ = "0.1.0"

__all__ = [
    "LOSS_FACTOR",
    "ChshSetting",
    "DecoherenceFactor",
    "Direction",
    "FourMomentum",
    "LorentzBoost",
    "McConfig",
    "PacketSpec",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "QuadratureResult",
    "Rapidity",
    "ReducedSpinState",
    "SpinorCoefficients",
    "ThresholdNotReachableError",
    "ThresholdResult",
    "WignerMatrix",
    "apply_boost",
    "chsh_bound_check",
    "chsh_constrained",
    "chsh_smallwidth",
    "chsh_value",
    "decoherence_factor",
    "decoherence_factor_smallwidth",
    "decoherence_factor_ultra",
    "decoherence_integrand",
    "gaussian_amplitude",
    "integrate_2d",
    "mc_decoherence_factor",
    "pair_expectation",
    "rapidity_from_velocity",
    "reduced_density_matrix",
    "sample_outcomes",
    "singlet_amplitude",
    "spinor_coefficients",
    "threshold_rapidity",
    "threshold_width",
    "wigner_matrix",
    "__version__",
]
