"""Single-photon indistinguishability and HOM interference calculator.

Angular frequencies in rad/ps, times in ps throughout.
"""

from .quadrature import (
    QuadratureConfig,
    IntegralResult,
    NonConvergenceError,
    TruncationWarning,
    integrate_1d,
    integrate_on_edges,
)
from .lineshapes import (
    LineshapeKind,
    DistributionKind,
    LineshapeSpec,
    CenterDistribution,
    MixedPhotonState,
    amplitude,
    tl_overlap_sq,
    total_spectrum,
    lorentzian_state,
    gaussian_state,
)
from .oracle import temporal_amplitude, overlap_time, overlap_freq
from .indistinguishability import Method, KResult, k_analytic, k_numeric, k_cross
from .hom import (
    HomCurve,
    InsufficientBaselineError,
    InsufficientResolutionError,
    default_tau_grid,
    hom_curve,
    visibility,
    dip_width,
)
from .filtering import (
    FilterKind,
    FilterSpec,
    FilteredResult,
    apply_gaussian_filter,
    filtered_gaussian_state,
    k_filtered_numeric,
    transmission,
)
from .spdc import (
    SPEED_OF_LIGHT_NM_PER_PS,
    SpdcSetup,
    pump_sigma_from_duration,
    duration_from_pump_sigma,
    filter_sigma_from_wavelength,
    wavelength_from_filter_sigma,
    heralded_indistinguishability,
)

__version__ = "0.1.0"
