"""Indistinguishability of two independent single photons.

For photons drawn from the same mixture the indistinguishability at zero
arrival offset equals the state purity; at finite offset tau it decays on
the intrinsic timescale only. Closed forms exist per family:

    Lorentzian: K(tau) = gamma / (2 (gamma' + gamma/2)) * exp(-gamma |tau|)
    Gaussian:   K(tau) = sigma_g / sqrt(sigma_g^2 + sigma_f^2)
                          * exp(-tau^2 sigma_g^2)

and both are checked against the time-domain quadrature route, which never
uses this algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .lineshapes import LineshapeKind, MixedPhotonState
from .oracle import k_time_route
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = ["Method", "KResult", "k_analytic", "k_numeric", "k_cross"]


class Method(str, Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class KResult:
    """Indistinguishability value with its evaluation context.

    ``error`` is the quadrature error estimate for numeric results and None
    for closed forms.
    """

    value: float
    tau: float
    method: Method
    model: str
    error: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"indistinguishability must lie in [0, 1], got {self.value}")


def k_analytic(state: MixedPhotonState, tau: float = 0.0) -> KResult:
    """Closed-form K(tau) for the state's family."""
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    wi = state.lineshape.intrinsic_width
    we = state.distribution.extrinsic_width
    if state.family is LineshapeKind.LORENTZIAN:
        value = wi / (2.0 * (we + 0.5 * wi)) * math.exp(-wi * abs(tau))
    else:
        value = wi / math.hypot(wi, we) * math.exp(-(tau * tau) * wi * wi)
    return KResult(value, tau, Method.ANALYTIC, state.describe())


def k_numeric(
    state: MixedPhotonState, tau: float = 0.0, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> KResult:
    """K(tau) by quadrature: time overlaps averaged over the center spread."""
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    value, err = k_time_route(state.lineshape, state.distribution, state.distribution, tau, cfg)
    return KResult(value, tau, Method.NUMERIC, state.describe(), error=err)


def k_cross(
    state_a: MixedPhotonState,
    state_b: MixedPhotonState,
    tau: float = 0.0,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> KResult:
    """Indistinguishability of photons from two different sources.

    The sources must share the lineshape family and the intrinsic width;
    their center frequencies and extrinsic spreads may differ (inhomogeneous
    broadening enters through the center offset). Reduces to the purity when
    both states coincide.
    """
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    if state_a.family is not state_b.family:
        raise ValueError(
            f"cross indistinguishability needs matching families, got "
            f"{state_a.family.value} and {state_b.family.value}"
        )
    if state_a.lineshape.intrinsic_width != state_b.lineshape.intrinsic_width:
        raise ValueError(
            "cross indistinguishability with unequal intrinsic widths is not "
            f"supported (got {state_a.lineshape.intrinsic_width} and "
            f"{state_b.lineshape.intrinsic_width})"
        )
    value, err = k_time_route(
        state_a.lineshape, state_a.distribution, state_b.distribution, tau, cfg
    )
    model = f"{state_a.describe()} x {state_b.describe()}"
    return KResult(value, tau, Method.NUMERIC, model, error=err)
