"""Physical-unit front end for heralded down-conversion sources.

Maps lab parameters (pump duration in fs, filter bandwidth in nm) onto the
package's internal angular-frequency widths under the thin-crystal
approximation, where the heralded photon's intrinsic spectral width equals
the pump spectral width. The extrinsic-to-intrinsic ratio eta is a free
input; the joint-amplitude engineering that would determine it is out of
scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .filtering import FilterKind, FilterSpec, FilteredResult, apply_gaussian_filter
from .indistinguishability import Method
from .lineshapes import gaussian_state

__all__ = [
    "SPEED_OF_LIGHT_NM_PER_PS",
    "SpdcSetup",
    "pump_sigma_from_duration",
    "duration_from_pump_sigma",
    "filter_sigma_from_wavelength",
    "wavelength_from_filter_sigma",
    "heralded_indistinguishability",
]

SPEED_OF_LIGHT_NM_PER_PS = 299792.458

# Gaussian intensity FWHM = 2 sqrt(2 ln 2) standard deviations.
_FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


def pump_sigma_from_duration(fwhm_fs: float) -> float:
    """Spectral width (rad/ps) of a transform-limited Gaussian pump.

    A Gaussian pulse of intensity-FWHM duration dt has an angular-frequency
    intensity FWHM of 4 ln2 / dt; this returns the corresponding standard
    deviation.
    """
    if not (math.isfinite(fwhm_fs) and fwhm_fs > 0):
        raise ValueError(f"pump duration must be positive, got {fwhm_fs}")
    dt_ps = fwhm_fs * 1e-3
    fwhm_omega = 4.0 * math.log(2.0) / dt_ps
    return fwhm_omega / _FWHM_PER_SIGMA


def duration_from_pump_sigma(sigma: float) -> float:
    """Inverse of pump_sigma_from_duration, returning fs."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    dt_ps = 4.0 * math.log(2.0) / (sigma * _FWHM_PER_SIGMA)
    return dt_ps * 1e3


def filter_sigma_from_wavelength(fwhm_nm: float, center_nm: float) -> float:
    """Standard deviation (rad/ps) of a filter given its wavelength FWHM."""
    if not (math.isfinite(fwhm_nm) and fwhm_nm > 0):
        raise ValueError(f"filter FWHM must be positive, got {fwhm_nm}")
    if not (math.isfinite(center_nm) and center_nm > 0):
        raise ValueError(f"center wavelength must be positive, got {center_nm}")
    fwhm_omega = 2.0 * math.pi * SPEED_OF_LIGHT_NM_PER_PS * fwhm_nm / (center_nm * center_nm)
    return fwhm_omega / _FWHM_PER_SIGMA


def wavelength_from_filter_sigma(sigma: float, center_nm: float) -> float:
    """Inverse of filter_sigma_from_wavelength, returning nm."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    fwhm_omega = sigma * _FWHM_PER_SIGMA
    return fwhm_omega * center_nm * center_nm / (2.0 * math.pi * SPEED_OF_LIGHT_NM_PER_PS)


@dataclass(frozen=True)
class SpdcSetup:
    """Heralded-source description in lab units.

    ``eta`` is the extrinsic-to-intrinsic width ratio of the heralded photon
    (0 for a factorable joint amplitude). The 800 nm default corresponds to
    degenerate down-conversion of a 400 nm pump.
    """

    pump_fwhm_duration_fs: float
    signal_center_wavelength_nm: float = 800.0
    filter_fwhm_wavelength_nm: float | None = None
    eta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.pump_fwhm_duration_fs) and self.pump_fwhm_duration_fs > 0):
            raise ValueError("pump_fwhm_duration_fs must be positive")
        if not (
            math.isfinite(self.signal_center_wavelength_nm)
            and self.signal_center_wavelength_nm > 0
        ):
            raise ValueError("signal_center_wavelength_nm must be positive")
        if self.filter_fwhm_wavelength_nm is not None and not (
            math.isfinite(self.filter_fwhm_wavelength_nm) and self.filter_fwhm_wavelength_nm > 0
        ):
            raise ValueError("filter_fwhm_wavelength_nm must be positive when given")
        if not (math.isfinite(self.eta) and self.eta >= 0):
            raise ValueError("eta must be >= 0")

    @property
    def sigma_g(self) -> float:
        return pump_sigma_from_duration(self.pump_fwhm_duration_fs)

    @property
    def sigma_f(self) -> float:
        return self.eta * self.sigma_g

    @property
    def sigma_filter(self) -> float | None:
        if self.filter_fwhm_wavelength_nm is None:
            return None
        return filter_sigma_from_wavelength(
            self.filter_fwhm_wavelength_nm, self.signal_center_wavelength_nm
        )


def heralded_indistinguishability(setup: SpdcSetup) -> FilteredResult:
    """Indistinguishability of the heralded photons, filtered if requested."""
    sg = setup.sigma_g
    state = gaussian_state(sg, setup.sigma_f)
    sF = setup.sigma_filter
    if sF is not None:
        return apply_gaussian_filter(state, FilterSpec(FilterKind.GAUSSIAN, sF))
    k0 = sg / state.total_width
    return FilteredResult(
        k_filtered=k0,
        transmission=1.0,
        filtered_total_width=state.total_width,
        filtered_intrinsic_width=sg,
        method=Method.ANALYTIC,
    )
