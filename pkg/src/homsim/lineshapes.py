"""Spectral models for single photons built from transform-limited wavepackets.

Units are fixed package-wide: angular frequencies in rad/ps, times in ps.
A pure wavepacket is a normalized spectral amplitude with a given intrinsic
width; a realistic single photon is a statistical mixture of such wavepackets
whose center frequencies are spread by an extrinsic distribution. The mixture
is what degrades two-photon interference.

Width conventions: a Lorentzian lineshape stores the decay rate ``gamma``
(the intensity spectrum has half width at half maximum gamma/2, lifetime
1/gamma), and a Lorentzian center distribution stores its HWHM. A Gaussian
lineshape stores the standard deviation of its intensity spectrum, as does a
Gaussian center distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "LineshapeKind",
    "DistributionKind",
    "LineshapeSpec",
    "CenterDistribution",
    "MixedPhotonState",
    "amplitude",
    "tl_overlap_sq",
    "total_spectrum",
    "lorentzian_state",
    "gaussian_state",
]


class LineshapeKind(str, Enum):
    LORENTZIAN = "lorentzian"
    GAUSSIAN = "gaussian"


class DistributionKind(str, Enum):
    DELTA = "delta"
    LORENTZIAN = "lorentzian"
    GAUSSIAN = "gaussian"


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class LineshapeSpec:
    """A pure-wavepacket amplitude family with one intrinsic width parameter.

    ``intrinsic_width`` is the decay rate for the Lorentzian family and the
    intensity-spectrum standard deviation for the Gaussian family (rad/ps).
    """

    kind: LineshapeKind
    intrinsic_width: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LineshapeKind(self.kind))
        w = _require_finite("intrinsic_width", self.intrinsic_width)
        if w <= 0:
            raise ValueError(f"intrinsic_width must be > 0, got {w}")
        object.__setattr__(self, "intrinsic_width", w)


@dataclass(frozen=True)
class CenterDistribution:
    """Distribution of wavepacket center frequencies around ``center``.

    ``extrinsic_width`` is the HWHM for the Lorentzian kind, the standard
    deviation for the Gaussian kind and exactly 0 for the delta kind (a
    single sharp center, i.e. a pure state).
    """

    kind: DistributionKind
    extrinsic_width: float
    center: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DistributionKind(self.kind))
        w = _require_finite("extrinsic_width", self.extrinsic_width)
        c = _require_finite("center", self.center)
        if w < 0:
            raise ValueError(f"extrinsic_width must be >= 0, got {w}")
        if (w == 0) != (self.kind is DistributionKind.DELTA):
            raise ValueError("extrinsic_width == 0 if and only if kind is 'delta'")
        object.__setattr__(self, "extrinsic_width", w)
        object.__setattr__(self, "center", c)

    def pdf(self, omega):
        """Probability density of the center frequency (not defined for delta)."""
        if self.kind is DistributionKind.DELTA:
            raise ValueError("delta distribution has no density; handle it as a point mass")
        x = np.asarray(omega, dtype=float) - self.center
        w = self.extrinsic_width
        if self.kind is DistributionKind.LORENTZIAN:
            out = (w / math.pi) / (x * x + w * w)
        else:
            out = np.exp(-(x * x) / (2.0 * w * w)) / math.sqrt(2.0 * math.pi * w * w)
        return float(out) if np.isscalar(omega) else out


@dataclass(frozen=True)
class MixedPhotonState:
    """Mixture of one lineshape family over a center-frequency distribution.

    Families must match between the lineshape and the distribution, except
    that a delta distribution (pure state) is allowed under any lineshape.
    """

    lineshape: LineshapeSpec
    distribution: CenterDistribution

    def __post_init__(self) -> None:
        dk = self.distribution.kind
        if dk is not DistributionKind.DELTA and dk.value != self.lineshape.kind.value:
            raise ValueError(
                f"mixed families are not supported: lineshape {self.lineshape.kind.value} "
                f"with distribution {dk.value}"
            )

    @property
    def family(self) -> LineshapeKind:
        return self.lineshape.kind

    @property
    def center(self) -> float:
        return self.distribution.center

    @property
    def is_pure(self) -> bool:
        return self.distribution.kind is DistributionKind.DELTA

    @property
    def total_width(self) -> float:
        """Width of the total spectrum: gamma' + gamma/2, or sqrt(sg^2 + sf^2)."""
        wi = self.lineshape.intrinsic_width
        we = self.distribution.extrinsic_width
        if self.family is LineshapeKind.LORENTZIAN:
            return we + 0.5 * wi
        return math.hypot(wi, we)

    @property
    def eta(self) -> float:
        """Extrinsic to intrinsic width ratio (2*gamma'/gamma, or sf/sg)."""
        wi = self.lineshape.intrinsic_width
        we = self.distribution.extrinsic_width
        if self.family is LineshapeKind.LORENTZIAN:
            return 2.0 * we / wi
        return we / wi

    @property
    def intrinsic_lifetime(self) -> float:
        return 1.0 / self.lineshape.intrinsic_width

    def describe(self) -> str:
        wi = self.lineshape.intrinsic_width
        we = self.distribution.extrinsic_width
        c = self.center
        if self.family is LineshapeKind.LORENTZIAN:
            return f"lorentzian(gamma={wi:g}, gamma_prime={we:g}, center={c:g})"
        return f"gaussian(sigma_g={wi:g}, sigma_f={we:g}, center={c:g})"


def lorentzian_state(gamma: float, gamma_prime: float, center: float = 0.0) -> MixedPhotonState:
    spec = LineshapeSpec(LineshapeKind.LORENTZIAN, gamma)
    kind = DistributionKind.DELTA if gamma_prime == 0 else DistributionKind.LORENTZIAN
    return MixedPhotonState(spec, CenterDistribution(kind, gamma_prime, center))


def gaussian_state(sigma_g: float, sigma_f: float, center: float = 0.0) -> MixedPhotonState:
    spec = LineshapeSpec(LineshapeKind.GAUSSIAN, sigma_g)
    kind = DistributionKind.DELTA if sigma_f == 0 else DistributionKind.GAUSSIAN
    return MixedPhotonState(spec, CenterDistribution(kind, sigma_f, center))


def amplitude(spec: LineshapeSpec, center: float, nu):
    """Spectral amplitude of a pure wavepacket centered at ``center``.

    Lorentzian: (1/sqrt(pi)) * sqrt(gamma/2) / ((nu - center) + i*gamma/2).
    Gaussian:   exp(-(nu - center)^2 / (4 sg^2)) / (2 pi sg^2)^(1/4).

    Both satisfy integral |g|^2 d nu = 1. Accepts a scalar or array ``nu``.
    """
    center = _require_finite("center", center)
    x = np.asarray(nu, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("nu must be finite")
    w = spec.intrinsic_width
    if spec.kind is LineshapeKind.LORENTZIAN:
        out = (1.0 / math.sqrt(math.pi)) * math.sqrt(0.5 * w) / ((x - center) + 0.5j * w)
    else:
        out = (2.0 * math.pi * w * w) ** -0.25 * np.exp(-((x - center) ** 2) / (4.0 * w * w))
        out = out.astype(np.complex128)
    return complex(out) if np.isscalar(nu) else out


def tl_overlap_sq(spec: LineshapeSpec, omega_i: float, omega_j: float) -> float:
    """Squared overlap of two pure wavepackets of the same family and width.

    Lorentzian: gamma^2 / ((omega_i - omega_j)^2 + gamma^2).
    Gaussian:   exp(-(omega_i - omega_j)^2 / (4 sg^2)).
    """
    omega_i = _require_finite("omega_i", omega_i)
    omega_j = _require_finite("omega_j", omega_j)
    d = omega_i - omega_j
    w = spec.intrinsic_width
    if spec.kind is LineshapeKind.LORENTZIAN:
        return w * w / (d * d + w * w)
    return math.exp(-(d * d) / (4.0 * w * w))


def total_spectrum(state: MixedPhotonState, nu):
    """Intensity spectrum of the mixture, normalized to unit area.

    Lorentzian family: Lorentzian of HWHM gamma' + gamma/2 around the center.
    Gaussian family: Gaussian of standard deviation sqrt(sg^2 + sf^2).
    Delta distribution: the pure wavepacket spectrum itself.
    """
    x = np.asarray(nu, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("nu must be finite")
    if state.is_pure:
        g = amplitude(state.lineshape, state.center, x)
        out = np.abs(g) ** 2
        return float(out) if np.isscalar(nu) else out
    d = x - state.center
    w = state.total_width
    if state.family is LineshapeKind.LORENTZIAN:
        out = (w / math.pi) / (d * d + w * w)
    else:
        out = np.exp(-(d * d) / (2.0 * w * w)) / math.sqrt(2.0 * math.pi * w * w)
    return float(out) if np.isscalar(nu) else out
