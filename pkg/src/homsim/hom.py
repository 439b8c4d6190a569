"""Hong-Ou-Mandel observables derived from an indistinguishability provider.

A 50/50 beamsplitter maps K(tau) onto the two normalized outcome
probabilities: both photons in one port, c_aa = (1 + K)/4, or one photon in
each, c_ab = (1 - K)/2. The arrays are constructed so that the bookkeeping
identity c_ab + 2*c_aa = 1 holds bit-exactly at every sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .indistinguishability import Method, k_analytic, k_numeric
from .lineshapes import MixedPhotonState
from .quadrature import DEFAULT_CONFIG, NonConvergenceError, QuadratureConfig

__all__ = [
    "HomCurve",
    "InsufficientBaselineError",
    "InsufficientResolutionError",
    "default_tau_grid",
    "hom_curve",
    "visibility",
    "dip_width",
]

BASELINE_LIFETIMES = 8.0


class InsufficientBaselineError(ValueError):
    """The curve does not extend far enough to estimate the flat baseline."""


class InsufficientResolutionError(ValueError):
    """Too few samples around the dip to locate its width reliably."""


@dataclass(frozen=True)
class HomCurve:
    """Sampled two-photon interference curve plus its provenance."""

    taus: np.ndarray
    k: np.ndarray
    c_aa: np.ndarray
    c_ab: np.ndarray
    metadata: dict = field(default_factory=dict)


def default_tau_grid(state: MixedPhotonState, n: int = 201, spans: float = BASELINE_LIFETIMES):
    """Symmetric arrival-offset grid covering +-spans intrinsic lifetimes."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3 so the grid contains tau = 0")
    half = spans * state.intrinsic_lifetime
    return np.linspace(-half, half, n)


def hom_curve(
    state: MixedPhotonState,
    taus=None,
    method: Method = Method.ANALYTIC,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> HomCurve:
    """Evaluate K on a grid and map it to the beamsplitter probabilities.

    Numeric evaluations that fail to converge mark their sample as NaN and
    are listed in metadata["failed_indices"].
    """
    method = Method(method)
    if taus is None:
        taus = default_tau_grid(state)
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size < 2 or not np.all(np.diff(taus) > 0):
        raise ValueError("taus must be a strictly increasing 1-d grid")

    k = np.empty_like(taus)
    failed: list[int] = []
    for i, tau in enumerate(taus):
        if method is Method.ANALYTIC:
            k[i] = k_analytic(state, float(tau)).value
        else:
            try:
                k[i] = k_numeric(state, float(tau), cfg).value
            except NonConvergenceError:
                k[i] = math.nan
                failed.append(i)

    # c_ab = 1 - 2*c_aa is exact in floating point (Sterbenz subtraction,
    # since 2*c_aa lies in [1/2, 1]), which pins c_ab + 2*c_aa == 1.
    c_aa = 0.25 + 0.25 * k
    c_ab = 1.0 - 2.0 * c_aa
    meta = {
        "model": state.describe(),
        "method": method.value,
        "family": state.family.value,
        "intrinsic_width": state.lineshape.intrinsic_width,
        "extrinsic_width": state.distribution.extrinsic_width,
        "center": state.center,
        "lifetime": state.intrinsic_lifetime,
        "failed_indices": tuple(failed),
    }
    return HomCurve(taus, k, c_aa, c_ab, meta)


def _baseline(curve: HomCurve) -> float:
    """Coincidence level at the largest sampled offsets (average of the ends)."""
    good = ~np.isnan(curve.c_ab)
    taus = curve.taus[good]
    c_ab = curve.c_ab[good]
    far = np.abs(taus) >= 0.999 * np.max(np.abs(taus))
    return float(np.mean(c_ab[far]))


def visibility(curve: HomCurve) -> float:
    """(baseline - dip) / baseline of the coincidence curve; equals K(0)."""
    idx = np.where(curve.taus == 0.0)[0]
    if idx.size == 0:
        raise ValueError("curve must contain a tau = 0 sample")
    lifetime = curve.metadata.get("lifetime")
    if lifetime is None:
        raise ValueError("curve metadata lacks the intrinsic lifetime")
    if np.max(np.abs(curve.taus)) < BASELINE_LIFETIMES * lifetime:
        raise InsufficientBaselineError(
            f"need samples out to {BASELINE_LIFETIMES} lifetimes "
            f"({BASELINE_LIFETIMES * lifetime:g} ps) to measure the baseline"
        )
    base = _baseline(curve)
    return (base - float(curve.c_ab[idx[0]])) / base


def dip_width(curve: HomCurve) -> float:
    """Offset at which the dip depth has decayed to 1/e of its peak.

    The depth below baseline is proportional to K(tau), so the crossing of
    K(0)/e is located by monotone piecewise-linear interpolation on the
    sampled half-curve. Expected value: one intrinsic lifetime for the
    Lorentzian family, 1/sigma_g for the Gaussian family, independent of the
    extrinsic width.
    """
    lifetime = curve.metadata.get("lifetime")
    if lifetime is None:
        raise ValueError("curve metadata lacks the intrinsic lifetime")
    good = ~np.isnan(curve.k)
    taus = curve.taus[good]
    k = curve.k[good]
    inside = np.abs(taus) < lifetime
    if int(np.count_nonzero(inside)) < 16:
        raise InsufficientResolutionError(
            "need at least 16 samples within one lifetime of tau = 0"
        )
    if 0.0 not in taus:
        raise ValueError("curve must contain a tau = 0 sample")
    right = taus >= 0.0
    tr, kr = taus[right], k[right]
    target = kr[0] / math.e
    below = np.where(kr <= target)[0]
    if below.size == 0 or below[0] == 0:
        raise InsufficientResolutionError("curve never decays to 1/e of its peak")
    j = int(below[0])
    t0, t1 = tr[j - 1], tr[j]
    k0, k1 = kr[j - 1], kr[j]
    return float(t0 + (k0 - target) / (k0 - k1) * (t1 - t0))
