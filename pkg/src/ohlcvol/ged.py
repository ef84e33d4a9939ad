"""Standardized generalized error distribution (zero mean, unit variance).

Density for shape ``nu > 0`` and scale ``beta``:

    f(z) = nu / (2 * beta * Gamma(1/nu)) * exp(-(|z| / beta)**nu)

with ``beta(nu) = sqrt(Gamma(1/nu) / Gamma(3/nu))`` chosen so the variance
is exactly 1. ``nu = 2`` is the standard normal (beta = sqrt(2)), ``nu = 1``
the unit-variance Laplace; smaller nu means heavier tails.

The CDF and quantile go through the regularized incomplete gamma function:
if Z follows the density above then (|Z|/beta)**nu ~ Gamma(shape=1/nu,
scale=1), so one tail is an incomplete-gamma evaluation and the inverse is
``gammaincinv``. SciPy's gamma kernels are accurate to ~1e-14 relative on
the argument range used here (shape in [0.1, 3.4] for nu in [0.3, 10]),
which keeps the round-trip |F(F^-1(p)) - p| well under 1e-10.
"""
from __future__ import annotations

import numpy as np
from scipy import special

from .errors import NoConvergence, NonPositiveShape, ProbabilityOutOfRange

__all__ = [
    "ged_scale",
    "ged_pdf",
    "ged_cdf",
    "ged_quantile",
    "ged_kurtosis",
    "ged_log_density",
]


def _check_shape(nu: float) -> float:
    nu = float(nu)
    if not np.isfinite(nu) or nu <= 0.0:
        raise NonPositiveShape(f"shape nu must be finite and > 0, got {nu}")
    return nu


def _maybe_scalar(out: np.ndarray, scalar_in: bool):
    return float(out) if scalar_in else out


def ged_scale(nu: float) -> float:
    """Scale beta(nu) = sqrt(Gamma(1/nu) / Gamma(3/nu)) giving unit variance."""
    nu = _check_shape(nu)
    return float(np.exp(0.5 * (special.gammaln(1.0 / nu) - special.gammaln(3.0 / nu))))


def ged_pdf(z, nu: float):
    """Density of the standardized GED at z (scalar or array)."""
    nu = _check_shape(nu)
    scalar_in = np.isscalar(z)
    z = np.asarray(z, dtype=float)
    beta = ged_scale(nu)
    norm = nu / (2.0 * beta * np.exp(special.gammaln(1.0 / nu)))
    out = norm * np.exp(-((np.abs(z) / beta) ** nu))
    return _maybe_scalar(out, scalar_in)


def ged_log_density(z, nu: float):
    """log of :func:`ged_pdf`, stable far into the tails.

    Evaluated directly as log(nu) - log(2*beta) - lgamma(1/nu) - (|z|/beta)**nu,
    so it stays finite where the exp form underflows.
    """
    nu = _check_shape(nu)
    scalar_in = np.isscalar(z)
    z = np.asarray(z, dtype=float)
    log_beta = 0.5 * (special.gammaln(1.0 / nu) - special.gammaln(3.0 / nu))
    log_norm = np.log(nu) - np.log(2.0) - log_beta - special.gammaln(1.0 / nu)
    out = log_norm - (np.abs(z) / np.exp(log_beta)) ** nu
    return _maybe_scalar(out, scalar_in)


def ged_cdf(z, nu: float):
    """CDF of the standardized GED.

    Uses F(z) = 1/2 + sign(z)/2 * P(1/nu, (|z|/beta)**nu) where P is the
    regularized lower incomplete gamma function.
    """
    nu = _check_shape(nu)
    scalar_in = np.isscalar(z)
    z = np.asarray(z, dtype=float)
    beta = ged_scale(nu)
    tail = special.gammainc(1.0 / nu, (np.abs(z) / beta) ** nu)
    out = 0.5 + 0.5 * np.sign(z) * tail
    return _maybe_scalar(out, scalar_in)


def ged_quantile(p, nu: float):
    """Quantile a_p(nu) = F^-1(p) for p in (0, 1).

    Antisymmetric: a_{1-p} = -a_p, with a_{0.5} = 0 exactly.
    """
    nu = _check_shape(nu)
    scalar_in = np.isscalar(p)
    p = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(p)) or np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ProbabilityOutOfRange("p must lie strictly inside (0, 1)")
    beta = ged_scale(nu)
    # one tail: |z| = beta * Q^(1/nu) with Q the inverse lower incomplete gamma
    g = special.gammaincinv(1.0 / nu, np.abs(2.0 * p - 1.0))
    out = np.sign(p - 0.5) * beta * g ** (1.0 / nu)
    if np.any(~np.isfinite(out)):
        raise NoConvergence(f"incomplete-gamma inversion failed for nu={nu}")
    return _maybe_scalar(out, scalar_in)


def ged_kurtosis(nu: float) -> float:
    """Kurtosis kappa(nu) = Gamma(5/nu) Gamma(1/nu) / Gamma(3/nu)^2.

    kappa(2) = 3; kappa > 3 for nu < 2 (heavy tails), < 3 for nu > 2.
    """
    nu = _check_shape(nu)
    return float(
        np.exp(
            special.gammaln(5.0 / nu)
            + special.gammaln(1.0 / nu)
            - 2.0 * special.gammaln(3.0 / nu)
        )
    )
