"""Mittag-Leffler functions E_{a,b}(z) on the real axis, z <= z_max.

All closed-form viscoelastic responses in this package are built from
E_{a,b} evaluated on the negative real axis, so only that domain (plus a
short positive stretch) is supported, to the accuracy contract

    |result - E_{a,b}(z)| <= 1e-10 * (1 + |E_{a,b}(z)|).

Branches:

* power series  sum_k z**k / Gamma(a*k + b) with the stopping rule
  |term| < 1e-16 * |partial sum| and a hard cap of 10**4 terms.  On the
  negative axis the series cancels catastrophically once terms peak many
  orders above the result; the peak is predicted (and monitored) and the
  evaluation escalates to an mpmath fixed-point loop with enough guard
  digits when double precision cannot reach the contract.

* asymptotic series  -sum_{k>=1} z**-k / Gamma(b - a*k) for large
  negative z, truncated at its smallest term.  It is accepted only when
  the self-estimated truncation error (which also bounds the omitted
  exponentially small contribution ~ exp(-|z|**(1/a))) meets the
  contract with margin.

In the crossover band around z_switch both branches are computed and
compared; disagreement raises AccuracyLossError rather than returning a
silent best effort, because solver acceptance tests compare against
these values.  a = 1 is the classical limit (E_{1,1} = exp) and has no
asymptotic branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln as _gammaln, rgamma as _rgamma

from .errors import AccuracyLossError, InvalidArgumentError

Z_MAX = 5.0
Z_SWITCH = 20.0
SERIES_CAP = 10_000
_ASYMPTOTIC_CAP = 80
# escalate to mpmath when the series peak exceeds the result by this many digits
_LOSS_DIGITS = 4.5


@dataclass(frozen=True)
class MLParams:
    """Exponent pair of E_{alpha,beta}; alpha in (0, 1], beta > 0."""

    alpha: float
    beta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 1.0):
            raise InvalidArgumentError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise InvalidArgumentError(f"beta must be positive, got {self.beta}")


def _peak_log10(alpha: float, beta: float, z: float) -> float:
    """Predicted log10 of the largest series term magnitude for z < 0."""
    az = abs(z)
    if az <= 1.0:
        return 0.0
    # maximise k*ln|z| - lnGamma(alpha*k + beta); the stationary point is
    # near alpha*k + beta = |z|**(1/alpha)
    x = az ** (1.0 / alpha)
    k = max((x - beta) / alpha, 0.0)
    return (k * math.log(az) - _gammaln(alpha * k + beta)) / math.log(10.0)


def _series_double(alpha: float, beta: float, z: float) -> tuple[float, float]:
    """Plain double-precision series; returns (value, peak term magnitude)."""
    total = _rgamma(beta)
    peak = abs(total)
    term = 1.0
    small = 0
    for k in range(1, SERIES_CAP + 1):
        term *= z
        c = term * _rgamma(alpha * k + beta)
        total += c
        peak = max(peak, abs(c))
        if abs(c) < 1e-16 * abs(total):
            small += 1
            if small >= 2:
                return total, peak
        else:
            small = 0
    raise AccuracyLossError(
        f"series for E_{{{alpha},{beta}}}({z}) did not converge in {SERIES_CAP} terms"
    )


def _series_mp(alpha: float, beta: float, z: float) -> float:
    """Arbitrary-precision series with guard digits sized to the cancellation."""
    import mpmath as mp

    extra = max(0.0, _peak_log10(alpha, beta, z))
    dps = int(extra) + 30
    for _ in range(3):
        with mp.workdps(dps):
            a, b, zz = mp.mpf(alpha), mp.mpf(beta), mp.mpf(z)
            total = 1 / mp.gamma(b)
            peak = abs(total)
            term = mp.mpf(1)
            tiny = mp.mpf(10) ** (-dps + 2)
            small = 0
            for k in range(1, 200_000):
                term *= zz
                c = term / mp.gamma(a * k + b)
                total += c
                peak = max(peak, abs(c))
                if abs(c) < tiny * (1 + abs(total)):
                    small += 1
                    if small >= 2:
                        break
                else:
                    small = 0
            else:
                raise AccuracyLossError(
                    f"extended-precision series for E_{{{alpha},{beta}}}({z}) stalled"
                )
            lost = mp.log10(peak / abs(total)) if total != 0 else mp.mpf(0)
            if dps - float(lost) >= 18:
                return float(total)
            dps = int(float(lost)) + 25
    raise AccuracyLossError(
        f"could not stabilise E_{{{alpha},{beta}}}({z}) at extended precision"
    )


def _series(alpha: float, beta: float, z: float) -> float:
    if z < 0.0 and _peak_log10(alpha, beta, z) > _LOSS_DIGITS:
        return _series_mp(alpha, beta, z)
    value, peak = _series_double(alpha, beta, z)
    if z < 0.0 and peak > abs(value) * 10.0**_LOSS_DIGITS:
        return _series_mp(alpha, beta, z)
    return value


def _asymptotic(alpha: float, beta: float, z: float) -> tuple[float, float]:
    """Algebraic expansion for large negative z; returns (value, abs error estimate).

    Truncated at the smallest term; the omitted term also bounds the
    exponentially small contribution at optimal truncation.
    """
    total = 0.0
    last = math.inf
    est = math.inf
    k = 1
    while k <= _ASYMPTOTIC_CAP:
        t = -(z ** (-k)) * _rgamma(beta - alpha * k)
        mag = abs(t)
        if mag > last and last > 0.0:
            est = mag
            break
        total += t
        if mag > 0.0:
            last = mag
            est = mag
        k += 1
    return total, est


def ml(
    p: MLParams,
    z: float,
    *,
    z_max: float = Z_MAX,
    z_switch: float = Z_SWITCH,
) -> float:
    """Evaluate E_{alpha,beta}(z) for real z <= z_max."""
    alpha, beta = p.alpha, p.beta
    z = float(z)
    if not math.isfinite(z):
        raise InvalidArgumentError(f"argument must be finite, got {z}")
    if z > z_max:
        raise InvalidArgumentError(
            f"argument {z} exceeds the supported positive range z <= {z_max}"
        )

    if alpha == 1.0:
        # classical limit: exact exponential for beta = 1, guarded series otherwise
        if beta == 1.0:
            return math.exp(z)
        return _series_mp(1.0, beta, z) if z < -2.0 else _series(1.0, beta, z)

    in_band = -1.2 * z_switch <= z <= -0.8 * z_switch
    if z >= -z_switch:
        value = _series(alpha, beta, z)
        if in_band:
            asym, est = _asymptotic(alpha, beta, z)
            if est <= 1e-9 * (1.0 + abs(asym)) and abs(asym - value) > 1e-7 * (
                1.0 + abs(value)
            ):
                raise AccuracyLossError(
                    f"series/asymptotic branches disagree for "
                    f"E_{{{alpha},{beta}}}({z}): {value} vs {asym}"
                )
        return value

    asym, est = _asymptotic(alpha, beta, z)
    if est <= 1e-12 * (1.0 + abs(asym)):
        if in_band:
            value = _series(alpha, beta, z)
            if abs(asym - value) > 1e-7 * (1.0 + abs(value)):
                raise AccuracyLossError(
                    f"series/asymptotic branches disagree for "
                    f"E_{{{alpha},{beta}}}({z}): {value} vs {asym}"
                )
        return asym
    # asymptotics not yet converged this close to the switch: fall back to
    # the guarded series while it is still affordable
    if abs(z) ** (1.0 / alpha) <= 120.0:
        return _series(alpha, beta, z)
    raise AccuracyLossError(
        f"no branch reaches the accuracy contract for E_{{{alpha},{beta}}}({z})"
    )


def ml_values(
    p: MLParams,
    z: np.ndarray,
    *,
    z_max: float = Z_MAX,
    z_switch: float = Z_SWITCH,
) -> np.ndarray:
    """Vectorised E_{alpha,beta} over an array of arguments.

    Arguments safely inside the series region run as one vectorised sweep;
    anything near or beyond the switch, or flagged by the cancellation
    monitor, is re-evaluated through the scalar path.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty(z.shape)
    flat = z.ravel()
    res = out.ravel()
    if flat.size == 0:
        return out
    if np.any(flat > z_max) or not np.all(np.isfinite(flat)):
        raise InvalidArgumentError("arguments must be finite and <= z_max")

    alpha, beta = p.alpha, p.beta
    easy = flat >= -0.8 * z_switch
    if np.any(easy):
        ze = flat[easy]
        total = np.full(ze.shape, _rgamma(beta))
        peak = np.abs(total)
        term = np.ones_like(ze)
        small = 0
        for k in range(1, SERIES_CAP + 1):
            term = term * ze
            c = term * _rgamma(alpha * k + beta)
            total += c
            np.maximum(peak, np.abs(c), out=peak)
            if np.all(np.abs(c) < 1e-16 * (np.abs(total) + 1e-300)):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        else:
            raise AccuracyLossError("vectorised series hit the term cap")
        res[easy] = total
        bad = np.zeros(flat.shape, dtype=bool)
        bad[easy] = peak > (np.abs(total) + 1e-300) * 10.0**_LOSS_DIGITS
    else:
        bad = np.zeros(flat.shape, dtype=bool)
    redo = bad | ~easy
    for idx in np.nonzero(redo)[0]:
        res[idx] = ml(p, float(flat[idx]), z_max=z_max, z_switch=z_switch)
    return out
