"""Scalar special functions: log-gamma, digamma, and a stable log-sum-exp.

Written from scratch so the numerical core depends on nothing beyond
numpy.  All routines are pure and reentrant.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["log_gamma", "digamma", "log_sum_exp"]


# Lanczos coefficients, g = 7, 9 terms (Godfrey's set).  Relative error of
# the reconstructed gamma stays below ~1e-13 on the positive real axis.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Tail coefficients B_{2n}/(2n) of the asymptotic digamma series
#   digamma(x) ~ ln x - 1/(2x) - sum_n B_{2n} / (2n x^{2n}).
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# Lift small arguments with digamma(x) = digamma(x+1) - 1/x until x >= 6;
# the truncated series is then accurate to well under 1e-10.
_DIGAMMA_LIFT = 6.0


def _positive_scalar(x, name: str) -> float:
    try:
        v = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real scalar, got {x!r}") from exc
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {v!r}")
    return v


def log_gamma(x) -> float:
    """Natural log of the gamma function, ln Gamma(x), for x > 0.

    Uses the Lanczos approximation, with the reflection formula below 0.5.
    Accuracy is ~1e-13 relative to the magnitude of the result.
    """
    v = _positive_scalar(x, "x")
    if v < 0.5:
        # ln Gamma(v) = ln pi - ln sin(pi v) - ln Gamma(1 - v), valid for 0 < v < 1
        return math.log(math.pi) - math.log(math.sin(math.pi * v)) - log_gamma(1.0 - v)
    z = v - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def digamma(x) -> float:
    """Digamma function, d/dx ln Gamma(x), for x > 0.

    Small arguments are lifted through the recurrence
    digamma(x) = digamma(x + 1) - 1/x, then the asymptotic series is
    evaluated.  Absolute error stays below 1e-10 over [1e-3, 1e6].
    """
    v = _positive_scalar(x, "x")
    acc = 0.0
    while v < _DIGAMMA_LIFT:
        acc -= 1.0 / v
        v += 1.0
    inv2 = 1.0 / (v * v)
    tail = 0.0
    power = inv2
    for coeff in _DIGAMMA_TAIL:
        tail += coeff * power
        power *= inv2
    return acc + math.log(v) - 0.5 / v - tail


def log_sum_exp(values, axis: int | None = None):
    """ln(sum(exp(values))) computed with a max shift.

    Entries may be -inf (vanished contributions); NaN and +inf are
    rejected, as is any reduction whose entries are all -inf.  With
    ``axis=None`` the whole array is reduced and a float is returned,
    otherwise an array reduced along ``axis``.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise DomainError("log_sum_exp of an empty collection")
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise DomainError("log_sum_exp entries must be < +inf and not NaN")
    shift = np.max(arr, axis=axis, keepdims=True)
    if np.isneginf(shift).any():
        raise DomainError("log_sum_exp needs at least one finite entry per reduction")
    total = np.sum(np.exp(arr - shift), axis=axis, keepdims=True)
    out = shift + np.log(total)
    if axis is None:
        return float(out.reshape(()))
    return np.squeeze(out, axis=axis)
