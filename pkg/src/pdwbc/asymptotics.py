"""Large-``s`` behaviour of the one-point function at ``m = mu s``.

Away from ``mu = 1`` the function is a step plus an exponentially small correction
``sgn(mu-1) exp(-s phi1 - phi0) / sqrt(s)``; near the step it is an erfc profile in
``v = (m - s)/sqrt(s)``. The rate functions can also be reached from the ODE in ``t``
through ``d/dt log g = sigma1 s + sigma0 + O(1/s)``.

Everything here is floating point; exact one-point values are bridged in through
:func:`log_abs_fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DegenerateInputError, DomainError, WindowError
from .onepoint import g_series, g_value, ode_coefficients
from .scalar import Poly, as_scalar

WINDOW_HALF_WIDTH = 0.1
MIN_S = 10


@dataclass(frozen=True)
class ScalingPoint:
    mu: float
    lam: float
    v: float = 0.0

    def __post_init__(self):
        if self.mu < 0 or self.lam <= 0:
            raise DomainError("need mu >= 0 and lam > 0")

    @classmethod
    def from_ms(cls, m: int, s: int, t: float) -> "ScalingPoint":
        t = float(t)
        return cls(m / s, t / (1 - t), (m - s) / math.sqrt(s))

    @property
    def t(self) -> float:
        return self.lam / (1 + self.lam)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """``g ~ leading + sign * exp(log_correction)``."""

    leading: float
    log_correction: float
    sign: int

    @property
    def value(self) -> float:
        return self.leading + self.sign * math.exp(self.log_correction)


def _lam(t) -> float:
    t = float(t)
    if not 0 < t < 1:
        raise DomainError("t must lie in (0, 1)")
    return t / (1 - t)


def _root(mu, lam) -> float:
    return math.sqrt((1 - mu) ** 2 + 4 * mu * lam * lam)


# ---------------------------------------------------------------------------
# Saddle points and rate functions
# ---------------------------------------------------------------------------


def saddle_exponent(z, mu, lam) -> float:
    """``F(z) = mu log(lam+z) + log(1+lam z) - log z - (mu+1) log(1+lam)`` for ``z > 0``."""
    return mu * math.log(lam + z) + math.log(1 + lam * z) - math.log(z) - (mu + 1) * math.log(1 + lam)


def saddle_derivative(z, mu, lam) -> float:
    return mu / (lam + z) + lam / (1 + lam * z) - 1 / z


def saddle_second_derivative(z, mu, lam) -> float:
    """``F''`` at a stationary point, simplified with the saddle-point equation."""
    return lam * mu * (mu * z * z + 1) / (z * (lam + z) ** 2)


def saddle_points(mu, lam) -> tuple[float, float]:
    """Roots ``(z_minus, z_plus)`` of ``mu (1 + lam z) z = lam + z``; ``z_minus < 0 < z_plus``."""
    if mu == 0:
        raise DegenerateInputError("mu = 0 leaves a single root z = -lam")
    if mu < 0 or lam <= 0:
        raise DomainError("need mu > 0 and lam > 0")
    r = _root(mu, lam)
    # pick the cancellation-free form for each sign of 1 - mu
    if mu <= 1:
        z_plus = (1 - mu + r) / (2 * mu * lam)
    else:
        z_plus = 2 * lam / (r - (1 - mu))
    z_minus = -1 / (mu * z_plus)
    return z_minus, z_plus


def _check_rate_args(mu, t):
    if mu <= 0:
        raise DomainError("need mu > 0")
    if mu == 1:
        raise WindowError("mu = 1 is the step itself; use erfc_scaling")
    return _lam(t)


def phi1(mu, t) -> float:
    """Exponential decay rate of ``|g - step|``; vanishes as ``mu -> 1``."""
    lam = _check_rate_args(mu, t)
    r = _root(mu, lam)
    return (
        -mu * math.log(mu)
        - (1 + mu) * math.log((1 + mu + r) / (2 * mu * (1 + lam)))
        + (1 - mu) * math.log(saddle_points(mu, lam)[1])
    )


def phi0(mu, t) -> float:
    """Constant-order term of ``-log |g - step|`` (the ``log s / 2`` is kept separate)."""
    lam = _check_rate_args(mu, t)
    r = _root(mu, lam)
    z_plus = saddle_points(mu, lam)[1]
    return math.log(abs(1 - z_plus)) - math.log(1 + lam) + 0.5 * math.log(2 * math.pi * mu * r)


def g_asymptotic(m: int, s: int, t) -> AsymptoticEstimate:
    if s < MIN_S:
        raise DomainError(f"asymptotics need s >= {MIN_S}")
    mu = m / s
    if abs(mu - 1) < WINDOW_HALF_WIDTH:
        raise WindowError(f"mu = {mu:.4g} is within {WINDOW_HALF_WIDTH} of the step; use erfc_scaling")
    t = float(t)
    log_corr = -s * phi1(mu, t) - phi0(mu, t) - 0.5 * math.log(s)
    return AsymptoticEstimate(1.0 if mu < 1 else 0.0, log_corr, 1 if mu > 1 else -1)


def log_abs_fraction(x: Fraction) -> float:
    """``log |x|`` for a rational far outside double range."""
    if x == 0:
        raise DomainError("log of zero")
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def exact_log_deviation(m: int, s: int, t) -> float:
    """``log |g(m, s) - step|`` from the exact rational one-point value."""
    t = as_scalar(t)
    step = 1 if m < s else 0
    return log_abs_fraction(g_value(m, s, t) - step)


# ---------------------------------------------------------------------------
# The erfc window
# ---------------------------------------------------------------------------


def erfc_eval(x: float) -> float:
    return math.erfc(x)


def erfc_scaling(v, t) -> float:
    """Limit of ``g(s + floor(v sqrt s), s)`` as ``s`` grows."""
    return 0.5 * erfc_eval(v / (2 * math.sqrt(_lam(t))))


def window_column(s: int, v: float) -> int:
    return s + math.floor(v * math.sqrt(s))


def window_errors(s: int, t, vs=(-2, -1, 0, 1, 2)) -> dict:
    """``{v: |g_exact - erfc limit|}`` at the columns ``s + floor(v sqrt s)``."""
    t = as_scalar(t)
    return {v: abs(float(g_value(window_column(s, v), s, t)) - erfc_scaling(v, t)) for v in vs}


# ---------------------------------------------------------------------------
# The ODE-driven expansion of d/dt log g
# ---------------------------------------------------------------------------


def _sigma_args(mu, t, complement):
    if mu <= 0:
        raise DomainError("need mu > 0")
    if mu == 1:
        raise WindowError("mu = 1: the expansion breaks down at the step")
    t = float(t)
    if not 0 < t < 1:
        raise DomainError("t must lie in (0, 1)")
    # above the step g itself decays; below the step 1 - g does
    return t, (mu > 1) != bool(complement)


def _sigma1_parts(mu, t):
    d = math.sqrt((mu - 1) ** 2 * (1 - t) ** 2 + 4 * mu * t * t)
    e = d + t * (1 + mu)
    return d, e


def sigma1(mu, t, complement: bool = False) -> float:
    """Leading coefficient of ``d/dt log g`` (``log(1-g)`` with ``complement``) per unit ``s``.

    The nontrivial root of the cubic, written without the ``1 - 2t`` denominator so
    that ``t = 1/2`` needs no special case. The decaying side is the one with
    ``mu > 1`` for ``g`` and ``mu < 1`` for ``1 - g``; the other side is identically 0.
    """
    t, nontrivial = _sigma_args(mu, t, complement)
    if not nontrivial:
        return 0.0
    _, e = _sigma1_parts(mu, t)
    return (mu - 1) ** 2 / (t * e)


def sigma1_derivative(mu, t, complement: bool = False) -> float:
    """Analytic ``t``-derivative of :func:`sigma1`."""
    t, nontrivial = _sigma_args(mu, t, complement)
    if not nontrivial:
        return 0.0
    d, e = _sigma1_parts(mu, t)
    d_prime = (-(mu - 1) ** 2 * (1 - t) + 4 * mu * t) / d
    e_prime = d_prime + 1 + mu
    return -(mu - 1) ** 2 * (e + t * e_prime) / (t * e) ** 2


def sigma1_cubic(sigma, mu, t) -> float:
    return t * t * (1 - 2 * t) * sigma ** 3 + 2 * t * t * (1 + mu) * sigma ** 2 - (mu - 1) ** 2 * sigma


def sigma0(mu, t, complement: bool = False) -> float:
    """Next coefficient of the expansion, from the closed form in ``sigma1`` and ``sigma1'``."""
    t, nontrivial = _sigma_args(mu, t, complement)
    if not nontrivial:
        return 0.0
    s1 = sigma1(mu, t, complement)
    ds1 = sigma1_derivative(mu, t, complement)
    u = 1 - t
    den = (1 - mu) ** 2 - 4 * (mu + 1) * t * t * s1 - 3 * (1 - 2 * t) * t * t * s1 * s1
    num = (
        2 * (1 + mu) * t * t * ds1
        + 3 * (1 - 2 * t) * t * t * s1 * ds1
        - (3 * (1 - mu) - 4 * (mu + 2) * t + 8 * (mu + 1) * t * t) / (2 * u) * s1
        + 2 * ((1 - mu) * (1 + 5 * t * t) - (5 - 6 * mu) * t) / ((1 - mu) * u) * t * s1 * s1
        + (1 - 2 * t) / (2 * (1 - mu) * u) * t * t * s1 ** 3
    )
    return num / den


def _ode_by_power_of_s(mu, t):
    """Coefficients of each ODE polynomial by power of ``s`` at fixed ``mu`` and ``t``."""
    s = Poly.t()
    coeffs = ode_coefficients(s * Fraction(mu), s, Fraction(t))
    return [[float(p.coeff(k)) for k in range(4)] for p in coeffs]


def sigma0_from_ode(mu, t, complement: bool = False) -> float:
    """Same quantity as :func:`sigma0`, obtained by balancing the ``s^3`` terms of the ODE table.

    With ``g' = sigma g`` the ODE for ``y = g'`` becomes
    ``P2 (sigma^3 + 3 sigma sigma' + sigma'') + P1 (sigma^2 + sigma') + P0 sigma = 0``.
    """
    t, nontrivial = _sigma_args(mu, t, complement)
    if not nontrivial:
        return 0.0
    s1 = sigma1(mu, t, complement)
    ds1 = sigma1_derivative(mu, t, complement)
    (p20, p21, _, _), (_, p11, p12, _), (_, _, p02, p03) = _ode_by_power_of_s(mu, t)
    num = 3 * p21 * s1 * ds1 + p20 * s1 ** 3 + p12 * ds1 + p11 * s1 ** 2 + p02 * s1
    den = 3 * p21 * s1 ** 2 + 2 * p12 * s1 + p03
    return -num / den


def sigma1_leading_balance(mu, t) -> float:
    """Residual of the ``s^4`` balance of the ODE table at :func:`sigma1`; zero when consistent."""
    s1 = sigma1(mu, t, complement=mu < 1)
    (_, p21, _, _), (_, _, p12, _), (_, _, _, p03) = _ode_by_power_of_s(mu, t)
    return p21 * s1 ** 3 + p12 * s1 ** 2 + p03 * s1


# ---------------------------------------------------------------------------
# Small-t expansion
# ---------------------------------------------------------------------------


def small_t_leading(m: int, s: int) -> tuple[int, Fraction, Fraction]:
    """``(exponent k, c_k, c_(k+1))`` of the lowest terms of ``g`` (``s < m``) or ``1 - g`` (``s > m``)."""
    if m < 1 or s < 1:
        raise DomainError("need m, s >= 1")
    if m == s:
        raise DomainError("m = s: neither small-t expansion applies")
    if s < m:
        c = Fraction(comb(m - 1, s - 1))
        return m - s, c, -c * (2 * s - Fraction(m, m - s + 1))
    c = Fraction(comb(s, m - 1))
    return s - m + 1, c, -c * (2 * m - 2 - Fraction(m - 1, s - m + 2))


def small_t_from_series(m: int, s: int) -> tuple[int, Fraction, Fraction]:
    """Same triple read off the exact polynomial."""
    if m == s:
        raise DomainError("m = s: neither small-t expansion applies")
    p = g_series(m, s) if s < m else 1 - g_series(m, s)
    k = p.lowest_degree()
    return k, p.coeff(k), p.coeff(k + 1)
