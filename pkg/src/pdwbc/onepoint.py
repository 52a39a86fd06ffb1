"""Boundary one-point function in all its exact representations.

``g(m, s)`` is the probability that a line leaves the semi-infinite strip (``N = inf``)
through the top of column ``m``; it is a polynomial in the weight ``t``. Finite ``N``
versions take distinct row parameters ``t_j``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .errors import DegenerateInputError, DomainError, PoleError, ResourceGuardError
from .lattice_oracle import check_pattern
from .partition_functions import z_partial_homogeneous
from .scalar import (
    Poly,
    TruncSeries,
    as_scalar,
    binomial,
    det_exact,
    det_permutation,
    residue_at_center,
    vandermonde,
)

T = Poly.t()
ONE_MINUS_T = Poly([1, -1])


def _open_unit(t, name="t") -> Fraction:
    t = as_scalar(t)
    if not 0 < t < 1:
        raise DomainError(f"{name} must lie in (0, 1), got {t}")
    return t


def _row_ts(ts: Sequence, hint: str) -> list[Fraction]:
    ts = [_open_unit(x, "t_j") for x in ts]
    if len(set(ts)) != len(ts):
        raise DegenerateInputError(f"row parameters must be distinct; {hint}")
    return ts


def tau(tj, w):
    """``b(lambda_j, nu)`` after ``w = (nu - 1)/nu``, ``t_j = b(lambda_j, 0)``."""
    return (1 - 2 * tj + tj * w) / (w - tj)


# ---------------------------------------------------------------------------
# Terminating series
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def g_series(m: int, s: int) -> Poly:
    """``g(m, s)`` as an exact polynomial in ``t``.

    ``sum_j C(m-1, j) (1-t)^(2j+1) t^(m-1-j) (1/j!) d^j/dt^j [1 + t + ... + t^(s-1)]``,
    with ``j`` running to ``min(m, s) - 1``. ``g(m, 0) = 0`` by convention.
    """
    if m < 1 or s < 0:
        raise DomainError("need m >= 1 and s >= 0")
    out = Poly()
    for j in range(min(m, s)):
        # (1/j!) d^j of the geometric polynomial
        dgeo = Poly(comb(k, j) for k in range(j, s))
        out = out + ONE_MINUS_T ** (2 * j + 1) * Poly.monomial(m - 1 - j, comb(m - 1, j)) * dgeo
    return out


def g_value(m: int, s: int, t) -> Fraction:
    """Exact ``g(m, s)`` at rational ``t`` using integer arithmetic only.

    Same double sum as :func:`g_series`; cheap enough for ``s`` in the hundreds.
    """
    t = as_scalar(t)
    if m < 1 or s < 0:
        raise DomainError("need m >= 1 and s >= 0")
    if s == 0:
        return Fraction(0)
    p, q = t.numerator, t.denominator
    r = q - p
    jmax = min(m, s) - 1
    ppow = [1] * (m + s)
    qpow = [1] * (m + s)
    for i in range(1, m + s):
        ppow[i] = ppow[i - 1] * p
        qpow[i] = qpow[i - 1] * q
    total = 0
    rpow = r
    r2 = r * r
    for j in range(jmax + 1):
        # sum_{k=j}^{s-1} C(k, j) p^(k-j) q^(s-1-k)
        inner = 0
        c = 1
        for k in range(j, s):
            inner += c * ppow[k - j] * qpow[s - 1 - k]
            c = c * (k + 1) // (k + 1 - j)
        total += comb(m - 1, j) * rpow * ppow[m - 1 - j] * inner
        rpow *= r2
    return Fraction(total, q ** (m + s - 1))


# ---------------------------------------------------------------------------
# Contour-integral representations
# ---------------------------------------------------------------------------


def g_residue_homogeneous(m: int, s: int, t) -> Fraction:
    """Order-``s`` residue at ``w = t`` of ``w^(m-1) ((1-2t+tw)/(w-t))^s / (1-w)``."""
    t = _open_unit(t)
    if m < 1 or s < 1:
        raise DomainError("need m, s >= 1")
    order = s - 1
    w = TruncSeries.variable(t, order)
    numerator = w ** (m - 1) * (1 - 2 * t + t * w) ** s / (1 - w)
    return residue_at_center(numerator, s)


def g_semiinf_inhomogeneous(ts: Sequence, m: int) -> Fraction:
    """Sum of simple-pole residues of ``w^(m-1)/(1-w) prod_j tau(t_j, w)`` at ``w = t_j``."""
    ts = _row_ts(ts, "use g_residue_homogeneous for the homogeneous model")
    if m < 1:
        raise DomainError("need m >= 1")
    total = Fraction(0)
    for j, tj in enumerate(ts):
        # Res tau(t_j, w) at t_j is (1-t_j)^2; divided by (1 - t_j)
        term = tj ** (m - 1) * (1 - tj)
        for l, tl in enumerate(ts):
            if l != j:
                term *= tau(tl, tj)
        total += term
    return total


def _finite_rows(ts, N, w):
    """Rows ``(1-t_i)^(s-k) (t_i^(k-1) tau(t_i, w) - t_i^N)``: the tau product folded into the determinant."""
    s = len(ts)
    return [[(1 - x) ** (s - k) * (x ** (k - 1) * tau(x, w) - x ** N) for k in range(1, s + 1)] for x in ts]


def _check_finite(ts, N, m):
    ts = _row_ts(ts, "the finite-N formula needs distinct row parameters")
    if N < len(ts):
        raise DomainError("need N >= s")
    if not 1 <= m <= N:
        raise DomainError(f"column m={m} outside 1..{N}")
    return ts


def _residues_at_rows(ts, N, m) -> Fraction:
    s = len(ts)
    total = Fraction(0)
    for j, tj in enumerate(ts):
        rows = []
        for i, x in enumerate(ts):
            if i == j:
                rows.append([(1 - x) ** (s - k) * x ** (k - 1) * (1 - x) ** 2 for k in range(1, s + 1)])
            else:
                rows.append([(1 - x) ** (s - k) * (x ** (k - 1) * tau(x, tj) - x ** N) for k in range(1, s + 1)])
        total += tj ** (m - 1) / (1 - tj) * det_exact(rows)
    return total


def g_finite_N(ts: Sequence, N: int, m: int) -> Fraction:
    """Down-arrow probability at column ``m`` of the ``s x N`` lattice with row parameters ``t_j``.

    Sum of the residues at ``w = t_j`` of the contour integrand, normalised by the
    partition function.
    """
    ts = _check_finite(ts, N, m)
    Z = z_partial_homogeneous(ts, N)
    return _residues_at_rows(ts, N, m) / vandermonde(ts) / Z


def residue_at_one(ts: Sequence, N: int, m: int = 1) -> Fraction:
    """Minus the residue at ``w = 1`` of the finite-N integrand (with its Vandermonde prefactor).

    Since ``tau(t, 1) = 1`` this reproduces ``Z`` exactly, independently of ``m``.
    """
    ts = _check_finite(ts, N, m)
    # w^(m-1)/(1-w) has residue -1 at w = 1
    return det_exact(_finite_rows(ts, N, Fraction(1))) / vandermonde(ts)


def g_up_finite_N(ts: Sequence, N: int, m: int) -> Fraction:
    """Up-arrow probability from the large-contour integral, evaluated as a residue at infinity.

    Independent of :func:`g_finite_N`: it never touches the poles at ``t_j`` or ``1``.
    """
    ts = _check_finite(ts, N, m)
    order = m - 1
    u = TruncSeries.variable(0, order)
    rows = []
    for x in ts:
        tau_inf = (u * (1 - 2 * x) + x) / (1 - x * u)
        rows.append([(1 - x) ** (len(ts) - k) * (x ** (k - 1) * tau_inf - x ** N) for k in range(1, len(ts) + 1)])
    D = det_permutation(rows)
    # integrand at w = 1/u, times 1/u^2: u^(-m) D(u) / (u - 1)
    integral = (D / (u - 1))[m - 1]
    return -integral / vandermonde(ts) / z_partial_homogeneous(ts, N)


# ---------------------------------------------------------------------------
# Jacobi polynomials
# ---------------------------------------------------------------------------


def jacobi_eval(n: int, alpha: int, beta: int, t) -> Fraction:
    """``P_n^(alpha, beta)(1 - 2t)`` by coefficient extraction from the Rodrigues formula.

    The ``n``-th Taylor coefficient of ``z^(n+alpha) (1-z)^(n+beta)`` at ``z = t`` times
    ``t^(-alpha) (1-t)^(-beta)``; negative powers go through exact series division.
    """
    t = as_scalar(t)
    if n < 0:
        raise DomainError("need n >= 0")
    if t == 0 and (alpha > 0 or n + alpha < 0):
        raise PoleError("t = 0 with a negative power of t")
    if t == 1 and (beta > 0 or n + beta < 0):
        raise PoleError("t = 1 with a negative power of 1 - t")
    z = TruncSeries.variable(t, n)
    coeff = (z ** (n + alpha) * (1 - z) ** (n + beta))[n]
    return coeff * t ** (-alpha) * (1 - t) ** (-beta) if (alpha or beta) else coeff


def jacobi_hypergeometric(n: int, alpha: int, beta: int, t) -> Fraction:
    """Finite sum ``sum_k C(n+alpha, n-k) C(n+beta, k) (-t)^k (1-t)^(n-k)`` with generalized binomials."""
    t = as_scalar(t)
    return sum(
        (binomial(n + alpha, n - k) * binomial(n + beta, k) * (-t) ** k * (1 - t) ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def g_jacobi(m: int, s: int, t) -> Fraction:
    """``t^(m-s) sum_j C(s, j) (-t)^j P_(s-1)^(m-s, j-s)(1-2t)``."""
    t = _open_unit(t)
    if m < 1 or s < 1:
        raise DomainError("need m, s >= 1")
    total = sum((comb(s, j) * (-t) ** j * jacobi_eval(s - 1, m - s, j - s, t) for j in range(s + 1)), Fraction(0))
    return t ** (m - s) * total


# ---------------------------------------------------------------------------
# Exit-pattern partition functions
# ---------------------------------------------------------------------------


def _parity(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]) % 2


def z_exit_coordinate(pattern: Sequence[int], ts: Sequence) -> Fraction:
    """Coordinate Bethe-ansatz sum for the partition function with pinned exits."""
    ts = _row_ts(ts, "use z_exit_homogeneous for the homogeneous model")
    pattern = tuple(pattern)
    s = len(ts)
    check_pattern(pattern, s)
    total = Fraction(0)
    for perm in permutations(range(s)):
        term = Fraction(1)
        for j in range(s):
            term *= ts[perm[j]] ** (pattern[j] - 1)
        for j in range(s):
            for k in range(j + 1, s):
                x, y = ts[perm[j]], ts[perm[k]]
                term *= 1 - 2 * x + x * y
        total += -term if _parity(perm) else term
    pref = Fraction(1)
    for x in ts:
        pref *= 1 - x
    return pref * total / vandermonde(ts)


MAX_EXIT_S = 5


def _mul_trunc(a: dict, b: dict, cap: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if max(e) > cap:
                continue
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def z_exit_integral(pattern: Sequence[int], t) -> Fraction:
    """The ``s``-fold residue at ``z_j = t`` exactly as the multiple-integral formula is printed.

    Coefficient of ``prod_j x_j^(s-1)`` in ``prod_j z_j^(r_j-1) prod_{j<k} p(z_j, z_k)``
    with ``z_j = t + x_j`` and ``p(x, y) = (x - y)(1 - 2x + xy)``.
    """
    t = _open_unit(t)
    pattern = tuple(pattern)
    s = len(pattern)
    check_pattern(pattern, s)
    if s > MAX_EXIT_S:
        raise ResourceGuardError(f"nested residues limited to s <= {MAX_EXIT_S}")
    cap = s - 1
    zero = (0,) * s

    def unit(j, k):
        e = [0] * s
        e[j] = k
        return tuple(e)

    poly = {zero: Fraction(1)}
    for j, r in enumerate(pattern):
        factor = {unit(j, a): comb(r - 1, a) * t ** (r - 1 - a) for a in range(min(r - 1, cap) + 1)}
        poly = _mul_trunc(poly, factor, cap)
    for j in range(s):
        for k in range(j + 1, s):
            ej, ek = unit(j, 1), unit(k, 1)
            diff = {ej: Fraction(1), ek: Fraction(-1)}
            # 1 - 2 z_j + z_j z_k in the shifted variables
            second = {
                zero: (1 - t) ** 2,
                ej: t - 2,
                ek: t,
                tuple(a + b for a, b in zip(ej, ek)): Fraction(1),
            }
            poly = _mul_trunc(poly, _mul_trunc(diff, second, cap), cap)
    return poly.get((cap,) * s, Fraction(0))


def exit_normalization(s: int, t) -> Fraction:
    """Factor turning :func:`z_exit_integral` into the lattice partition function: ``(1-t)^s``."""
    return (1 - as_scalar(t)) ** s


def z_exit_homogeneous(pattern: Sequence[int], t, raw: bool = False) -> Fraction:
    """Homogeneous partition function with exits pinned at ``pattern`` (independent of ``N >= r_s``).

    ``raw=True`` returns the bare multiple integral; the default multiplies by the
    product of the ``c``-weights, ``(1-t)^s``, which matches the lattice.
    """
    value = z_exit_integral(pattern, t)
    return value if raw else value * exit_normalization(len(tuple(pattern)), t)


MAX_EXIT_SUM_S = 4


def g_from_exit_sum(m: int, s: int, t, M: int, finite: bool = False) -> Fraction:
    """Sum of pinned-exit partition functions over patterns in ``{1..M}`` that contain ``m``.

    With ``finite=False`` this is a truncation of the semi-infinite value (``Z = 1``).
    With ``finite=True`` it is divided by the sum over all patterns, which is exactly
    the ``s x M`` lattice one-point function.
    """
    t = _open_unit(t)
    if s > MAX_EXIT_SUM_S:
        raise ResourceGuardError(f"pattern sums limited to s <= {MAX_EXIT_SUM_S}")
    if not 1 <= m <= M or M < s:
        raise DomainError("need 1 <= m <= M and M >= s")
    hit = Fraction(0)
    total = Fraction(0)
    for pattern in combinations(range(1, M + 1), s):
        if not finite and m not in pattern:
            continue
        z = z_exit_homogeneous(pattern, t)
        total += z
        if m in pattern:
            hit += z
    return hit / total if finite else hit


# ---------------------------------------------------------------------------
# Finite differences and the ODE
# ---------------------------------------------------------------------------


def hyp2f1_coefficients(a: int, b: int, c: int) -> list[Fraction]:
    """Coefficients of the terminating ``2F1(a, b; c; z)`` (``a <= 0``)."""
    if a > 0:
        raise DomainError("need a <= 0 for termination")
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for k in range(-a):
        if c + k == 0:
            if (a + k) * (b + k) == 0:
                break
            raise PoleError("c reaches a nonpositive integer before the series terminates")
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1))
        coeffs.append(term)
    return coeffs


def hyp2f1_terminating(a: int, b: int, c: int, z) -> Fraction:
    if c <= 0 and c > a:
        raise PoleError("c is a nonpositive integer reached before termination")
    z = as_scalar(z)
    out = Fraction(0)
    for k, ck in enumerate(hyp2f1_coefficients(a, b, c)):
        out += ck * z ** k
    return out


def _hyp_times_power(coeffs, prefactor: Poly, exponent: int) -> Poly:
    """``prefactor * t^exponent * sum_k c_k ((1-t)/t)^(2k)`` cleared to a polynomial."""
    out = Poly()
    for k, ck in enumerate(coeffs):
        if not ck:
            continue
        e = exponent - 2 * k
        if e < 0:
            raise ArithmeticError("negative power of t survives in the closed form")
        out = out + prefactor * ONE_MINUS_T ** (2 * k) * Poly.monomial(e, ck)
    return out


def delta_s(m: int, s: int) -> Poly:
    """Closed form of ``g(m, s) - g(m, s-1)``."""
    if m < 1 or s < 1:
        raise DomainError("need m, s >= 1")
    coeffs = hyp2f1_coefficients(-s + 1, -m + 1, 1)
    return _hyp_times_power(coeffs, ONE_MINUS_T, m + s - 2)


def delta_m(m: int, s: int) -> Poly:
    """Closed form of ``g(m, s) - g(m-1, s)``; needs ``m >= 2`` since ``g(0, s)`` is undefined."""
    if m < 2 or s < 1:
        raise DomainError("delta_m needs m >= 2 (g(0, s) is undefined) and s >= 1")
    coeffs = hyp2f1_coefficients(-s + 1, -m + 2, 2)
    return _hyp_times_power(coeffs, ONE_MINUS_T ** 2 * (-s), m + s - 3)


def ode_coefficients(m, s, t=T):
    """Coefficients ``(P2, P1, P0)`` of ``P2 y'' + P1 y' + P0 y = 0`` with ``y = dg/dt``.

    Generic in the ring: ``m``, ``s`` and ``t`` may be ints, Fractions or :class:`Poly`
    (the default ``t`` gives polynomials in ``t``). This is the single transcription
    used both here and by the large-``s`` expansion.
    """
    u = 1 - t
    P2 = (1 + 2 * (s - m) * u) * u * (1 - 2 * t) * t * t
    P1 = 2 * (
        1 - 6 * t + 6 * t * t
        - 2 * m * u * u * (1 - 5 * t)
        + 2 * s * u * (1 - 5 * t + 5 * t * t)
        + 2 * (s * s - m * m) * u * u * t
    ) * t
    P0 = -(
        6 * (1 - 2 * t) * t
        - m * (1 + 13 * t - 34 * t * t + 16 * t * t * t)
        + s * (1 + 7 * t - 22 * t * t + 16 * t * t * t)
        + (3 * (s - m) ** 2 - 4 * (2 * s * s - s * m - m * m) * t + 8 * (s * s - m * m) * t * t) * u
        + 2 * (s - m) ** 3 * u * u
    )
    return P2, P1, P0


def ode_residual(m: int, s: int) -> Poly:
    """Left side of the ODE with ``y = d/dt g_series(m, s)``; identically zero when the ODE holds."""
    y = g_series(m, s).derivative()
    P2, P1, P0 = ode_coefficients(m, s)
    return P2 * y.derivative().derivative() + P1 * y.derivative() + P0 * y
