"""Closed-form partition functions of the rational model with partial domain walls.

Inhomogeneous weights are ``b(lambda, nu) = (lambda-nu)/(lambda-nu+1)`` and
``c(lambda, nu) = 1/(lambda-nu+1)``; the homogeneous model uses ``t = b(lambda, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DegenerateInputError, DomainError, PoleError
from .lattice_oracle import b_weight
from .scalar import as_scalar, det_exact, vandermonde


@dataclass(frozen=True)
class PartitionResult:
    value: Fraction
    formula_tag: str


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return 1 if n < 2 else n * factorial(n - 1)


def _distinct(xs: Sequence, what: str, hint: str):
    if len(set(xs)) != len(xs):
        raise DegenerateInputError(f"{what} must be distinct; {hint}")


def varphi(lam, nu) -> Fraction:
    d = lam - nu
    if d == 0 or d == -1:
        raise PoleError("varphi has poles at lambda - nu in {0, -1}")
    return 1 / (Fraction(d) * (d + 1))


def z_foda_wheeler(lambdas: Sequence, nus: Sequence) -> Fraction:
    """``N x N`` determinant formula: ``s`` rows of ``varphi`` and ``N - s`` monomial rows."""
    lams = [as_scalar(x) for x in lambdas]
    nus = [as_scalar(x) for x in nus]
    s, N = len(lams), len(nus)
    if not 1 <= s <= N:
        raise DomainError("need 1 <= s <= N")
    hint = "use z_partial_homogeneous or z_homogeneous for coincident parameters"
    _distinct(lams, "lambdas", hint)
    _distinct(nus, "nus", hint)
    rows = []
    for i in range(1, N + 1):
        if i <= s:
            rows.append([varphi(lams[i - 1], nu) for nu in nus])
        else:
            rows.append([nu ** (N - i) for nu in nus])
    num = Fraction(1)
    for lam in lams:
        for nu in nus:
            num *= lam - nu
    # prod_{j<k} (nu_j - nu_k) is the reversed Vandermonde
    den = vandermonde(lams) * vandermonde(nus) * (-1) ** (N * (N - 1) // 2)
    return num / den * det_exact(rows)


def z_kostov(lambdas: Sequence, nus: Sequence) -> Fraction:
    """``s x s`` determinant ``det[lam_i^(j-1) - (lam_i+1)^(j-1) prod_k b(lam_i, nu_k)]`` over the lambda Vandermonde."""
    lams = [as_scalar(x) for x in lambdas]
    nus = [as_scalar(x) for x in nus]
    s = len(lams)
    _distinct(lams, "lambdas", "use z_homogeneous for coincident row parameters")
    rows = []
    for lam in lams:
        prod_b = Fraction(1)
        for nu in nus:
            prod_b *= b_weight(lam, nu)
        rows.append([lam ** j - (lam + 1) ** j * prod_b for j in range(s)])
    return det_exact(rows) / vandermonde(lams)


def varphi_derivative(n: int, t) -> Fraction:
    """``n``-th lambda-derivative of ``1/(lambda(lambda+1))`` at ``lambda = t/(1-t)``, expressed in ``t``."""
    t = as_scalar(t)
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if t == 0:
        raise PoleError("varphi has a pole at lambda = 0 (t = 0)")
    if not 0 < t < 1:
        raise DomainError("t must lie in (0, 1)")
    return (-1) ** n * factorial(n) * ((1 - t) / t) ** (n + 1) * (1 - t ** (n + 1))


def _check_row_t(ts):
    ts = [as_scalar(x) for x in ts]
    if any(not 0 < x < 1 for x in ts):
        raise DomainError("row parameters t_j must lie in (0, 1)")
    _distinct(ts, "row parameters t_j", "use z_homogeneous for the fully homogeneous model")
    return ts


def z_partial_homogeneous(ts: Sequence, N: int) -> Fraction:
    """Columns homogeneous (``nu = 0``), rows carry distinct ``t_j``."""
    ts = _check_row_t(ts)
    s = len(ts)
    if N < s:
        raise DomainError("need N >= s")
    rows = [[(1 - x) ** (j - 1) * (x ** (s - j) - x ** N) for j in range(1, s + 1)] for x in ts]
    sign = (-1) ** (s * (s - 1) // 2)
    return sign * det_exact(rows) / vandermonde(ts)


def _z_partial_homogeneous_varphi(ts: Sequence, N: int) -> Fraction:
    """Unsimplified form built from ``varphi`` derivatives; kept as a cross-check of the simplified one."""
    ts = _check_row_t(ts)
    s = len(ts)
    lams = [x / (1 - x) for x in ts]
    rows = [[varphi_derivative(N - s + i - 1, ts[j]) for j in range(s)] for i in range(1, s + 1)]
    pref = Fraction((-1) ** (s * (N - s)))
    for k in range(1, s + 1):
        pref /= factorial(N - k)
    for lam in lams:
        pref *= lam ** N
    return pref / vandermonde(lams) * det_exact(rows)


def z_homogeneous(t, s: int, N: int) -> Fraction:
    """Hankel-determinant formula for the fully homogeneous model."""
    t = as_scalar(t)
    if not 0 <= t < 1:
        raise DomainError("t must lie in [0, 1)")
    if not 1 <= s <= N:
        raise DomainError("need 1 <= s <= N")
    a = N - s
    rows = [[factorial(a + i + j) * (1 - t ** (a + i + j + 1)) for j in range(s)] for i in range(s)]
    den = 1
    for k in range(1, s + 1):
        den *= factorial(N - k)
    for k in range(1, s):
        den *= factorial(k)
    return Fraction(det_exact(rows)) / den


def hankel_factorial_det(alpha: int, s: int) -> int:
    """``det[(alpha+i+j-2)!]`` for ``i, j = 1..s``, checked against ``prod_j (alpha+j)! j!``."""
    if alpha < 0 or s < 1:
        raise DomainError("need alpha >= 0 and s >= 1")
    d = det_exact([[Fraction(factorial(alpha + i + j)) for j in range(s)] for i in range(s)])
    prod = 1
    for j in range(s):
        prod *= factorial(alpha + j) * factorial(j)
    if d != prod:
        raise ArithmeticError(f"Hankel determinant {d} disagrees with product {prod}")
    return prod


def partition_function(formula: str, **kw) -> PartitionResult:
    """Evaluate ``Z`` by tag: ``fw | kostov | partial | hankel | bruteforce``."""
    from .lattice_oracle import LatticeSpec, z_bruteforce

    if formula == "fw":
        v = z_foda_wheeler(kw["lambdas"], kw["nus"])
    elif formula == "kostov":
        v = z_kostov(kw["lambdas"], kw["nus"])
    elif formula == "partial":
        v = z_partial_homogeneous(kw["ts"], kw["N"])
    elif formula == "hankel":
        v = z_homogeneous(kw["t"], kw["s"], kw["N"])
    elif formula == "bruteforce":
        if "t" in kw:
            spec = LatticeSpec.homogeneous(kw["s"], kw["N"], kw["t"])
        else:
            spec = LatticeSpec.inhomogeneous(kw["lambdas"], kw["nus"])
        v = z_bruteforce(spec)
    else:
        raise DomainError(f"unknown formula tag {formula!r}")
    return PartitionResult(v, formula)
