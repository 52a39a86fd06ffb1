"""Exact arithmetic: rationals, polynomials in ``t``, truncated power series, determinants.

Rationals are plain :class:`fractions.Fraction`; everything else here is built on top
of them. All objects are immutable.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DimensionError, PoleError

ExactScalar = Fraction
Scalarish = Union[int, Fraction, str]


def as_scalar(x) -> Fraction:
    """Convert ``x`` to an exact rational.

    Accepts ints, Fractions, ``"p/q"`` strings and decimal strings (``"0.25"``);
    decimals are converted exactly. Floats are refused, since they are not exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def _is_zero(x) -> bool:
    return x == 0


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Univariate polynomial with rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def t(cls) -> "Poly":
        """The monomial ``t``."""
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def lowest_degree(self) -> int:
        """Index of the first nonzero coefficient (``-1`` for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead = o.coeffs[-1]
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            q[k] = c
            if c:
                for i, b in enumerate(o.coeffs):
                    rem[k + i] -= c * b
        return Poly(q), Poly(rem)

    def __truediv__(self, other):
        """Exact division; raises ``ArithmeticError`` when a remainder is left."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return Poly(c / other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, (Poly, TruncSeries)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series in ``(w - center)`` known up to and including ``x**order``."""

    __slots__ = ("center", "order", "coeffs")

    def __init__(self, coeffs: Sequence, center=0, order: int | None = None):
        cs = [as_scalar(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        object.__setattr__(self, "center", as_scalar(center))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def variable(cls, center, order: int) -> "TruncSeries":
        """The series of ``w`` itself: ``center + x``."""
        return cls([center, 1], center, order)

    @classmethod
    def constant(cls, c, center, order: int) -> "TruncSeries":
        return cls([c], center, order)

    @classmethod
    def from_poly(cls, p: Poly, center, order: int) -> "TruncSeries":
        """Taylor expansion of ``p(w)`` around ``center``."""
        w = cls.variable(center, order)
        return p(w) if not p.is_zero() else cls([], center, order)

    def _like(self, coeffs) -> "TruncSeries":
        return TruncSeries(coeffs, self.center, self.order)

    def _check(self, other: "TruncSeries"):
        if other.center != self.center or other.order != self.order:
            raise DimensionError("series must share center and order")

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return self._like([other])

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __add__(self, other):
        if not isinstance(other, (TruncSeries, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return self._like(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._like(-a for a in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (TruncSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like(a * other for a in self.coeffs)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        K = self.order
        out = [Fraction(0)] * (K + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(K + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise PoleError("series has zero constant term; factor the pole out first")
        K = self.order
        inv = [Fraction(0)] * (K + 1)
        inv[0] = 1 / a0
        for n in range(1, K + 1):
            acc = sum((self.coeffs[k] * inv[n - k] for k in range(1, n + 1)), Fraction(0))
            inv[n] = -acc / a0
        return self._like(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series division by zero")
            return self._like(a / other for a in self.coeffs)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result, base = self._like([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.center, self.order, self.coeffs) == (other.center, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.center, self.order, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({list(map(str, self.coeffs))}, center={self.center}, order={self.order})"


def series_arith(a: TruncSeries, b, op: str) -> TruncSeries:
    """Dispatch ``add | mul | div | int-pow`` on truncated series (``b`` is the exponent for pow)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "int-pow":
        if not isinstance(b, int):
            raise TypeError("int-pow needs an integer exponent")
        return a ** b
    raise ValueError(f"unknown series op {op!r}")


def residue_at_center(numerator: TruncSeries, pole_order: int) -> Fraction:
    """Residue of ``numerator(w) / (w - center)**pole_order``.

    ``numerator`` must be expanded to at least ``pole_order - 1``.
    """
    if pole_order <= 0:
        return Fraction(0)
    if numerator.order < pole_order - 1:
        raise ValueError("series not expanded far enough for this pole order")
    return numerator.coeffs[pole_order - 1]


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------


def det_exact(matrix):
    """Determinant by fraction-free Bareiss elimination.

    Works for any entries with exact ``+ - * /`` (Fractions, :class:`Poly` whose
    divisions are exact by construction of the algorithm). Row swaps are used when
    a pivot vanishes.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _is_zero(rows[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(rows[i][k]):
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return rows[k][k] * 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rik * rows[k][j]) / prev
            rows[i][k] = rows[i][k] * 0
        prev = pivot
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def vandermonde(xs: Sequence) -> Fraction:
    """``prod_{j<k} (x_k - x_j)``."""
    out = Fraction(1)
    for k in range(len(xs)):
        for j in range(k):
            out *= xs[k] - xs[j]
    return out


def binomial(n: int, k: int) -> Fraction:
    """Generalized binomial ``n(n-1)...(n-k+1)/k!`` for any integer ``n`` and ``k >= 0``."""
    if k < 0:
        return Fraction(0)
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Fraction(num, den)


def det_permutation(matrix):
    """Leibniz expansion; only for small matrices over rings without exact division."""
    from itertools import permutations

    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        term = term if inv % 2 == 0 else -term
        total = term if total is None else total + term
    return Fraction(1) if total is None else total
