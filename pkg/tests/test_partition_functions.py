from fractions import Fraction

import pytest

from conftest import distinct_unit_rationals, generic_lattice
from pdwbc.errors import DegenerateInputError, DomainError, PoleError
from pdwbc.lattice_oracle import LatticeSpec, b_weight, z_bruteforce
from pdwbc.partition_functions import (
    _z_partial_homogeneous_varphi,
    factorial,
    hankel_factorial_det,
    partition_function,
    varphi,
    varphi_derivative,
    z_foda_wheeler,
    z_homogeneous,
    z_kostov,
    z_partial_homogeneous,
)
from pdwbc.scalar import TruncSeries

HALF, THIRD = Fraction(1, 2), Fraction(1, 3)


class TestDeterminantFormulas:
    def test_single_vertex(self):
        lam, nu = Fraction(5, 3), Fraction(1, 7)
        assert z_foda_wheeler([lam], [nu]) == (lam - nu) * varphi(lam, nu) == 1 / (lam - nu + 1)

    def test_one_row(self, rng):
        assert z_foda_wheeler([3], [0, 1]) == z_bruteforce(LatticeSpec.inhomogeneous([3], [0, 1]))
        lam, *nus = [Fraction(7, 2), Fraction(1, 5), Fraction(-2, 3), Fraction(4)]
        prod_b = b_weight(lam, nus[0]) * b_weight(lam, nus[1]) * b_weight(lam, nus[2])
        assert z_kostov([lam], nus) == 1 - prod_b

    def test_kostov_homogeneous_column_limit(self):
        lam = Fraction(1, 2)  # t = 1/3
        assert z_kostov([lam], [0, 0]) == 1 - THIRD ** 2

    @pytest.mark.parametrize("s,N", [(s, N) for N in range(1, 6) for s in range(1, N + 1)])
    def test_cross_formula(self, s, N, rng):
        for _ in range(3):
            lams, nus = generic_lattice(rng, s, N)
            z = z_bruteforce(LatticeSpec.inhomogeneous(lams, nus))
            assert z_foda_wheeler(lams, nus) == z
            assert z_kostov(lams, nus) == z

    def test_degenerate(self):
        with pytest.raises(DegenerateInputError):
            z_foda_wheeler([1, 1], [5, 6])
        with pytest.raises(DegenerateInputError):
            z_foda_wheeler([1, 2], [5, 5, 6])
        with pytest.raises(DegenerateInputError):
            z_kostov([2, 2], [0, 0])
        with pytest.raises(PoleError):
            z_foda_wheeler([1], [1])


class TestVarphi:
    def test_examples(self):
        assert varphi_derivative(0, HALF) == HALF
        assert varphi_derivative(1, HALF) == Fraction(-3, 4)

    def test_against_series_differentiation(self):
        for t in (THIRD, Fraction(2, 7)):
            lam = t / (1 - t)
            order = 10
            x = TruncSeries.variable(lam, order)
            phi = 1 / (x * (x + 1))
            for n in range(order + 1):
                assert phi[n] * factorial(n) == varphi_derivative(n, t)

    def test_pole(self):
        with pytest.raises(PoleError):
            varphi_derivative(0, 0)


class TestHomogeneous:
    def test_partial_small_cases(self):
        for N in range(1, 6):
            assert z_partial_homogeneous([THIRD], N) == 1 - THIRD ** N
        ts = [THIRD, HALF]
        lams = [t / (1 - t) for t in ts]
        assert z_partial_homogeneous(ts, 3) == z_kostov(lams, [0, 0, 0])

    def test_partial_against_bruteforce(self, rng):
        for N in range(1, 6):
            for s in range(1, N + 1):
                ts = distinct_unit_rationals(rng, s)
                z = z_bruteforce(LatticeSpec.from_row_t(ts, N))
                assert z_partial_homogeneous(ts, N) == z
                assert _z_partial_homogeneous_varphi(ts, N) == z

    def test_partial_degenerate(self):
        with pytest.raises(DegenerateInputError):
            z_partial_homogeneous([THIRD, THIRD], 3)
        with pytest.raises(DomainError):
            z_partial_homogeneous([THIRD, THIRD], 1)

    def test_hankel_small_cases(self):
        for N in range(1, 6):
            assert z_homogeneous(THIRD, 1, N) == 1 - THIRD ** N
        assert z_homogeneous(HALF, 2, 3) == z_bruteforce(LatticeSpec.homogeneous(2, 3, HALF))

    def test_hankel_against_bruteforce(self):
        for t in (Fraction(1, 4), HALF, Fraction(3, 4)):
            for N in range(1, 6):
                for s in range(1, N + 1):
                    assert z_homogeneous(t, s, N) == z_bruteforce(LatticeSpec.homogeneous(s, N, t))

    def test_confluence(self):
        t, s, N = THIRD, 3, 5
        target = z_homogeneous(t, s, N)
        gaps = []
        for k in (3, 6):
            eps = Fraction(1, 10 ** k)
            gaps.append(abs(z_partial_homogeneous([t + j * eps for j in range(s)], N) - target))
        assert gaps[1] < gaps[0] < Fraction(1, 100)

    def test_semi_infinite_limit(self):
        s, t = 3, HALF
        prev = None
        for N in range(s + 1, s + 16):
            dev = abs(z_homogeneous(t, s, N) - 1)
            # the tail carries a polynomial prefactor, roughly N^2 / 16 at s = 3
            assert dev <= N ** 2 * t ** (N - s)
            if prev is not None:
                assert dev < prev
            prev = dev

    def test_factorial_hankel(self):
        assert hankel_factorial_det(0, 2) == 1
        assert hankel_factorial_det(1, 2) == 2
        assert hankel_factorial_det(2, 3) == 576
        for alpha in range(7):
            for s in range(1, 6):
                hankel_factorial_det(alpha, s)


class TestDispatch:
    def test_tags(self):
        kw = dict(t=THIRD, s=2, N=3)
        assert partition_function("hankel", **kw).value == partition_function("bruteforce", **kw).value
        r = partition_function("partial", ts=[THIRD, HALF], N=3)
        assert r.formula_tag == "partial"
        lams, nus = [Fraction(3), Fraction(7, 2)], [Fraction(0), Fraction(1, 3)]
        vals = {partition_function(f, lambdas=lams, nus=nus).value for f in ("fw", "kostov", "bruteforce")}
        assert len(vals) == 1

    def test_unknown(self):
        with pytest.raises(DomainError):
            partition_function("izergin")
