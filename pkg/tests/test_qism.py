from fractions import Fraction

import numpy as np
import pytest

from conftest import distinct_unit_rationals, generic_lattice, generic_rationals
from pdwbc.errors import DomainError, ResourceGuardError
from pdwbc.lattice_oracle import LatticeSpec, g_down_bruteforce, z_bruteforce
from pdwbc.qism import (
    build_L,
    build_R,
    f_fun,
    g_fun,
    g_up_bracket,
    monodromy_blocks,
    random_rational,
    verify_ab_algebra,
    verify_rll,
    verify_rtt,
    z_bracket,
    z_bracket_horizontal,
)

HALF = Fraction(1, 2)


class TestOperators:
    def test_L_at_unit_difference(self):
        L = build_L(1, 0)
        P = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=object)
        assert np.array_equal(L, (np.eye(4, dtype=object) + P) * HALF)

    def test_L_entries(self):
        L = build_L(2, 0)
        assert L[0, 0] == 1 and L[3, 3] == 1
        assert {L[1, 1], L[1, 2]} == {Fraction(2, 3), Fraction(1, 3)}

    def test_L_domain(self):
        with pytest.raises(DomainError):
            build_L(0, 1)
        # lambda = nu gives b = 0, allowed
        L = build_L(3, 3)
        assert L[1, 1] == 0 and L[1, 2] == 1

    def test_R_structure(self):
        R = build_R(0, 2)
        assert R[0, 0] == f_fun(2, 0) and R[1, 1] == 1 and R[1, 2] == g_fun(2, 0)

    def test_f_minus_g(self, rng):
        for _ in range(20):
            nu, mu = generic_rationals(rng, 2)
            assert f_fun(nu, mu) - g_fun(nu, mu) == 1


class TestIntertwining:
    @pytest.mark.parametrize("lam,nu,mu", [(5, 1, 2), (Fraction(7, 2), 0, Fraction(1, 3))])
    def test_rll_examples(self, lam, nu, mu):
        assert verify_rll(lam, nu, mu)

    def test_rll_random(self, rng):
        for _ in range(50):
            assert verify_rll(*generic_rationals(rng, 3))

    def test_rll_pole(self):
        with pytest.raises(DomainError):
            verify_rll(3, 1, 1)

    def test_rll_detects_wrong_R(self):
        # swapping the spectral arguments of R must break the relation
        from pdwbc import qism

        R_wrong = qism._id_plus_swap(Fraction(1), g_fun(1, 2), 0, 1, 3)
        bk, ck = qism._weights(Fraction(5), Fraction(1))
        bq, cq = qism._weights(Fraction(5), Fraction(2))
        Lk = qism._id_plus_swap(bk, ck, 0, 2, 3)
        Lq = qism._id_plus_swap(bq, cq, 1, 2, 3)
        assert not np.array_equal(R_wrong.dot(Lk).dot(Lq), Lq.dot(Lk).dot(R_wrong))

    @pytest.mark.parametrize("direction", ["H", "V"])
    def test_ab_algebra(self, rng, direction):
        assert verify_ab_algebra([Fraction(3), Fraction(-7, 2)], 0, 1, direction)
        for n in (1, 2, 3):
            for _ in range(3):
                sites = generic_rationals(rng, n)
                nu, mu = generic_rationals(rng, 2, avoid=sites)
                assert verify_ab_algebra(sites, nu, mu, direction)

    def test_ab_algebra_guards(self):
        with pytest.raises(DomainError):
            verify_ab_algebra([2], 1, 1)
        with pytest.raises(ResourceGuardError):
            verify_ab_algebra([2, 3, 4, 5, 6], 0, 1)

    def test_rtt_plain_and_twisted(self, rng):
        for i in range(20):
            sites = generic_rationals(rng, 1 + i % 3)
            nu, mu = generic_rationals(rng, 2, avoid=sites)
            K_left = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
            K_right = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
            assert verify_rtt(sites, nu, mu)
            assert verify_rtt(sites, nu, mu, K_left, K_left)
            assert verify_rtt(sites, nu, mu, K_right, K_right)

    def test_monodromy_single_site(self):
        blocks = monodromy_blocks(0, [Fraction(2)], "H")
        # one site: A = diag(1, b), D = diag(b, 1), B and C carry c
        b, c = Fraction(2, 3), Fraction(1, 3)
        assert blocks["A"].tolist() == [[1, 0], [0, b]]
        assert blocks["D"].tolist() == [[b, 0], [0, 1]]
        assert sorted([blocks["B"].sum(), blocks["C"].sum()]) == [c, c]


class TestBracket:
    def test_single_vertex(self):
        lam, nu = Fraction(3), Fraction(1, 2)
        assert z_bracket(LatticeSpec.inhomogeneous([lam], [nu])) == 1 / (lam - nu + 1)

    def test_one_row_homogeneous(self):
        for t in (Fraction(1, 3), HALF):
            assert z_bracket(LatticeSpec.homogeneous(1, 2, t)) == 1 - t ** 2

    @pytest.mark.parametrize("s,N", [(s, N) for N in range(1, 6) for s in range(1, N + 1)])
    def test_matches_bruteforce(self, s, N, rng):
        spec = LatticeSpec.inhomogeneous(*generic_lattice(rng, s, N))
        z = z_bruteforce(spec)
        assert z_bracket(spec) == z
        assert z_bracket_horizontal(spec) == z

    def test_up_arrow_complement(self, rng):
        for s, N in [(1, 3), (2, 3), (2, 4), (3, 4)]:
            spec = LatticeSpec.from_row_t(distinct_unit_rationals(rng, s), N)
            for m in range(1, N + 1):
                assert g_up_bracket(spec, m) + g_down_bruteforce(spec, m) == 1
