"""Seeded identity sweeps shared by ``pdwbc verify`` and the test suite.

Each suite returns a :class:`SuiteReport`; a check that raises counts as a failure
and keeps its message.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .lattice_oracle import LatticeSpec, g_down_bruteforce, z_bruteforce
from .onepoint import (
    delta_m,
    delta_s,
    g_finite_N,
    g_jacobi,
    g_residue_homogeneous,
    g_series,
    ode_residual,
)
from .partition_functions import z_foda_wheeler, z_homogeneous, z_kostov, z_partial_homogeneous
from .qism import random_rational, verify_ab_algebra, verify_rll, verify_rtt, z_bracket

DEFAULT_SEED = 20240611


@dataclass
class SuiteReport:
    name: str
    noun: str = "identities hold"
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} {self.noun}"

    def run(self, label: str, check: Callable[[], bool]):
        try:
            good = check()
        except Exception as exc:  # a raising identity is a failed identity
            self.failures.append(f"{label}: {type(exc).__name__}: {exc}")
            return
        if good:
            self.passed += 1
        else:
            self.failures.append(label)


def generic_rationals(rng: random.Random, count: int, avoid: Iterable = (), bound: int = 20) -> list[Fraction]:
    """Distinct seeded rationals, none differing by 0 or +-1 from each other or from ``avoid``."""
    avoid = list(avoid)
    out: list[Fraction] = []
    while len(out) < count:
        x = random_rational(rng, bound)
        if all(x - y not in (0, 1, -1) for y in out + avoid):
            out.append(x)
    return out


def generic_lattice(rng: random.Random, s: int, N: int) -> tuple[list, list]:
    """``lambdas`` and ``nus`` with every weight and every closed-form denominator finite."""
    nus = generic_rationals(rng, N)
    lams = generic_rationals(rng, s, avoid=nus)
    return lams, nus


def distinct_unit_rationals(rng: random.Random, count: int, bound: int = 20) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        q = rng.randint(2, bound)
        x = Fraction(rng.randint(1, q - 1), q)
        if x not in out:
            out.append(x)
    return out


def suite_qism(seed: int = DEFAULT_SEED, trials=(50, 20, 20)) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("qism")
    n_rll, n_ab, n_rtt = trials
    for i in range(n_rll):
        lam, nu, mu = generic_rationals(rng, 3)
        rep.run(f"RLL #{i}", lambda: verify_rll(lam, nu, mu))
    for i in range(n_ab):
        sites = generic_rationals(rng, 1 + i % 3)
        nu, mu = generic_rationals(rng, 2, avoid=sites)
        direction = "HV"[i % 2]
        rep.run(f"A/B algebra #{i} ({direction})", lambda: verify_ab_algebra(sites, nu, mu, direction))
    for i in range(n_rtt):
        sites = generic_rationals(rng, 1 + i % 3)
        nu, mu = generic_rationals(rng, 2, avoid=sites)
        K = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
        rep.run(f"twisted RTT #{i}", lambda: verify_rtt(sites, nu, mu, K, K))
    return rep


def suite_partition(max_n: int = 5, seed: int = DEFAULT_SEED, sets: int = 3) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("partition")
    for N in range(1, max_n + 1):
        for s in range(1, N + 1):
            for k in range(sets):
                lams, nus = generic_lattice(rng, s, N)
                spec = LatticeSpec.inhomogeneous(lams, nus)

                def check():
                    z = z_bruteforce(spec)
                    return z_foda_wheeler(lams, nus) == z_kostov(lams, nus) == z_bracket(spec) == z

                rep.run(f"fw/kostov/bracket s={s} N={N} set {k}", check)
                ts = distinct_unit_rationals(rng, s)
                rep.run(
                    f"partial-homogeneous s={s} N={N} set {k}",
                    lambda: z_partial_homogeneous(ts, N) == z_bruteforce(LatticeSpec.from_row_t(ts, N)),
                )
            for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                rep.run(
                    f"hankel s={s} N={N} t={t}",
                    lambda: z_homogeneous(t, s, N) == z_bruteforce(LatticeSpec.homogeneous(s, N, t)),
                )
    return rep


def suite_onepoint(max_s: int = 8, seed: int = DEFAULT_SEED, ts=(Fraction(1, 5), Fraction(1, 2), Fraction(4, 5))) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("onepoint")
    for m in range(1, max_s + 1):
        for s in range(1, max_s + 1):
            poly = g_series(m, s)
            for t in ts:
                rep.run(
                    f"series/residue/jacobi m={m} s={s} t={t}",
                    lambda: poly(t) == g_residue_homogeneous(m, s, t) == g_jacobi(m, s, t),
                )
            rep.run(f"delta_s m={m} s={s}", lambda: delta_s(m, s) == poly - (g_series(m, s - 1) if s > 1 else 0))
            if m >= 2:
                rep.run(f"delta_m m={m} s={s}", lambda: delta_m(m, s) == poly - g_series(m - 1, s))
    for N in range(1, min(max_s, 5) + 1):
        for s in range(1, min(N, 3) + 1):
            row_ts = distinct_unit_rationals(rng, s)
            spec = LatticeSpec.from_row_t(row_ts, N)
            for m in range(1, N + 1):
                rep.run(
                    f"finite-N s={s} N={N} m={m}",
                    lambda: g_finite_N(row_ts, N, m) == g_down_bruteforce(spec, m),
                )
    return rep


def suite_ode(max_s: int = 8) -> SuiteReport:
    rep = SuiteReport("ode", noun="residuals zero")
    for m in range(1, max_s + 1):
        for s in range(1, max_s + 1):
            rep.run(f"ode m={m} s={s}", lambda: ode_residual(m, s).is_zero())
    return rep


def suite_asym() -> SuiteReport:
    from . import asymptotics as asy

    rep = SuiteReport("asym", noun="checks within tolerance")
    third = Fraction(1, 3)
    for mu in (Fraction(1, 2), Fraction(2)):
        m = int(mu * 100)
        rep.run(
            f"log-asymptotics mu={mu}",
            lambda: abs(asy.exact_log_deviation(m, 100, third) - asy.g_asymptotic(m, 100, third).log_correction) <= 0.1,
        )
    half = Fraction(1, 2)
    rep.run("erfc window s=400", lambda: max(asy.window_errors(400, half).values()) <= 0.05)
    rep.run(
        "erfc window shrinks 100 -> 400",
        lambda: max(asy.window_errors(400, half).values()) < max(asy.window_errors(100, half).values()),
    )
    h = 1e-5
    for mu, t in ((2.0, 0.3), (3.0, 0.1), (1.5, 0.7), (0.5, 0.3)):
        below = mu < 1
        s1 = asy.sigma1(mu, t, complement=below)
        d1 = -(asy.phi1(mu, t + h) - asy.phi1(mu, t - h)) / (2 * h)
        d0 = -(asy.phi0(mu, t + h) - asy.phi0(mu, t - h)) / (2 * h)
        rep.run(f"sigma1 cubic mu={mu} t={t}", lambda: abs(asy.sigma1_cubic(s1, mu, t)) <= 1e-10)
        rep.run(f"sigma1 = -dphi1/dt mu={mu} t={t}", lambda: abs(s1 - d1) <= 1e-6)
        rep.run(f"sigma0 = -dphi0/dt mu={mu} t={t}", lambda: abs(asy.sigma0(mu, t, complement=below) - d0) <= 1e-5)
    rep.run("sigma1 small-t law", lambda: abs(asy.sigma1(3.0, 1e-4) - (2 / 1e-4 - 2)) <= 1e-3)
    return rep


SUITES = {
    "qism": lambda max_s: suite_qism(),
    "partition": lambda max_s: suite_partition(max_n=min(max_s, 5)),
    "onepoint": lambda max_s: suite_onepoint(max_s=max_s),
    "ode": lambda max_s: suite_ode(max_s=max_s),
    "asym": lambda max_s: suite_asym(),
}


def run_suites(names: Iterable[str], max_s: int = 8) -> list[SuiteReport]:
    return [SUITES[name](max_s) for name in names]
