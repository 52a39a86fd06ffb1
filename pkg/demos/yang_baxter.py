"""Intertwining relations of the rational R-matrix and L-operators, checked in exact arithmetic."""
import random

from pdwbc.qism import random_rational, verify_ab_algebra, verify_rll, verify_rtt
from pdwbc.verification import generic_rationals

rng = random.Random(5)
print("RLL:", all(verify_rll(*generic_rationals(rng, 3)) for _ in range(10)))
sites = generic_rationals(rng, 3)
nu, mu = generic_rationals(rng, 2, avoid=sites)
print("A/B exchange relations, horizontal:", verify_ab_algebra(sites, nu, mu, "H"))
print("A/B exchange relations, vertical:  ", verify_ab_algebra(sites, nu, mu, "V"))
K = [[random_rational(rng) for _ in range(2)] for _ in range(2)]
print("RTT with a twist K:", verify_rtt(sites, nu, mu, K, K))
