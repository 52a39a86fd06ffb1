"""Sampling line exits with the stochastic vertex weights and comparing to exact g."""
from fractions import Fraction

from pdwbc import mc_sample_exits
from pdwbc.onepoint import g_value

s, t = 3, Fraction(1, 2)
hist = mc_sample_exits(s, float(t), 100_000, seed=1)
print(f"s = {s}, t = {t}: {hist.n_valid} valid samples, {hist.n_flagged} overflowed")
for m in range(1, 11):
    exact = float(g_value(m, s, t))
    est, se = hist.estimate[m - 1], hist.stderr[m - 1]
    print(f"  m = {m:>2}  exact {exact:.5f}  sampled {est:.5f} +- {se:.5f}  ({(est - exact) / se:+.2f} se)")
