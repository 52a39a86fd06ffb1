"""Large-s behaviour: exponentially small corrections away from the step and the erfc window."""
from fractions import Fraction

from pdwbc import asymptotics as asy

t = Fraction(1, 3)
print("log|g - step| against the saddle-point prediction, t = 1/3")
for s in (25, 50, 100, 200):
    for mu in (Fraction(1, 2), Fraction(2)):
        m = int(mu * s)
        exact = asy.exact_log_deviation(m, s, t)
        predicted = asy.g_asymptotic(m, s, t).log_correction
        print(f"  s = {s:>3} mu = {str(mu):>3}  exact {exact:10.4f}  predicted {predicted:10.4f}")

print("\nerfc window at t = 1/2 (max error over v = -2..2)")
for s in (100, 200, 400):
    print(f"  s = {s}  {max(asy.window_errors(s, Fraction(1, 2)).values()):.4f}")

print("\nsigma expansion at mu = 2, t = 0.3")
print(f"  sigma1 = {asy.sigma1(2, 0.3):.10f}  cubic residual {asy.sigma1_cubic(asy.sigma1(2, 0.3), 2, 0.3):.1e}")
print(f"  sigma0 = {asy.sigma0(2, 0.3):.10f}  from the ODE {asy.sigma0_from_ode(2, 0.3):.10f}")
