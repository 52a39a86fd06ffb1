"""The boundary one-point function g(m, s): several exact routes to the same number."""
from fractions import Fraction

from pdwbc import LatticeSpec, g_down_bruteforce
from pdwbc.onepoint import g_finite_N, g_jacobi, g_residue_homogeneous, g_series, g_value, ode_residual

t = Fraction(1, 3)
print("g(m, 3) at t = 1/3")
for m in range(1, 8):
    print(f"  m = {m}  series {g_series(m, 3)(t)}  residue {g_residue_homogeneous(m, 3, t)}"
          f"  Jacobi {g_jacobi(m, 3, t)}")

print("\ng(m, 2) as a polynomial in t:")
for m in range(1, 5):
    print(f"  m = {m}  coefficients {[str(c) for c in g_series(m, 2).to_list()]}")

ts = [Fraction(1, 4), Fraction(2, 3)]
spec = LatticeSpec.from_row_t(ts, 4)
print("\nfinite 2 x 4 strip with row parameters 1/4, 2/3")
for m in range(1, 5):
    print(f"  m = {m}  residue form {g_finite_N(ts, 4, m)}  enumeration {g_down_bruteforce(spec, m)}")

print("\nsecond-order ODE residual for m, s <= 6 vanishes:",
      all(ode_residual(m, s).is_zero() for m in range(1, 7) for s in range(1, 7)))
print("step profile at s = 40, t = 1/2:",
      " ".join(f"{float(g_value(m, 40, Fraction(1, 2))):.3f}" for m in range(30, 51, 4)))
