"""Partition functions of the s x N strip: determinant formulas against exhaustive enumeration."""
from fractions import Fraction

from pdwbc import LatticeSpec, z_bruteforce
from pdwbc.partition_functions import z_foda_wheeler, z_homogeneous, z_kostov
from pdwbc.qism import z_bracket

lams = [Fraction(3), Fraction(-7, 2)]
nus = [Fraction(0), Fraction(1, 3), Fraction(11, 5)]
spec = LatticeSpec.inhomogeneous(lams, nus)

print("inhomogeneous 2 x 3 strip")
for name, value in [("s x s determinant", z_foda_wheeler(lams, nus)),
                    ("N x N determinant", z_kostov(lams, nus)),
                    ("operator bracket", z_bracket(spec)),
                    ("enumeration", z_bruteforce(spec))]:
    print(f"  {name:<18} {value}")

# homogeneous weights: the Hankel form approaches 1 as the strip widens
t = Fraction(1, 2)
print("\nhomogeneous s = 3, t = 1/2")
for N in (3, 6, 10, 15, 20):
    z = z_homogeneous(t, 3, N)
    print(f"  N = {N:>2}  Z = {float(z):.10f}  1 - Z = {float(1 - z):.3e}")
