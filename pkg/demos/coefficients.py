"""Closed-form coefficients versus brute-force expansion."""

from nullsum.coeffcore import (
    CoefficientProblem,
    coeff_cor21_det,
    coeff_cor21_per,
    coeff_oracle,
    coeff_theorem21,
    permutation_terms,
    theorem22_sides,
)
from nullsum.exactalg import RingMatrix, RingSpec
from nullsum.multipoly import generic_determinant_poly, vandermonde_factor

ZZ = RingSpec.integer()
a = RingMatrix.from_rows([[1, 2], [3, 4]], ZZ)

# the determinant polynomial |a_ij x_j^m_i| with m = (0, 1)
print("det poly:", generic_determinant_poly(a, (0, 1)))
print("vandermonde(3):", vandermonde_factor(3, ZZ))

# [x1^2 x2^2] of det * (x2 - x1)^delta * (x1 + x2)^K
for delta in (0, 1):
    p = CoefficientProblem(2, delta, (2, 2), (0, 1), a)
    print(f"delta={delta}: closed form {coeff_theorem21(p)}, expansion {coeff_oracle(p)}")

# the individual permutation terms behind the delta = 1 value
for t in permutation_terms(CoefficientProblem(2, 1, (2, 2), (0, 1), a)):
    print("  sigma", t.sigma, "N", t.N, "sign", t.sign)

# equal k: the sum collapses to det(a) or per(a) times an integer
print("det form:", coeff_cor21_det(2, 2, (0, 1), a), " per form:", coeff_cor21_per(2, 2, (0, 1), a))

# the same coefficient over GF(7)
F = RingSpec.gf(7)
p7 = CoefficientProblem(2, 1, (2, 2), (0, 1), RingMatrix.from_rows([[1, 2], [3, 4]], F))
print("over GF(7):", coeff_theorem21(p7))

# swapping the two exponent vectors leaves the coefficient unchanged
b = RingMatrix.from_rows([[2, -1, 3], [0, 1, 4], [5, 2, -2]], ZZ)
print("swap sides:", *theorem22_sides(3, (0, 1, 2), (1, 0, 2), b))
