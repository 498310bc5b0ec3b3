"""Permanents, determinants and the semigroup test for roots of unity."""

import random

from nullsum.exactalg import RingMatrix, RingSpec, determinant, permanent_naive, permanent_ryser
from nullsum.nullbound import dq_member, factorial_in_dq, per_vandermonde_roots

rng = random.Random(0)

# Ryser's formula agrees with the n! sum
M = RingMatrix.from_rows([[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)], RingSpec.integer())
print("naive", permanent_naive(M), "ryser", permanent_ryser(M))

# in characteristic 2 the permanent is the determinant
F = RingSpec.gf(2, 3)
B = RingMatrix.vandermonde([F.from_code(c) for c in (1, 2, 5, 6)], F)
print(F, "per(B) =", permanent_ryser(B), " det(B) =", determinant(B))

# Vandermonde of q-th roots of unity, computed exactly in Z[zeta_q]
for q, exps in [(3, (0, 1)), (4, (1, 3)), (5, (0, 1, 3)), (15, (0, 2, 7, 11, 14))]:
    per, zero = per_vandermonde_roots(q, exps)
    print(f"q={q} e={exps}: per = {per}   zero={zero}")

# n! in D(q)? (nonnegative combinations of the primes dividing q)
print("7 in D(15):", dq_member(15, 7))
for q in (4, 9, 15, 21):
    print(f"q={q}:", [n for n in range(1, 7) if not factorial_in_dq(n, q)], "have n! outside D(q)")
