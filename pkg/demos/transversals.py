"""Distinct-sum and distinct-product numberings."""

import itertools

from nullsum.exactalg import CyclicGroup, RingSpec
from nullsum.sumsetlab import corollary11_numbering, snevily_transversal

G = CyclicGroup(9)
A, B = (0, 1, 3, 4), (0, 2, 5, 8)
w = snevily_transversal(G, A, B)
print("Z_9:", w, "sums", [(a + b) % 9 for a, b in w])

# every pair of 3-subsets of Z_7
count = sum(1 for A in itertools.combinations(range(7), 3) for B in itertools.combinations(range(7), 3)
            if snevily_transversal(CyclicGroup(7), A, B) is not None)
print("Z_7, n=3:", count, "of", 35 * 35, "pairs have a transversal")

# even order breaks it
print("Z_2:", snevily_transversal(CyclicGroup(2), (0, 1), (0, 1)))

F = RingSpec.gf(2, 3)
A = [F.from_code(c) for c in (0, 3, 6)]
B = [F.from_code(c) for c in (1, 2, 7)]
w = corollary11_numbering(F, A, B)
print(F, [(F.format(a), F.format(b), F.format(F.mul(a, b))) for a, b in w])
