"""Certified lower bounds next to exhaustive counts."""

import random

from nullsum.exactalg import RingSpec
from nullsum.sumsetlab import (
    build_example_11,
    build_example_12,
    enumerate_sumset,
    example_12_instance,
    random_field_instance,
    verify_bound,
)

rng = random.Random(7)
F = RingSpec.gf(11)

# random instances, one per selector
for mode, theorem, monic in [("S_eq14", "T1.2i", False), ("T_eq15", "T1.2ii", False),
                             ("T_eq15", "T1.3ii", True), ("C_eq18", "T1.4i", True)]:
    inst = random_field_instance(rng, F, 3, (5, 5, 5), 1, mode, monic=monic, distinct_shifts=True, theorem=theorem)
    rep = verify_bound(inst)
    failed = [h.name for h in rep.certificate.hypotheses if not h.holds]
    print(f"{theorem:7s} bound={rep.certificate.guaranteed_lower_bound}  count={rep.count}  pass={rep.passed}  failed={failed}")

# failed hypotheses are listed on the certificate
rep = verify_bound(random_field_instance(rng, RingSpec.gf(5), 3, (2, 2, 2), 2, "S_eq14", monic=False, theorem="T1.2i"))
print([h.name for h in rep.certificate.hypotheses if not h.holds], "-> bound", rep.certificate.guaranteed_lower_bound)

# the bounds are sharp
for p in (2, 3, 5):
    print(f"GF({p}) construction:", enumerate_sumset(build_example_11(p, "i")).admissible, "admissible tuples")
rep = verify_bound(build_example_11(variant="ii"))
print("GF(4) construction: sums", rep.enumeration.sums, "bound", rep.certificate.guaranteed_lower_bound)

A, G = build_example_12(2, 3, 5)
print(G, "set", [G.format(x) for x in A], "->",
      enumerate_sumset(example_12_instance(2, 3, 5)).admissible, "triples with distinct squares")
