import json
import random

import pytest

from nullsum.exactalg import CyclicGroup, RingSpec
from nullsum.instance import InstanceError, SumsetInstance, evaluate_univariate
from nullsum.sumsetlab import random_field_instance, random_group_instance


def test_round_trip_field_instances():
    rng = random.Random(0)
    for F in (RingSpec.gf(7), RingSpec.gf(2, 3), RingSpec.gf(3, 2)):
        for mode in ("S_eq14", "T_eq15", "C_eq18"):
            inst = random_field_instance(rng, F, 3, (2, 3, 3), 2, mode, label="rt")
            text = json.dumps(inst.to_json())
            assert SumsetInstance.from_json(json.loads(text)) == inst


def test_round_trip_group_and_cyclotomic():
    rng = random.Random(1)
    for mode in ("SET_11", "SET_12", "MULTI_11"):
        inst = random_group_instance(rng, 9, 3, 4, 2, mode, theorem="T1.1i" if mode == "MULTI_11" else "T1.1ii")
        assert SumsetInstance.from_json(inst.to_json()) == inst
    obj = {"carrier": {"kind": "cyclotomic", "q": 5}, "mode": "C_eq18",
           "subsets": [[[0], [1]], [[0], {"zeta": 1}]], "polys": [[0, 1], [1, 1]],
           "shifts": [{"zeta": 0}, {"zeta": 2}], "constants": [[1, 2, [1, 1]]]}
    inst = SumsetInstance.from_json(obj)
    assert SumsetInstance.from_json(inst.to_json()) == inst
    assert inst.constant(0, 1) == inst.carrier.coerce([1, 1])


@pytest.mark.parametrize("obj,field", [
    ({"carrier": {"kind": "prime-field", "p": 6}, "mode": "S_eq14", "subsets": [[0]], "polys": [[0, 1]]}, "carrier"),
    ({"carrier": {"kind": "prime-field", "p": 5}, "mode": "nope", "subsets": [[0]]}, "mode"),
    ({"carrier": {"kind": "prime-field", "p": 5}, "mode": "S_eq14", "subsets": [[0, 5]], "polys": [[0, 1]]}, "subsets"),
    ({"carrier": {"kind": "prime-field", "p": 5}, "mode": "S_eq14", "subsets": [[0], [1]], "polys": [[0, 1]]}, "polys"),
    ({"carrier": {"kind": "prime-field", "p": 5}, "mode": "S_eq14", "subsets": [[0]], "polys": [[0, 1]], "m": 2}, "polys"),
    ({"carrier": {"kind": "cyclic-group", "N": 5}, "mode": "SET_11", "subsets": [[0], [1]], "shifts": [0, 1]}, "m"),
    ({"carrier": {"kind": "cyclic-group", "N": 5}, "mode": "MULTI_11", "subsets": [[0], [1]], "m": 1}, "shifts"),
    ({"carrier": {"kind": "cyclic-group", "N": 5}, "mode": "SNEVILY", "subsets": [[0, 1], [1, 2]], "shifts": [0, 1]}, "subsets"),
    ({"carrier": {"kind": "prime-field", "p": 5}, "mode": "S_eq14", "subsets": [[0]], "polys": [[0, 1]], "extra": 1}, "instance"),
    ({"mode": "S_eq14", "subsets": [[0]]}, "carrier"),
])
def test_errors_name_the_field(obj, field):
    with pytest.raises(InstanceError, match=f"^{field}"):
        SumsetInstance.from_json(obj)


def test_polynomials_trimmed_and_evaluated():
    F = RingSpec.gf(5)
    inst = SumsetInstance(F, ((0, 1),), "S_eq14", polys=((1, 2, 0, 0),))
    assert inst.polys == ((1, 2),)
    assert inst.degree == 1
    assert evaluate_univariate((1, 2, 3), 2, F) == (1 + 4 + 12) % 5


def test_group_counts():
    inst = SumsetInstance(CyclicGroup(6), ((0, 1, 2), (3, 4)), "MULTI_11", m=1, shifts=(0, 1))
    assert inst.ks == (3, 2) and inst.tuple_count() == 6
