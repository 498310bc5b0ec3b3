import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nullsum.exactalg import CyclicGroup, RingSpec, prime_factors
from nullsum.instance import InstanceError, SumsetInstance
from nullsum.multipoly import SparsePoly
from nullsum.nullbound import (
    DegreeError,
    SemigroupDq,
    certify,
    dq_member,
    factorial_in_dq,
    lemma31_bound,
    lemma31_coefficient,
    per_vandermonde_roots,
    root_of_unity_order,
    t13_exceptional,
)
from nullsum.sumsetlab import random_field_instance, random_group_instance


def naive_dq(q, top):
    reach = {0}
    for p in prime_factors(q):
        reach = {s + c * p for s in reach for c in range((top - s) // p + 1)}
    return reach


# -- D(q) --------------------------------------------------------------------


def test_dq_examples():
    assert dq_member(2, 2)
    assert not dq_member(15, 7)
    assert not dq_member(6, 1)
    assert dq_member(6, 5)
    assert 5 in SemigroupDq(6)
    assert SemigroupDq(60).prime_divisors == (2, 3, 5)


def test_factorial_in_dq_examples():
    assert factorial_in_dq(2, 4)
    assert not factorial_in_dq(2, 15)
    assert factorial_in_dq(3, 15)


@pytest.mark.parametrize("q", range(1, 61))
def test_dq_matches_naive(q):
    top = 200
    reach = naive_dq(q, top)
    assert [x for x in range(top + 1) if dq_member(q, x)] == sorted(reach)


# -- permanents of root-of-unity Vandermonde matrices ------------------------


def test_per_b_examples():
    per, zero = per_vandermonde_roots(3, (0, 1))
    assert per.to_json() == [1, 1] and not zero
    per, zero = per_vandermonde_roots(4, (1, 3))
    assert zero
    per, zero = per_vandermonde_roots(1, (0,))
    assert per == 1


def test_per_b_nonzero_for_odd_q_sample():
    rng = random.Random(4)
    for _ in range(300):
        q = rng.choice(range(3, 16, 2))
        n = rng.randint(1, min(q, 5))
        _, zero = per_vandermonde_roots(q, rng.sample(range(q), n))
        assert not zero


def test_even_q_zero_consistent_with_dq():
    # a zero permanent for q = 4 needs 2! in D(4)
    assert per_vandermonde_roots(4, (1, 3))[1]
    assert factorial_in_dq(2, 4)


def test_root_of_unity_order():
    Z = RingSpec.cyclotomic(12)
    assert root_of_unity_order(Z.zeta_power(4), Z) == 3
    assert root_of_unity_order(Z.zeta_power(0), Z) == 1
    assert root_of_unity_order(Z.from_int(2), Z) is None


# -- certificates ------------------------------------------------------------


def gf_instance(p, subsets, polys, mode="S_eq14", theorem=None, shifts=(), deg=1):
    F = RingSpec.gf(p, deg)
    return SumsetInstance(F, tuple(map(tuple, subsets)), mode, polys=tuple(map(tuple, polys)),
                          shifts=tuple(shifts), theorem=theorem)


def test_t12i_value():
    # distinct leading coefficients b = (1, 2)
    inst = gf_instance(7, [[0, 1, 2], [3, 4, 5]], [[0, 1], [5, 2]], theorem="T1.2i")
    cert = certify(inst)
    assert cert.derived["K"] == 3
    assert cert.guaranteed_lower_bound == 4


def test_t12i_equal_leading_coefficients_withheld():
    inst = gf_instance(7, [[0, 1, 2], [3, 4, 5]], [[0, 1], [5, 1]], theorem="T1.2i")
    assert certify(inst).guaranteed_lower_bound is None


def test_t13ii_exceptional_value():
    subsets = [[0, 1, 2]] * 3
    polys = [[b, 1] for b in (0, 1, 2)]
    inst = gf_instance(3, subsets, polys, mode="T_eq15", theorem="T1.3ii")
    cert = certify(inst)
    assert cert.derived["L"] == 0
    assert cert.derived["exceptional"]
    assert cert.guaranteed_lower_bound == 0
    assert t13_exceptional(3, 3, 1, 3)
    assert t13_exceptional(3, 2, 2, 2)
    assert not t13_exceptional(4, 3, 1, 3)


def test_t12iii_even_q_withheld():
    Z = RingSpec.cyclotomic(4)
    inst = SumsetInstance(Z, ((0, 1), (0, 1)), "T_eq15",
                          polys=((0, Z.zeta_power(1)), (0, Z.zeta_power(3))), theorem="T1.2iii")
    cert = certify(inst)
    assert cert.derived["q"] == 4
    assert not next(h for h in cert.hypotheses if h.name == "factorial_not_in_Dq").holds
    assert cert.guaranteed_lower_bound is None


def test_t14iii_odd_q_distinct():
    Z = RingSpec.cyclotomic(3)
    inst = SumsetInstance(Z, ((0, 1), (0, 1)), "C_eq18", polys=((0, 1), (1, 1)),
                          shifts=(Z.zeta_power(0), Z.zeta_power(1)), theorem="T1.4iii")
    cert = certify(inst)
    assert cert.derived["L"] == 0
    assert cert.guaranteed_lower_bound == 1


def test_t13i_refuses_small_characteristic():
    subsets = [[0, 1, 2, 3]] * 3
    polys = [[c, 1] for c in (0, 1, 2)]
    cert = certify(gf_instance(5, subsets, polys, mode="T_eq15", theorem="T1.3i"))
    assert cert.derived["L!n!"] == 36
    assert cert.guaranteed_lower_bound is None
    cert = certify(gf_instance(7, [[0, 1, 2]] * 2, [[0, 1], [1, 1]], mode="T_eq15", theorem="T1.3i"))
    assert cert.derived["L!n!"] == 4
    assert cert.guaranteed_lower_bound == 3


def test_t14ii_value():
    F = RingSpec.gf(2, 2)
    codes = [F.from_code(c) for c in range(4)]
    inst = SumsetInstance(F, (tuple(codes),) * 3, "C_eq18", polys=((0, 1),) * 3,
                          shifts=tuple(codes[1:]), theorem="T1.4ii")
    assert certify(inst).guaranteed_lower_bound == 4


def test_t11_values():
    base = dict(carrier=CyclicGroup(7), subsets=((0, 1, 2, 3),) * 3, m=1, shifts=(0, 1, 2))
    assert certify(SumsetInstance(mode="MULTI_11", theorem="T1.1i", **base)).guaranteed_lower_bound == 7
    cert = certify(SumsetInstance(mode="SET_11", theorem="T1.1ii", **base))
    assert cert.derived["L"] == 3 and cert.guaranteed_lower_bound == 4


def test_t11ii_disjunction():
    # an even-order shift with 2! in D(2): withheld
    inst = SumsetInstance(CyclicGroup(8), ((0, 1, 2),) * 2, "SET_11", m=1, shifts=(0, 4), theorem="T1.1ii")
    assert certify(inst).guaranteed_lower_bound is None
    # repeated odd-order shift, but 2! is not in D(3): issued
    inst = SumsetInstance(CyclicGroup(9), ((0, 1, 2),) * 2, "SET_11", m=1, shifts=(3, 3), theorem="T1.1ii")
    assert certify(inst).issued


def test_structural_refusals():
    with pytest.raises(InstanceError, match="monic"):
        certify(gf_instance(7, [[0, 1, 2]] * 2, [[0, 2], [1, 1]], mode="T_eq15", theorem="T1.3ii"))
    with pytest.raises(InstanceError, match="mode"):
        certify(gf_instance(7, [[0, 1, 2]] * 2, [[0, 1], [1, 1]], mode="S_eq14", theorem="T1.3ii"))
    with pytest.raises(InstanceError, match="theorem"):
        certify(gf_instance(7, [[0, 1, 2]] * 2, [[0, 1], [1, 1]]), "T9.9")


def _random_certificates(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        p = rng.choice([5, 7, 11])
        n, m = rng.choice([2, 3]), rng.choice([1, 2])
        k = rng.randint(1, 5)
        F = RingSpec.gf(p)
        for mode, theorem, monic in (("S_eq14", "T1.2i", False), ("T_eq15", "T1.2ii", False),
                                     ("T_eq15", "T1.3ii", True), ("C_eq18", "T1.4i", True)):
            yield certify(random_field_instance(rng, F, n, (k,) * n, m, mode, monic=monic, theorem=theorem))
        yield certify(random_group_instance(rng, rng.choice([5, 7, 9]), n, max(k, n), m, "SET_12", theorem="T1.1ii"))


def test_certify_monotone():
    seen = 0
    for cert in _random_certificates(9, 60):
        if not cert.issued:
            continue
        seen += 1
        for h in cert.hypotheses:
            assert cert.with_hypothesis_failed(h.name).guaranteed_lower_bound is None
    assert seen > 50


def test_certificate_json_hides_internal_keys():
    for cert in _random_certificates(1, 5):
        js = cert.to_json()
        assert all(not k.startswith("_") for k in js["derived"])


# -- polynomial-method lemma -------------------------------------------------


def test_lemma31_single_variable():
    F = RingSpec.gf(7)
    for k in range(2, 6):
        P = SparsePoly.univariate([F.from_int(-3), 1], 0, 1, F)
        coeff = lemma31_coefficient(P, (k,))
        assert coeff == 1
        assert lemma31_bound(P, (k,), coeff) == k - 1
    assert lemma31_bound(P, (4,), 0) is None


@pytest.mark.parametrize("p,n,k,m", [(7, 2, 3, 1), (11, 3, 4, 1), (13, 2, 4, 2), (13, 3, 5, 1)])
def test_lemma31_matches_distinct_value_formula(p, n, k, m):
    # [prod x_i^(k-1)] prod_{i<j} (P_j(x_j) - P_i(x_i)) (sum x)^K = K!/prod_r (k-1-rm)! * prod_{i<j} (b_j - b_i)
    F = RingSpec.gf(p)
    rng = random.Random(p * 100 + n)
    bs = rng.sample(range(1, p), n)
    polys = [[rng.randrange(p) for _ in range(m)] + [b] for b in bs]
    P = SparsePoly.one(n, F)
    for i, j in itertools.combinations(range(n), 2):
        P = P * (SparsePoly.univariate(polys[j], j, n, F) - SparsePoly.univariate(polys[i], i, n, F))
    K = (k - 1) * n - m * math.comb(n, 2)
    expected = math.factorial(K)
    for r in range(n):
        expected //= math.factorial(k - 1 - r * m)
    for i, j in itertools.combinations(range(n), 2):
        expected *= bs[j] - bs[i]
    coeff = lemma31_coefficient(P, (k,) * n)
    assert coeff == expected % p
    assert lemma31_bound(P, (k,) * n, coeff) == K + 1


def test_lemma31_refusals():
    F = RingSpec.gf(5)
    P = SparsePoly.variable(0, 1, F) ** 3
    with pytest.raises(DegreeError):
        lemma31_coefficient(P, (3,))
    with pytest.raises(DegreeError):
        lemma31_bound(SparsePoly.zero(1, F), (3,), 1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(0, 6)), min_size=1, max_size=4),
       st.tuples(st.integers(1, 5), st.integers(1, 5)))
def test_lemma31_bound_never_exceeds(terms, ks):
    F = RingSpec.gf(7)
    P = SparsePoly(2, F, dict(terms))
    if not P.terms or P.total_degree() > sum(k - 1 for k in ks):
        return
    coeff = lemma31_coefficient(P, ks)
    bound = lemma31_bound(P, ks, coeff)
    if coeff.is_zero():
        assert bound is None
    else:
        assert bound == sum(k - 1 for k in ks) - P.total_degree() + 1
