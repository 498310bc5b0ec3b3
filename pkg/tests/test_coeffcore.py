import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nullsum.coeffcore import (
    CoefficientProblem,
    HypothesisError,
    check_cor22,
    coeff_cor21_det,
    coeff_cor21_per,
    coeff_oracle,
    coeff_theorem21,
    permutation_terms,
    theorem22_sides,
)
from nullsum.exactalg import RingMatrix, RingSpec, determinant, permanent_ryser

ZZ = RingSpec.integer()
A = RingMatrix.from_rows([[1, 2], [3, 4]], ZZ)


def problem(delta, ks, ms, a=A):
    return CoefficientProblem(len(ks), delta, tuple(ks), tuple(ms), a)


# -- worked values -----------------------------------------------------------


def test_worked_pair():
    assert coeff_theorem21(problem(0, (2, 2), (0, 1))) == -6
    assert coeff_theorem21(problem(1, (2, 2), (0, 1))) == -10
    assert coeff_oracle(problem(0, (2, 2), (0, 1))) == -6
    assert coeff_oracle(problem(1, (2, 2), (0, 1))) == -10
    assert coeff_cor21_det(2, 2, (0, 1), A) == -6
    assert coeff_cor21_per(2, 2, (0, 1), A) == -10


def test_single_variable_collapses():
    for k in range(5):
        for m in range(k + 1):
            a = RingMatrix.from_rows([[7]], ZZ)
            assert coeff_theorem21(problem(1, (k,), (m,), a)) == 7


def test_refusal_names_inequality():
    with pytest.raises(HypothesisError, match="exceeds"):
        problem(1, (1, 1), (3, 1)).check()
    with pytest.raises(HypothesisError):
        coeff_theorem21(problem(0, (1, 1), (2, 1)))


def test_cor21_special_cases():
    for n in (1, 2, 3):
        ident = RingMatrix.identity(n, ZZ)
        ms = tuple(range(n))
        k = n + 1
        K = k * n - sum(ms)
        multinomial = math.factorial(K) // math.prod(math.factorial(k - m) for m in ms)
        assert coeff_cor21_det(n, k, ms, ident) == multinomial
    singular = RingMatrix.from_rows([[1, 2], [2, 4]], ZZ)
    assert coeff_cor21_det(2, 3, (0, 1), singular) == 0
    QQ = RingSpec.rational()
    zero_per = RingMatrix.from_rows([[1, 1], [-1, 1]], QQ)
    assert coeff_cor21_per(2, 3, (0, 1), zero_per) == 0


def test_cor21_refuses_bad_order():
    with pytest.raises(HypothesisError):
        coeff_cor21_det(2, 3, (1, 0), A)
    with pytest.raises(HypothesisError):
        coeff_cor21_per(2, 3, (1, 1), A)


def test_theorem22_examples():
    rng = random.Random(2)
    a = RingMatrix.from_rows([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)], ZZ)
    lhs, rhs = theorem22_sides(3, (0, 2), (0, 1), a)
    assert lhs == rhs
    lhs, rhs = theorem22_sides(3, (1, 0), (1, 0), a)
    assert lhs == rhs
    # an exponent above k kills both sides
    lhs, rhs = theorem22_sides(3, (4, 0), (0, 1), a)
    assert lhs == 0 and rhs == 0
    with pytest.raises(HypothesisError):
        theorem22_sides(1, (2, 0), (1, 0), a)


def test_cor22_identity_sign():
    for n in (1, 2, 3, 4):
        # k - m = (n, n-1, ..., 1) with m spaced wider than the k spread
        ks = (2 * n,) * n
        ms = tuple(n + i for i in range(n))
        res = check_cor22(ks, ms, RingMatrix.identity(n, ZZ))
        assert res.reversal_ok and res.bound_ok
        assert (res.c > 0) == ((-1) ** math.comb(n, 2) > 0)


def test_cor22_refusals():
    with pytest.raises(HypothesisError, match="decreasing"):
        check_cor22((2, 3), (0, 0), RingMatrix.identity(2, ZZ))
    with pytest.raises(HypothesisError, match="spacing"):
        check_cor22((5, 3), (0, 1), RingMatrix.identity(2, ZZ))
    with pytest.raises(HypothesisError, match="diagonal"):
        check_cor22((3, 1), (0, 0), RingMatrix.from_rows([[0, 1], [1, 1]], ZZ))


# -- properties --------------------------------------------------------------


@st.composite
def problems(draw, max_n=3, delta=None):
    n = draw(st.integers(1, max_n))
    delta = draw(st.integers(0, 1)) if delta is None else delta
    ks = tuple(draw(st.integers(0, 5)) for _ in range(n))
    budget = sum(ks) - delta * math.comb(n, 2)
    if budget < 0:
        ks = tuple(k + math.comb(n, 2) for k in ks)
        budget = sum(ks) - delta * math.comb(n, 2)
    ms = []
    for _ in range(n):
        m = draw(st.integers(0, max(0, budget - sum(ms))))
        ms.append(m)
    spec = draw(st.sampled_from([ZZ, RingSpec.gf(5), RingSpec.gf(7)]))
    rows = [[draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(n)]
    return CoefficientProblem(n, delta, ks, tuple(ms), RingMatrix.from_rows(rows, spec))


@settings(max_examples=300, deadline=None)
@given(problems())
def test_closed_form_matches_expansion(p):
    assert coeff_theorem21(p) == coeff_oracle(p)


@settings(max_examples=150, deadline=None)
@given(problems(max_n=4, delta=1))
def test_multiplicities_positive_and_signs_sort(p):
    for t in permutation_terms(p):
        assert t.N >= 1
        d = [p.ks[t.sigma[i]] - p.ms[i] for i in range(p.n)]
        assert all(d[t.sigma_prime[i]] < d[t.sigma_prime[i + 1]] for i in range(p.n - 1))


def test_cor21_agrees_on_domain():
    rng = random.Random(21)
    checked = 0
    for n in (1, 2, 3, 4):
        for k in range(7):
            for ms in itertools.combinations_with_replacement(range(k + 1), n):
                if rng.random() > 0.25:
                    continue
                a = RingMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], ZZ)
                if sum(ms) <= k * n:
                    assert coeff_cor21_det(n, k, ms, a) == coeff_theorem21(CoefficientProblem(n, 0, (k,) * n, ms, a))
                    checked += 1
                if len(set(ms)) == n and sum(ms) + math.comb(n, 2) <= k * n:
                    assert coeff_cor21_per(n, k, ms, a) == coeff_theorem21(CoefficientProblem(n, 1, (k,) * n, ms, a))
                    checked += 1
    assert checked > 100


def test_delta_zero_equal_k_is_det_multiple():
    # with equal k_i the closed form is a multinomial times det(a)
    a = RingMatrix.from_rows([[2, -1, 0], [1, 3, 1], [0, 2, 5]], ZZ)
    val = coeff_theorem21(CoefficientProblem(3, 0, (4, 4, 4), (0, 1, 2), a))
    K = 12 - 3
    assert val == math.factorial(K) // (math.factorial(4) * math.factorial(3) * math.factorial(2)) * int(determinant(a))


def test_per_form_uses_permanent():
    a = RingMatrix.from_rows([[1, 1], [1, 1]], ZZ)
    assert int(permanent_ryser(a)) == 2
    assert coeff_cor21_per(2, 2, (0, 1), a) == -2
