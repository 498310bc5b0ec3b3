import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nullsum.exactalg import RingMatrix, RingSpec
from nullsum.multipoly import (
    ExponentCap,
    SparsePoly,
    coefficient_of_product,
    extract_coefficient,
    falling_factorial,
    generic_determinant_poly,
    poly_mul,
    poly_power,
    sum_of_variables,
    vandermonde_factor,
)

ZZ = RingSpec.integer()


def x(i, n=2, spec=ZZ):
    return SparsePoly.variable(i, n, spec)


def polys(nvars, spec=ZZ):
    term = st.tuples(st.tuples(*[st.integers(0, 3)] * nvars), st.integers(-4, 4))
    return st.lists(term, max_size=5).map(lambda ts: SparsePoly(nvars, spec, dict(ts)))


# -- examples ----------------------------------------------------------------


def test_mul_examples():
    x1, x2 = x(0), x(1)
    assert (x1 + x2) * (x1 - x2) == x1 ** 2 - x2 ** 2
    f = x1 * 3 + x2
    assert f * SparsePoly.one(2, ZZ) == f
    assert poly_mul(x1 + x2, x1 + x2, ExponentCap((1, 1))) == (x1 * x2) * 2


def test_power_examples():
    s = sum_of_variables(2, ZZ)
    assert poly_power(s, 3).coefficient((2, 1)) == 3
    assert poly_power(sum_of_variables(3, ZZ), 0) == SparsePoly.one(3, ZZ)
    for K in range(8):
        P = poly_power(s, K)
        for j in range(K + 1):
            assert P.coefficient((j, K - j)) == math.factorial(K) // (math.factorial(j) * math.factorial(K - j))


def test_vandermonde_examples():
    assert vandermonde_factor(2, ZZ) == x(1) - x(0)
    assert vandermonde_factor(3, ZZ).coefficient((0, 1, 2)) == 1
    assert vandermonde_factor(1, ZZ) == SparsePoly.one(1, ZZ)
    assert str(vandermonde_factor(3, ZZ)) == "x2*x3^2 - x2^2*x3 - x1*x3^2 + x1*x2^2 + x1^2*x3 - x1^2*x2"


def test_determinant_poly_examples():
    a = RingMatrix.from_rows([[1, 2], [3, 4]], ZZ)
    assert str(generic_determinant_poly(a, (0, 1))) == "4*x2 - 6*x1"
    assert generic_determinant_poly(RingMatrix.from_rows([[5]], ZZ), (3,)) == SparsePoly(1, ZZ, {(3,): 5})
    for n in (1, 2, 3, 4):
        ident = RingMatrix.identity(n, ZZ)
        ones = RingMatrix.from_rows([[1] * n for _ in range(n)], ZZ)
        assert generic_determinant_poly(ones, tuple(range(n))) == vandermonde_factor(n, ZZ)
        # identity keeps only the diagonal monomial
        assert generic_determinant_poly(ident, tuple(range(n))).sorted_terms() == [
            (tuple(range(n)), 1)]


def test_extract_examples():
    cube = poly_power(x(0) + x(1), 3)
    assert extract_coefficient(cube, (2, 1)) == 3
    assert extract_coefficient(cube, (4, 0)) == 0


def test_worked_coefficients():
    a = RingMatrix.from_rows([[1, 2], [3, 4]], ZZ)
    det = generic_determinant_poly(a, (0, 1))
    s = sum_of_variables(2, ZZ)
    assert extract_coefficient(det * s ** 3, (2, 2)) == -6
    assert extract_coefficient(det * vandermonde_factor(2, ZZ) * s ** 2, (2, 2)) == -10
    assert coefficient_of_product(det, s ** 3, (2, 2)) == -6


def test_falling_factorial():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(3, 5) == 0
    F = RingSpec.gf(7)
    assert falling_factorial(F.value(3), 2) == 6


def test_format_and_order():
    p = x(0) ** 2 - x(1) * 3 + SparsePoly.constant(1, 2, ZZ)
    assert [e for e, _ in p.sorted_terms()] == [(0, 0), (0, 1), (2, 0)]


def test_swap_and_evaluate():
    f = x(0) * 2 + x(1) ** 2
    assert f.swap_variables(0, 1) == x(1) * 2 + x(0) ** 2
    assert f.evaluate((3, 4)) == 22


def test_mismatched_rings_refused():
    with pytest.raises(Exception):
        x(0) + x(0, spec=RingSpec.gf(5))


# -- properties --------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(polys(3), polys(3), polys(3))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f * g == g * f
    assert f - f == SparsePoly.zero(3, ZZ)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(polys(n), polys(n), st.tuples(*[st.integers(0, 4)] * n))))
def test_capped_products_agree(args):
    f, g, caps = args
    full = f * g
    capped = poly_mul(f, g, ExponentCap(caps))
    for exps in itertools.product(*[range(c + 1) for c in caps]):
        assert capped.coefficient(exps) == full.coefficient(exps)
    assert all(all(e <= c for e, c in zip(exps, caps)) for exps, _ in capped.sorted_terms())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_vandermonde_structure(n):
    V = vandermonde_factor(n, ZZ)
    terms = V.sorted_terms()
    assert len(terms) == math.factorial(n)
    assert {int(c) for _, c in terms} <= {1, -1}
    for i, j in itertools.combinations(range(n), 2):
        assert V.swap_variables(i, j) == -V


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(0, 3), min_size=n, max_size=n), st.integers(0, n - 1))))
def test_determinant_poly_multilinear(args):
    rows, exps, i = args
    a = RingMatrix.from_rows(rows, ZZ)
    doubled = RingMatrix.from_rows([[2 * v for v in r] if k == i else r for k, r in enumerate(rows)], ZZ)
    assert generic_determinant_poly(doubled, exps) == generic_determinant_poly(a, exps) * 2
