"""Closed-form coefficients of determinant x Vandermonde x power-of-sum products.

For a matrix ``a`` and nonnegative ``ks``, ``ms`` the target is

    [x1^k1 ... xn^kn]  det(a_ij x_j^m_i) * prod_{i<j}(x_j - x_i)^delta * (x1+...+xn)^K

with K = sum(ks) - sum(ms) - delta*C(n,2).  :func:`coeff_theorem21` evaluates it
as a signed sum over permutations; :func:`coeff_oracle` expands the product
with :mod:`nullsum.multipoly` and reads the coefficient off directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .exactalg import (
    RingError,
    RingMatrix,
    RingSpec,
    RingValue,
    SizeLimitError,
    determinant,
    permanent_ryser,
    permutation_sign,
)
from .multipoly import (
    ExponentCap,
    SparsePoly,
    coefficient_of_product,
    generic_determinant_poly,
    poly_mul,
    sum_of_variables,
    vandermonde_factor,
)

CLOSED_FORM_LIMIT = 7
THEOREM22_LIMIT = 5


class HypothesisError(ValueError):
    """A required inequality or ordering on the inputs does not hold."""


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def _as_matrix(a, spec: RingSpec | None = None) -> RingMatrix:
    if isinstance(a, RingMatrix):
        return a
    return RingMatrix.from_rows(a, spec or RingSpec.integer())


@dataclass(frozen=True)
class CoefficientProblem:
    n: int
    delta: int
    ks: tuple[int, ...]
    ms: tuple[int, ...]
    a: RingMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        object.__setattr__(self, "ms", tuple(int(m) for m in self.ms))
        if not isinstance(self.a, RingMatrix):
            object.__setattr__(self, "a", _as_matrix(self.a))
        if self.delta not in (0, 1):
            raise HypothesisError(f"delta must be 0 or 1, got {self.delta}")
        if not (len(self.ks) == len(self.ms) == self.a.n == self.n):
            raise HypothesisError(
                f"dimension mismatch: n={self.n}, |ks|={len(self.ks)}, |ms|={len(self.ms)}, matrix {self.a.n}x{self.a.n}"
            )
        if min(self.ks + self.ms, default=0) < 0:
            raise HypothesisError("ks and ms must be nonnegative")

    @property
    def M(self) -> int:
        return sum(self.ms) + self.delta * math.comb(self.n, 2)

    @property
    def K(self) -> int:
        return sum(self.ks) - self.M

    def check(self) -> None:
        if self.K < 0:
            raise HypothesisError(
                f"M = sum(m_i) + delta*C(n,2) = {self.M} exceeds sum(k_i) = {sum(self.ks)}"
            )


@dataclass(frozen=True)
class PermutationTerm:
    sigma: tuple[int, ...]  # 0-based one-line notation
    D: tuple[int, ...]  # k_{sigma(i)} - m_i, in row order
    N: int
    sign: int
    sigma_prime: tuple[int, ...] | None = None


def _sigma_prime(d: Sequence[int]) -> tuple[int, ...]:
    # sigma'(r) is the row holding the r-th smallest value of d
    return tuple(sorted(range(len(d)), key=d.__getitem__))


def permutation_terms(problem: CoefficientProblem) -> list[PermutationTerm]:
    """Surviving permutations with their integer weights N_sigma and signs.

    delta = 0 keeps sigma with every k_{sigma(i)} - m_i >= 0 and weight
    K!/prod (k_{sigma(i)} - m_i)!.  delta = 1 additionally needs those values
    pairwise distinct; the weight skips factors (d_i - j) with j in D_sigma
    and the sign is that of the sorting permutation sigma'.
    """
    problem.check()
    n, ks, ms, K = problem.n, problem.ks, problem.ms, problem.K
    if n > CLOSED_FORM_LIMIT:
        raise SizeLimitError(f"closed form enumerates n! permutations; limited to n <= {CLOSED_FORM_LIMIT}")
    Kf = factorial(K)
    terms = []
    for sigma in itertools.permutations(range(n)):
        d = tuple(ks[sigma[i]] - ms[i] for i in range(n))
        if min(d, default=0) < 0:
            continue
        if problem.delta == 0:
            den = 1
            for di in d:
                den *= factorial(di)
            N, rem = divmod(Kf, den)
            if rem:
                raise AssertionError(f"K!/prod d_i! not integral for sigma={sigma}")
            terms.append(PermutationTerm(sigma, d, N, permutation_sign(sigma)))
            continue
        dset = set(d)
        if len(dset) != n:
            continue
        den = 1
        for di in d:
            for j in range(di):
                if j not in dset:
                    den *= di - j
        N, rem = divmod(Kf, den)
        if rem or N <= 0:
            raise AssertionError(f"N_sigma = {Kf}/{den} is not a positive integer for sigma={sigma}")
        sp = _sigma_prime(d)
        terms.append(PermutationTerm(sigma, d, N, permutation_sign(sp), sp))
    return terms


def coeff_theorem21(problem: CoefficientProblem) -> RingValue:
    """The target coefficient from the permutation-sum closed form."""
    spec = problem.a.spec
    rows = problem.a.rows
    total = spec.zero()
    for t in permutation_terms(problem):
        prod = spec.from_int(t.sign * t.N)
        for i, j in enumerate(t.sigma):
            prod = spec.mul(prod, rows[i][j])
        total = spec.add(total, prod)
    return RingValue(spec, total)


@lru_cache(maxsize=4096)
def capped_sum_power(nvars: int, spec: RingSpec, caps: tuple[int, ...], K: int) -> SparsePoly:
    """(x1+...+xn)^K keeping only monomials <= caps; memoized along K."""
    if K == 0:
        return SparsePoly.one(nvars, spec)
    return poly_mul(capped_sum_power(nvars, spec, caps, K - 1), sum_of_variables(nvars, spec), ExponentCap(caps))


def coeff_oracle(problem: CoefficientProblem) -> RingValue:
    """Same coefficient, read off the expanded polynomial product."""
    problem.check()
    spec = problem.a.spec
    cap = ExponentCap(problem.ks)
    P = generic_determinant_poly(problem.a, problem.ms, spec)
    if problem.delta:
        P = poly_mul(P, vandermonde_factor(problem.n, spec), cap)
    S = capped_sum_power(problem.n, spec, problem.ks, problem.K)
    return coefficient_of_product(P, S, problem.ks)


def coeff_cor21_det(n: int, k: int, ms: Sequence[int], a) -> RingValue:
    """(kn - sum m)! / prod (k - m_i)! * det(a), for m_1 <= ... <= m_n <= k."""
    a = _as_matrix(a)
    ms = tuple(ms)
    if len(ms) != n or a.n != n:
        raise HypothesisError(f"need n={n} exponents and an {n}x{n} matrix")
    if any(x > y for x, y in zip(ms, ms[1:])) or (ms and (ms[-1] > k or ms[0] < 0)):
        raise HypothesisError(f"requires 0 <= m_1 <= ... <= m_n <= k; got m={list(ms)}, k={k}")
    K = k * n - sum(ms)
    den = 1
    for m in ms:
        den *= factorial(k - m)
    N, rem = divmod(factorial(K), den)
    assert rem == 0
    d = determinant(a)
    return RingValue(a.spec, a.spec.mul(a.spec.from_int(N), d.raw))


def coeff_cor21_per(n: int, k: int, ms: Sequence[int], a) -> RingValue:
    """(-1)^C(n,2) (kn - C(n,2) - sum m)! / prod_i prod_{m_i<j<=k, j not in m_{i+1..n}} (j - m_i) * per(a).

    Requires m_1 < ... < m_n <= k.
    """
    a = _as_matrix(a)
    ms = tuple(ms)
    if len(ms) != n or a.n != n:
        raise HypothesisError(f"need n={n} exponents and an {n}x{n} matrix")
    if any(x >= y for x, y in zip(ms, ms[1:])) or (ms and (ms[-1] > k or ms[0] < 0)):
        raise HypothesisError(f"requires 0 <= m_1 < ... < m_n <= k; got m={list(ms)}, k={k}")
    c2 = math.comb(n, 2)
    K = k * n - c2 - sum(ms)
    den = 1
    for i, mi in enumerate(ms):
        later = set(ms[i + 1:])
        for j in range(mi + 1, k + 1):
            if j not in later:
                den *= j - mi
    N, rem = divmod(factorial(K), den)
    if rem:
        raise AssertionError(f"{K}!/{den} not integral")
    per = permanent_ryser(a)
    spec = a.spec
    return RingValue(spec, spec.mul(spec.from_int((-1) ** c2 * N), per.raw))


class Cor22Result(NamedTuple):
    c: int
    L: int
    bound_ok: bool
    reversal_ok: bool
    per: int


def check_cor22_conditions(ks: Sequence[int], ms: Sequence[int]) -> None:
    n = len(ks)
    d = [k - m for k, m in zip(ks, ms)]
    if not (all(x > y for x, y in zip(d, d[1:])) and d[-1] >= 0):
        raise HypothesisError(f"decreasing condition k_1-m_1 > ... > k_n-m_n >= 0 fails: k-m = {d}")
    if n > 1:
        gap = min(ms[i + 1] - ms[i] for i in range(n - 1))
        spread = max(ks) - min(ks)
        if gap < spread:
            raise HypothesisError(
                f"spacing condition min(m_(i+1)-m_i) >= max k - min k fails: {gap} < {spread}"
            )


def check_cor22(ks: Sequence[int], ms: Sequence[int], a) -> Cor22Result:
    """Evaluate c and test 0 < (-1)^(n(n-1)/2) c <= L! per(a).

    ``a`` must have nonnegative integer entries and nonzero diagonal product.
    Also reports whether every surviving permutation sorts with the reversal.
    """
    a = _as_matrix(a)
    if a.spec.kind != "integer":
        raise HypothesisError("matrix must be over the integers")
    ks, ms = tuple(ks), tuple(ms)
    n = len(ks)
    if len(ms) != n or a.n != n or n == 0:
        raise HypothesisError("dimension mismatch")
    if any(x < 0 for row in a.rows for x in row):
        raise HypothesisError("matrix entries must be nonnegative integers")
    if math.prod(a.rows[i][i] for i in range(n)) == 0:
        raise HypothesisError("diagonal product of the matrix must be nonzero")
    check_cor22_conditions(ks, ms)
    problem = CoefficientProblem(n, 1, ks, ms, a)
    L = problem.K
    reversal = tuple(range(n - 1, -1, -1))
    terms = permutation_terms(problem)
    reversal_ok = all(t.sigma_prime == reversal for t in terms)
    c = int(coeff_theorem21(problem))
    per = int(permanent_ryser(a))
    signed = (-1) ** math.comb(n, 2) * c
    return Cor22Result(c, L, 0 < signed <= factorial(L) * per, reversal_ok, per)


def theorem22_sides(k: int, ls: Sequence[int], ms: Sequence[int], a) -> tuple[RingValue, RingValue]:
    """Both sides of the l/m swap identity, each from the polynomial expansion.

    lhs = [x1^k...xn^k] det(a_ij x_j^l_i) det(x_j^m_i) (x1+...+xn)^K and rhs swaps l and m,
    with K = kn - sum(l_i + m_i).
    """
    a = _as_matrix(a)
    n = a.n
    ls, ms = tuple(ls), tuple(ms)
    if n > THEOREM22_LIMIT:
        raise SizeLimitError(f"theorem22_sides is limited to n <= {THEOREM22_LIMIT}")
    if len(ls) != n or len(ms) != n:
        raise HypothesisError("dimension mismatch")
    K = k * n - sum(ls) - sum(ms)
    if K < 0:
        raise HypothesisError(f"K = kn - sum(l_i+m_i) = {K} < 0")
    spec = a.spec
    caps = (k,) * n
    cap = ExponentCap(caps)
    ones = RingMatrix.from_rows([[1] * n for _ in range(n)], spec)
    S = capped_sum_power(n, spec, caps, K)

    def side(first, second):
        P = poly_mul(generic_determinant_poly(a, first, spec), generic_determinant_poly(ones, second, spec), cap)
        return coefficient_of_product(P, S, caps)

    return side(ls, ms), side(ms, ls)
