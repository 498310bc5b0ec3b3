"""Hypothesis checking and guaranteed lower bounds for restricted sumsets.

:func:`certify` checks, exactly, every hypothesis of the selected theorem on a
:class:`~nullsum.instance.SumsetInstance` and issues a lower bound on the
restricted sumset only when all of them hold.  :func:`lemma31_bound` is the
generic polynomial-method step the theorems rest on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from .coeffcore import capped_sum_power, factorial
from .exactalg import (
    CyclicGroup,
    RingMatrix,
    RingSpec,
    RingValue,
    SizeLimitError,
    permanent_ryser,
    prime_factors,
)
from .instance import InstanceError, SumsetInstance
from .multipoly import SparsePoly, coefficient_of_product

THEOREMS = ("T1.1i", "T1.1ii", "T1.2i", "T1.2ii", "T1.2iii", "T1.3i", "T1.3ii", "T1.4i", "T1.4ii", "T1.4iii")

# sumset each theorem bounds, and whether it bounds value-sets instead of sums
THEOREM_MODES = {
    "T1.1i": ("MULTI_11",),
    "T1.1ii": ("SET_11", "SET_12"),
    "T1.2i": ("S_eq14",),
    "T1.2ii": ("T_eq15",),
    "T1.2iii": ("T_eq15",),
    "T1.3i": ("T_eq15",),
    "T1.3ii": ("T_eq15",),
    "T1.4i": ("C_eq18",),
    "T1.4ii": ("C_eq18",),
    "T1.4iii": ("C_eq18",),
}
COUNTS_VALUE_SETS = ("T1.1i", "T1.1ii")

PER_VANDERMONDE_LIMIT = 8
PER_VANDERMONDE_Q_LIMIT = 100
FACTORIAL_DQ_LIMIT = 20


class DegreeError(ValueError):
    """deg P exceeds sum(k_i - 1)."""


# ---------------------------------------------------------------------------
# the semigroup D(q)


@dataclass(frozen=True)
class SemigroupDq:
    """Nonnegative integer combinations of the prime divisors of q."""

    q: int

    @property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(prime_factors(self.q))

    def __contains__(self, x: int) -> bool:
        return dq_member(self.q, x)


def dq_member(q: int, x: int) -> bool:
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    if x < 0:
        return False
    primes = prime_factors(q)
    if not primes:
        return x == 0
    if len(primes) == 1:
        return x % primes[0] == 0
    p1, p2 = primes[0], primes[1]
    # two coprime generators already cover everything beyond p1*p2 - p1 - p2
    if x > p1 * p2:
        return True
    reach = [False] * (x + 1)
    reach[0] = True
    for v in range(1, x + 1):
        reach[v] = any(v >= p and reach[v - p] for p in primes)
    return reach[x]


def factorial_in_dq(n: int, q: int) -> bool:
    if n < 0 or n > FACTORIAL_DQ_LIMIT:
        raise SizeLimitError(f"factorial_in_dq supports 0 <= n <= {FACTORIAL_DQ_LIMIT}")
    return dq_member(q, math.factorial(n))


def per_vandermonde_roots(q: int, exps: Sequence[int]) -> tuple[RingValue, bool]:
    """per(b_j^(i-1)) for b_j = zeta_q^(e_j), exactly in Z[zeta_q]."""
    if len(exps) > PER_VANDERMONDE_LIMIT or q > PER_VANDERMONDE_Q_LIMIT:
        raise SizeLimitError(
            f"per_vandermonde_roots supports n <= {PER_VANDERMONDE_LIMIT} and q <= {PER_VANDERMONDE_Q_LIMIT}"
        )
    spec = RingSpec.cyclotomic(q)
    B = RingMatrix.vandermonde([spec.zeta_power(e) for e in exps], spec)
    per = permanent_ryser(B)
    return per, per.is_zero()


def root_of_unity_order(b, spec: RingSpec) -> int | None:
    """Least t >= 1 with b^t = 1 when t divides q, else None (cyclotomic rings)."""
    one = spec.one()
    for t in range(1, spec.q + 1):
        if spec.q % t == 0 and spec.pow(b, t) == one:
            return t
    return None


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class BoundCertificate:
    theorem: str
    hypotheses: tuple[Hypothesis, ...]
    guaranteed_lower_bound: int | None
    derived: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(cls, theorem: str, hypotheses: Sequence[Hypothesis], bound: int,
              derived: dict[str, Any] | None = None) -> BoundCertificate:
        """The bound is kept only when every hypothesis holds."""
        hyps = tuple(hypotheses)
        ok = all(h.holds for h in hyps)
        return cls(theorem, hyps, bound if ok else None, dict(derived or {}))

    @property
    def issued(self) -> bool:
        return self.guaranteed_lower_bound is not None

    def with_hypothesis_failed(self, name: str) -> BoundCertificate:
        hyps = [Hypothesis(h.name, False, h.detail + " (forced false)") if h.name == name else h
                for h in self.hypotheses]
        bound = self.guaranteed_lower_bound
        if bound is None:
            bound = self.derived.get("_bound")
        return BoundCertificate.build(self.theorem, hyps, bound, self.derived)

    def to_json(self) -> dict:
        derived = {k: _jsonable(v) for k, v in self.derived.items() if not k.startswith("_")}
        return {
            "theorem": self.theorem,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "bound": self.guaranteed_lower_bound,
            "derived": derived,
        }


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "infinite"
    if isinstance(v, RingValue):
        return v.to_json()
    return v


def _ch_str(ch) -> str:
    return "infinite" if ch == math.inf else str(ch)


def _distinct(values) -> bool:
    return len(set(values)) == len(values)


def _carrier_field(inst: SumsetInstance, theorem: str) -> RingSpec:
    if not isinstance(inst.carrier, RingSpec) or inst.carrier.kind == "integer":
        raise InstanceError(f"carrier: {theorem} needs a field (or Z[zeta_q] inside C), got {inst.carrier}")
    return inst.carrier


def _poly_degree(inst: SumsetInstance, theorem: str, monic: bool) -> int:
    degs = {len(P) - 1 for P in inst.polys}
    if len(degs) != 1:
        raise InstanceError(f"polys: {theorem} needs every P_i of one degree m, got degrees {sorted(degs)}")
    m = degs.pop()
    if m < 1:
        raise InstanceError(f"polys: {theorem} needs degree m > 0")
    if monic:
        one = inst.carrier.one()
        for i, P in enumerate(inst.polys, start=1):
            if P[-1] != one:
                raise InstanceError(f"polys[{i}]: {theorem} requires P_i monic and of degree m")
    return m


def _equal_k(ks) -> Hypothesis:
    return Hypothesis("equal_cardinalities", len(set(ks)) == 1, f"|A_i| = {list(ks)}")


def _per_B(bs, spec: RingSpec) -> RingValue:
    return permanent_ryser(RingMatrix.vandermonde(bs, spec))


def default_theorem(inst: SumsetInstance) -> str | None:
    cyclo = isinstance(inst.carrier, RingSpec) and inst.carrier.kind == "cyclotomic"
    return {
        "MULTI_11": "T1.1i",
        "SET_11": "T1.1ii",
        "SET_12": "T1.1ii",
        "S_eq14": "T1.2i",
        "T_eq15": "T1.2iii" if cyclo else "T1.2ii",
        "C_eq18": "T1.4iii" if cyclo else "T1.4i",
    }.get(inst.mode)


def certify(inst: SumsetInstance, theorem: str | None = None) -> BoundCertificate:
    """Check the selected theorem's hypotheses on ``inst`` and emit its bound.

    Structural requirements (mode, carrier kind, degree/monicity of the P_i)
    raise :class:`InstanceError`; numerical hypotheses are recorded and a
    failing one withholds the bound.
    """
    theorem = theorem or inst.theorem or default_theorem(inst)
    if theorem not in THEOREMS:
        raise InstanceError(f"theorem: unknown selector {theorem!r}; expected one of {', '.join(THEOREMS)}")
    if inst.mode not in THEOREM_MODES[theorem]:
        raise InstanceError(f"mode: {theorem} bounds the {'/'.join(THEOREM_MODES[theorem])} sumset, got {inst.mode}")
    return _CERTIFIERS[theorem](inst, theorem)


def _cert_t11(inst: SumsetInstance, theorem: str) -> BoundCertificate:
    G = inst.carrier
    if not isinstance(G, CyclicGroup):
        raise InstanceError(f"carrier: {theorem} is certified on cyclic groups Z_N only")
    n, ks, m = inst.n, inst.ks, inst.m
    k = ks[0]
    c2 = math.comb(n, 2)
    hyps = [
        Hypothesis("n_gt_1", n > 1, f"n = {n}"),
        _equal_k(ks),
        Hypothesis("k_ge_n", k >= n, f"{k} >= {n}"),
        Hypothesis("m_le_(k-1)/(n-1)", n > 1 and m * (n - 1) <= k - 1, f"{m}*({n}-1) <= {k}-1"),
    ]
    bs = inst.shifts
    orders = [G.order(b) for b in bs]
    derived: dict[str, Any] = {"orders": orders}
    if theorem == "T1.1i":
        hyps.append(Hypothesis("b_distinct", _distinct(bs), f"b = {list(bs)}"))
        derived["K"] = (k - 1) * n - m * c2
        bound = (k - 1) * n - m * c2 + 1
    else:
        q = math.lcm(*orders)
        odd = all(o % 2 for o in orders)
        in_dq = n <= FACTORIAL_DQ_LIMIT and factorial_in_dq(n, q)
        distinct = _distinct(bs)
        holds = (distinct and odd) or not in_dq
        hyps.append(Hypothesis(
            "b_distinct_odd_order_or_factorial_not_in_Dq", holds,
            f"distinct={distinct}, orders={orders}, q=lcm={q}, {n}! in D(q)={in_dq}"))
        derived.update(q=q, L=(k - 1) * n - (m + 1) * c2)
        bound = (k - 1) * n - (m + 1) * c2 + 1
    derived["_bound"] = bound
    return BoundCertificate.build(theorem, hyps, bound, derived)


def _cert_t12(inst: SumsetInstance, theorem: str) -> BoundCertificate:
    F = _carrier_field(inst, theorem)
    m = _poly_degree(inst, theorem, monic=False)
    n, ks = inst.n, inst.ks
    k = ks[0]
    c2 = math.comb(n, 2)
    K = (k - 1) * n - m * c2
    ch = F.characteristic()
    bs = [P[-1] for P in inst.polys]
    hyps = [_equal_k(ks), Hypothesis("k_gt_m(n-1)", k > m * (n - 1), f"{k} > {m}*({n}-1)")]
    derived: dict[str, Any] = {"K": K, "m": m}
    if theorem == "T1.2i":
        hyps.append(Hypothesis("ch_gt_K", ch > K, f"{_ch_str(ch)} > {K}"))
        hyps.append(Hypothesis("b_distinct", _distinct(bs), f"leading coefficients {[F.format(b) for b in bs]}"))
        bound = K + 1
    elif theorem == "T1.2ii":
        per = _per_B(bs, F)
        derived["per_B"] = per
        hyps.append(Hypothesis("ch_gt_K_minus_C(n,2)", ch > K - c2, f"{_ch_str(ch)} > {K - c2}"))
        hyps.append(Hypothesis("per_B_nonzero", not per.is_zero(), f"per(B) = {per}"))
        bound = K - c2 + 1
    else:
        if F.kind != "cyclotomic":
            raise InstanceError("carrier: T1.2iii needs a cyclotomic carrier Z[zeta_q]")
        orders = [root_of_unity_order(b, F) for b in bs]
        roots = all(o is not None for o in orders)
        q = math.lcm(*orders) if roots else F.q
        in_dq = n <= FACTORIAL_DQ_LIMIT and factorial_in_dq(n, q)
        per = _per_B(bs, F)
        derived.update(q=q, per_B=per)
        hyps.append(Hypothesis("b_roots_of_unity", roots, f"orders {orders} in Z[zeta_{F.q}]"))
        hyps.append(Hypothesis("factorial_not_in_Dq", not in_dq, f"{n}! = {math.factorial(n)} in D({q}) is {in_dq}"))
        bound = K - c2 + 1
    derived["_bound"] = bound
    return BoundCertificate.build(theorem, hyps, bound, derived)


def t13_exceptional(k: int, n: int, m: int, ch) -> bool:
    """The two configurations in which |T| = L is possible."""
    return (k == n and n >= ch > m == 1) or (ch == 2 and m == 2 and n == 2 and k == 3)


def _cert_t13(inst: SumsetInstance, theorem: str) -> BoundCertificate:
    F = _carrier_field(inst, theorem)
    m = _poly_degree(inst, theorem, monic=True)
    n, ks = inst.n, inst.ks
    c2 = math.comb(n, 2)
    ch = F.characteristic()
    L = sum(k - 1 for k in ks) - (m + 1) * c2
    hyps = [
        Hypothesis("k_nondecreasing", all(x <= y for x, y in zip(ks, ks[1:])), f"|A_i| = {list(ks)}"),
        Hypothesis("m_gt_kn_minus_k1", m > ks[-1] - ks[0], f"{m} > {ks[-1]} - {ks[0]}"),
        Hypothesis("kn_gt_m(n-1)", ks[-1] > m * (n - 1), f"{ks[-1]} > {m}*({n}-1)"),
    ]
    derived: dict[str, Any] = {"L": L, "m": m}
    if theorem == "T1.3i":
        lfnf = factorial(L) * factorial(n) if L >= 0 else None
        derived["L!n!"] = lfnf
        hyps.append(Hypothesis("ch_gt_L!n!", lfnf is not None and ch > lfnf, f"{_ch_str(ch)} > {lfnf}"))
        bound = L + 1
    else:
        hyps.insert(0, _equal_k(ks))
        hyps.append(Hypothesis("ch_gt_L", ch > L, f"{_ch_str(ch)} > {L}"))
        exceptional = t13_exceptional(ks[0], n, m, ch)
        derived["exceptional"] = exceptional
        bound = L if exceptional else L + 1
    derived["_bound"] = bound
    return BoundCertificate.build(theorem, hyps, bound, derived)


def _cert_t14(inst: SumsetInstance, theorem: str) -> BoundCertificate:
    F = _carrier_field(inst, theorem)
    m = _poly_degree(inst, theorem, monic=True)
    n, ks = inst.n, inst.ks
    k = ks[0]
    c2 = math.comb(n, 2)
    L = (k - 1) * n - (m + 1) * c2
    ch = F.characteristic()
    bs = inst.shifts
    hyps = [_equal_k(ks), Hypothesis("k_gt_m(n-1)", k > m * (n - 1), f"{k} > {m}*({n}-1)")]
    derived: dict[str, Any] = {"L": L, "m": m}
    if theorem == "T1.4i":
        per = _per_B(bs, F)
        derived["per_B"] = per
        hyps.append(Hypothesis("ch_gt_L", ch > L, f"{_ch_str(ch)} > {L}"))
        hyps.append(Hypothesis("per_B_nonzero", not per.is_zero(), f"per(B) = {per}"))
        bound = L + 1
    elif theorem == "T1.4ii":
        hyps += [
            Hypothesis("ch_eq_2", ch == 2, f"ch = {_ch_str(ch)}"),
            Hypothesis("m_eq_1", m == 1, f"m = {m}"),
            Hypothesis("k_eq_n_plus_1", k == n + 1, f"{k} = {n}+1"),
            Hypothesis("b_distinct", _distinct(bs), f"b = {[F.format(b) for b in bs]}"),
        ]
        bound = n + 1
    else:
        if F.kind != "cyclotomic":
            raise InstanceError("carrier: T1.4iii needs a cyclotomic carrier Z[zeta_q]")
        orders = [root_of_unity_order(b, F) for b in bs]
        roots = all(o is not None for o in orders)
        q = math.lcm(*orders) if roots else F.q
        in_dq = n <= FACTORIAL_DQ_LIMIT and factorial_in_dq(n, q)
        odd_distinct = q % 2 == 1 and _distinct(bs)
        derived.update(q=q, per_B=_per_B(bs, F))
        hyps.append(Hypothesis("b_roots_of_unity", roots, f"orders {orders} in Z[zeta_{F.q}]"))
        hyps.append(Hypothesis("factorial_not_in_Dq_or_odd_q_distinct", (not in_dq) or odd_distinct,
                               f"{n}! in D({q}) is {in_dq}; q odd and b distinct is {odd_distinct}"))
        bound = L + 1
    derived["_bound"] = bound
    return BoundCertificate.build(theorem, hyps, bound, derived)


_CERTIFIERS = {
    "T1.1i": _cert_t11, "T1.1ii": _cert_t11,
    "T1.2i": _cert_t12, "T1.2ii": _cert_t12, "T1.2iii": _cert_t12,
    "T1.3i": _cert_t13, "T1.3ii": _cert_t13,
    "T1.4i": _cert_t14, "T1.4ii": _cert_t14, "T1.4iii": _cert_t14,
}


# ---------------------------------------------------------------------------
# the polynomial-method lemma


def lemma31_coefficient(P: SparsePoly, ks: Sequence[int]) -> RingValue:
    """[x1^(k1-1)...xn^(kn-1)] P * (x1+...+xn)^(sum(k_i-1) - deg P), by expansion."""
    target = tuple(k - 1 for k in ks)
    D = sum(target) - P.total_degree()
    if D < 0:
        raise DegreeError(f"deg P = {P.total_degree()} exceeds sum(k_i - 1) = {sum(target)}")
    return coefficient_of_product(P, capped_sum_power(P.nvars, P.spec, target, D), target)


def lemma31_bound(P: SparsePoly, ks: Sequence[int], coefficient) -> int | None:
    """sum(k_i - 1) - deg P + 1 when the supplied top coefficient is nonzero, else None."""
    if not P.terms:
        raise DegreeError("P must be a nonzero polynomial")
    top = sum(k - 1 for k in ks)
    deg = P.total_degree()
    if deg > top:
        raise DegreeError(f"deg P = {deg} exceeds sum(k_i - 1) = {top}")
    if isinstance(coefficient, RingValue):
        zero = coefficient.is_zero()
    else:
        zero = P.spec.is_zero(P.spec.coerce(coefficient))
    return None if zero else top - deg + 1
