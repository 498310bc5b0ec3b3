"""Brute-force ground truth for restricted sumsets.

Enumerates admissible tuples of every restricted sumset mode, searches
distinct-sum transversals in cyclic groups and product numberings in
characteristic 2, builds the tightness examples, and compares certified
bounds with exhaustive counts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .exactalg import CyclicGroup, RingError, RingSpec, SizeLimitError, euler_phi, is_prime
from .instance import SumsetInstance, evaluate_univariate
from .multipoly import SparsePoly
from .nullbound import COUNTS_VALUE_SETS, BoundCertificate, certify

ENUMERATION_LIMIT = 10**7
TRANSVERSAL_LIMIT = 8


@dataclass
class EnumerationResult:
    distinct_sums: int
    distinct_value_sets: int
    admissible: int
    sums: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "distinct_sums": self.distinct_sums,
            "distinct_value_sets": self.distinct_value_sets,
            "admissible_tuples": self.admissible,
            "sums": self.sums,
            "witnesses": self.witnesses,
        }


def _pair_checker(inst: SumsetInstance):
    """Return (per-element precomputation, pairwise predicate) for the instance's mode."""
    c = inst.carrier
    mode = inst.mode
    n = inst.n
    if mode in ("S_eq14", "T_eq15", "C_eq18"):
        pv = [{a: evaluate_univariate(inst.polys[i], a, c) for a in A} for i, A in enumerate(inst.subsets)]
    if mode in ("SET_11", "SET_12", "MULTI_11", "SNEVILY"):
        mm = c.from_int(1 if mode == "SNEVILY" else inst.m)
        b = inst.shifts
        scaled = [{a: c.mul(mm, a) for a in A} for A in inst.subsets]
        shifted = [{a: c.add(scaled[i][a], b[i]) for a in A} for i, A in enumerate(inst.subsets)]
        plain_shift = [{a: c.add(a, b[i]) for a in A} for i, A in enumerate(inst.subsets)]

    if mode == "S_eq14":
        def ok(j, aj, i, ai):
            return pv[j][aj] != pv[i][ai]
    elif mode == "T_eq15":
        def ok(j, aj, i, ai):
            return aj != ai and pv[j][aj] != pv[i][ai]
    elif mode == "C_eq18":
        b = inst.shifts
        consts = {(j, i): inst.constant(j, i) for j in range(n) for i in range(j + 1, n)}

        def ok(j, aj, i, ai):
            # j < i: a_j b_j - a_i b_i != c_ji
            if pv[j][aj] == pv[i][ai]:
                return False
            return c.sub(c.mul(aj, b[j]), c.mul(ai, b[i])) != consts[(j, i)]
    elif mode in ("SET_11", "SNEVILY"):
        def ok(j, aj, i, ai):
            return aj != ai and shifted[j][aj] != shifted[i][ai]
    elif mode == "SET_12":
        def ok(j, aj, i, ai):
            return scaled[j][aj] != scaled[i][ai] and plain_shift[j][aj] != plain_shift[i][ai]
    else:  # MULTI_11
        def ok(j, aj, i, ai):
            return shifted[j][aj] != shifted[i][ai]
    return ok


def enumerate_sumset(inst: SumsetInstance, limit: int = ENUMERATION_LIMIT, max_witnesses: int = 3) -> EnumerationResult:
    """Walk A_1 x ... x A_n, extending only admissible prefixes.

    Counts admissible tuples, distinct sums a_1+...+a_n and distinct value
    multisets {a_1,...,a_n}.
    """
    total = inst.tuple_count()
    if total > limit:
        raise SizeLimitError(f"enumeration would visit {total} tuples, above the limit {limit}")
    c = inst.carrier
    ok = _pair_checker(inst)
    subsets = inst.subsets
    n = inst.n
    sums: set = set()
    value_sets: set = set()
    witnesses: list = []
    count = 0
    chosen: list = []
    key = c.sort_key

    def extend(i: int, acc) -> None:
        nonlocal count
        if i == n:
            count += 1
            sums.add(acc)
            value_sets.add(tuple(sorted(key(a) for a in chosen)))
            if len(witnesses) < max_witnesses:
                witnesses.append([c.element_to_json(a) for a in chosen])
            return
        for a in subsets[i]:
            if all(ok(j, chosen[j], i, a) for j in range(i)):
                chosen.append(a)
                extend(i + 1, c.add(acc, a))
                chosen.pop()

    extend(0, c.zero())
    ordered = sorted(sums, key=key)
    return EnumerationResult(len(sums), len(value_sets), count, [c.element_to_json(s) for s in ordered], witnesses)


def enumerate_polynomial_restriction(P: SparsePoly, subsets: Sequence[Sequence]) -> int:
    """|{a_1+...+a_n : a_i in A_i, P(a_1,...,a_n) != 0}| by exhaustion."""
    spec = P.spec
    sums = set()
    for point in itertools.product(*subsets):
        if not P.evaluate(point).is_zero():
            acc = spec.zero()
            for a in point:
                acc = spec.add(acc, spec.coerce(a))
            sums.add(acc)
    return len(sums)


# ---------------------------------------------------------------------------
# transversals


def snevily_transversal(group: CyclicGroup, A: Sequence[int], B: Sequence[int]) -> list[tuple[int, int]] | None:
    """Pair the elements of A with b_1..b_n (in the given order) so all a_i + b_i differ.

    Backtracking with bitmasks of used elements of A and used sums.
    """
    A = [group.coerce(a) for a in A]
    B = [group.coerce(b) for b in B]
    n = len(A)
    if len(B) != n or len(set(A)) != n or len(set(B)) != n:
        raise RingError("A and B must be sets of equal size")
    if n > TRANSVERSAL_LIMIT:
        raise SizeLimitError(f"transversal search is limited to n <= {TRANSVERSAL_LIMIT}")
    N = group.N
    pick = [0] * n

    def search(i: int, used_a: int, used_sum: int) -> bool:
        if i == n:
            return True
        for idx, a in enumerate(A):
            if used_a >> idx & 1:
                continue
            s = (a + B[i]) % N
            if used_sum >> s & 1:
                continue
            pick[i] = a
            if search(i + 1, used_a | 1 << idx, used_sum | 1 << s):
                return True
        return False

    if not search(0, 0, 0):
        return None
    return [(pick[i], B[i]) for i in range(n)]


def corollary11_numbering(fieldspec: RingSpec, A: Sequence, B: Sequence) -> list[tuple] | None:
    """Number A against b_1..b_n so that the products a_i b_i are pairwise distinct.

    Only for fields of characteristic 2, where such a numbering always exists.
    """
    if fieldspec.characteristic() != 2:
        raise RingError(f"corollary11_numbering needs characteristic 2, got {fieldspec}")
    A = [fieldspec.coerce(a) for a in A]
    B = [fieldspec.coerce(b) for b in B]
    n = len(A)
    if len(B) != n or len(set(A)) != n or len(set(B)) != n:
        raise RingError("A and B must be sets of equal size")
    mul = fieldspec.mul
    pick: list = [None] * n
    used_prod: set = set()

    def search(i: int, used_a: int) -> bool:
        if i == n:
            return True
        for idx, a in enumerate(A):
            if used_a >> idx & 1:
                continue
            prod = mul(a, B[i])
            if prod in used_prod:
                continue
            used_prod.add(prod)
            pick[i] = a
            if search(i + 1, used_a | 1 << idx):
                return True
            used_prod.discard(prod)
        return False

    if not search(0, 0):
        return None
    return [(pick[i], B[i]) for i in range(n)]


# ---------------------------------------------------------------------------
# tightness examples


def build_example_11(p: int = 3, variant: str = "i") -> SumsetInstance:
    """The two instances on which |T| equals L.

    Variant "i": GF(p), b_1 = 0, b_2 = ... = b_p = 1, A_i = {0, 1, ..., p-1},
    P_i(x) = x + b_i.  Variant "ii": GF(4), A_1 = A_2 = {0, 1, a},
    P_1 = x^2 + x, P_2 = x^2 + x + 1.
    """
    if variant == "i":
        if not is_prime(p) or p > 7:
            raise RingError(f"variant i takes a prime p <= 7, got {p}")
        F = RingSpec.prime_field(p)
        b = 1
        shifts = [0] + [b] * (p - 1)
        A = [j * b % p for j in range(p)]
        return SumsetInstance(F, tuple(tuple(A) for _ in range(p)), "T_eq15",
                              polys=tuple((s, 1) for s in shifts), shifts=tuple(shifts),
                              theorem="T1.3ii", label=f"example-1.1i-p{p}")
    if variant == "ii":
        F = RingSpec.extension_field(2, 2)
        a = F.generator()
        A = (F.zero(), F.one(), a)
        P1 = (0, 1, 1)
        P2 = (1, 1, 1)
        return SumsetInstance(F, (A, A), "T_eq15", polys=(P1, P2), theorem="T1.3ii", label="example-1.1ii")
    raise ValueError(f"variant must be 'i' or 'ii', got {variant!r}")


def multiplicative_order(x, F: RingSpec) -> int:
    size = F.size() - 1
    one = F.one()
    for d in sorted(d for d in range(1, size + 1) if size % d == 0):
        if F.pow(x, d) == one:
            return d
    raise AssertionError("unreachable for nonzero field elements")


def build_example_12(m: int, n: int, p: int) -> tuple[list, RingSpec]:
    """A set of size m(n-1) in GF(p^phi(m)) with no n elements of distinct m-th powers."""
    if not is_prime(p):
        raise RingError(f"p must be prime, got {p}")
    if m < 1 or n < 1:
        raise RingError("m and n must be positive")
    if m % p == 0:
        raise RingError(f"p = {p} divides m = {m}")
    deg = euler_phi(m)
    if deg > 4:
        raise SizeLimitError(f"phi(m) = {deg} > 4")
    F = RingSpec.gf(p, deg)
    if F.size() <= m * (n - 1):
        raise RingError(f"need p^phi(m) = {F.size()} > m(n-1) = {m * (n - 1)}")
    nonzero = F.elements()[1:]
    gamma = next((x for x in nonzero if multiplicative_order(x, F) == m), None)
    if gamma is None:
        raise RingError(f"no element of order {m} in {F}")
    cs, powers = [], set()
    for x in nonzero:
        if len(cs) == n - 1:
            break
        xm = F.pow(x, m)
        if xm not in powers:
            powers.add(xm)
            cs.append(x)
    if len(cs) < n - 1:
        raise RingError(f"only {len(cs)} distinct m-th powers available, need {n - 1}")
    A = [F.mul(c, F.pow(gamma, j)) for c in cs for j in range(m)]
    assert len(set(A)) == m * (n - 1)
    return A, F


def example_12_instance(m: int, n: int, p: int) -> SumsetInstance:
    """A_1 = ... = A_n = the set from build_example_12, P_i(x) = x^m, mode T_eq15."""
    A, F = build_example_12(m, n, p)
    xm = tuple([0] * m + [1])
    return SumsetInstance(F, tuple(tuple(A) for _ in range(n)), "T_eq15", polys=tuple(xm for _ in range(n)),
                          theorem="T1.3ii", label=f"example-1.2-m{m}-n{n}-p{p}")


# ---------------------------------------------------------------------------
# bound versus brute force


@dataclass
class VerificationReport:
    label: str
    certificate: BoundCertificate
    enumeration: EnumerationResult
    compared: str
    count: int
    passed: bool
    equality: bool
    seed: int | None = None

    def to_json(self) -> dict[str, Any]:
        out = {
            "label": self.label,
            "certificate": self.certificate.to_json(),
            "enumeration": self.enumeration.to_json(),
            "compared": self.compared,
            "count": self.count,
            "bound": self.certificate.guaranteed_lower_bound,
            "pass": self.passed,
            "equality": self.equality,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def verify_bound(inst: SumsetInstance, theorem: str | None = None, limit: int = ENUMERATION_LIMIT,
                 seed: int | None = None) -> VerificationReport:
    """Certify ``inst`` and enumerate it; passes when no bound is issued or count >= bound.

    The T1.1 selectors bound the number of value sets {a_1,...,a_n}; every
    other selector bounds the number of distinct sums.
    """
    cert = certify(inst, theorem)
    enum = enumerate_sumset(inst, limit)
    compared = "distinct_value_sets" if cert.theorem in COUNTS_VALUE_SETS else "distinct_sums"
    count = getattr(enum, compared)
    bound = cert.guaranteed_lower_bound
    passed = bound is None or count >= bound
    return VerificationReport(inst.label, cert, enum, compared, count, passed, bound is not None and count == bound, seed)


# ---------------------------------------------------------------------------
# random instances for sweeps


def _random_subset(rng: random.Random, elements: list, k: int) -> tuple:
    return tuple(sorted(rng.sample(elements, k), key=lambda x: elements.index(x)))


def random_field_instance(rng: random.Random, F: RingSpec, n: int, ks: Sequence[int], m: int, mode: str,
                          monic: bool = True, distinct_shifts: bool = False, theorem: str | None = None,
                          label: str = "") -> SumsetInstance:
    """Random subsets, random degree-m restriction polynomials (monic on request) and shifts."""
    elems = F.elements()
    nonzero = elems[1:]
    subsets = tuple(_random_subset(rng, elems, k) for k in ks)
    polys = []
    for _ in range(n):
        low = [rng.choice(elems) for _ in range(m)]
        lead = F.one() if monic else rng.choice(nonzero)
        polys.append(tuple(low) + (lead,))
    if distinct_shifts:
        shifts = tuple(rng.sample(elems, n))
    else:
        shifts = tuple(rng.choice(elems) for _ in range(n))
    consts = {}
    if mode == "C_eq18":
        consts = {(i, j): rng.choice(elems) for i in range(n) for j in range(i + 1, n)}
    if mode == "S_eq14" or mode == "T_eq15":
        shifts = ()
    return SumsetInstance(F, subsets, mode, polys=tuple(polys), shifts=shifts, constants=consts,
                          theorem=theorem, label=label)


def random_group_instance(rng: random.Random, N: int, n: int, k: int, m: int, mode: str,
                          theorem: str | None = None, label: str = "") -> SumsetInstance:
    """Random A_i of size k in Z_N with pairwise distinct shifts."""
    G = CyclicGroup(N)
    elems = G.elements()
    subsets = tuple(_random_subset(rng, elems, k) for _ in range(n))
    shifts = tuple(rng.sample(elems, n))
    return SumsetInstance(G, subsets, mode, m=m, shifts=shifts, theorem=theorem, label=label)


def odd_order_elements(N: int) -> list[int]:
    G = CyclicGroup(N)
    return [g for g in G.elements() if G.order(g) % 2 == 1]

