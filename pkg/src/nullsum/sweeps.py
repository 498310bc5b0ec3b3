"""Batch verification suites.

Every suite builds its full case list up front from a seeded generator, so the
cases (and therefore the report) do not depend on how many worker processes
run them. Each case is a plain picklable payload handled by a module-level
runner that returns a JSON-ready dict with a boolean ``pass``.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Iterator

from .coeffcore import (
    CoefficientProblem,
    HypothesisError,
    check_cor22,
    check_cor22_conditions,
    coeff_oracle,
    coeff_theorem21,
    theorem22_sides,
)
from .exactalg import CyclicGroup, RingMatrix, RingSpec, prime_factors
from .instance import SumsetInstance
from .nullbound import dq_member, factorial_in_dq, per_vandermonde_roots
from .sumsetlab import (
    corollary11_numbering,
    random_field_instance,
    random_group_instance,
    snevily_transversal,
    verify_bound,
)

DEFAULT_SEED = 20240101
CHUNK = 64


# ---------------------------------------------------------------------------
# case generators and runners
#
# A generator yields (name, payload) pairs; a runner maps a payload to a dict.


def _random_rows(rng: random.Random, n: int, spec: RingSpec) -> list[list[int]]:
    if spec.kind == "integer":
        return [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
    return [[rng.randrange(spec.p) for _ in range(n)] for _ in range(n)]


def _m_vectors(n: int, budget: int) -> Iterator[tuple[int, ...]]:
    for ms in itertools.product(range(budget + 1), repeat=n):
        if sum(ms) <= budget:
            yield ms


def gen_coeff_oracle(rng: random.Random) -> Iterator[tuple[str, Any]]:
    rings = (RingSpec.integer(), RingSpec.prime_field(5), RingSpec.prime_field(7))
    for spec in rings:
        for n in (1, 2, 3):
            for ks in itertools.product(range(6), repeat=n):
                for delta in (0, 1):
                    budget = sum(ks) - delta * math.comb(n, 2)
                    if budget < 0:
                        continue
                    for ms in _m_vectors(n, budget):
                        rows = _random_rows(rng, n, spec)
                        yield (f"{spec} n={n} delta={delta} k={list(ks)} m={list(ms)}",
                               (spec.to_json(), n, delta, ks, ms, rows))
    # extra random cases with n = 4
    for _ in range(500):
        spec = rng.choice(rings)
        n, delta = 4, rng.randrange(2)
        ks = tuple(rng.randint(0, 4) for _ in range(n))
        budget = sum(ks) - delta * 6
        if budget < 0:
            continue
        ms = tuple(rng.randint(0, 3) for _ in range(n))
        if sum(ms) > budget:
            continue
        yield (f"{spec} n=4 delta={delta} k={list(ks)} m={list(ms)} random",
               (spec.to_json(), n, delta, ks, ms, _random_rows(rng, n, spec)))


def run_coeff_oracle(payload) -> dict:
    spec_json, n, delta, ks, ms, rows = payload
    spec = RingSpec.from_json(spec_json)
    problem = CoefficientProblem(n, delta, ks, ms, RingMatrix.from_rows(rows, spec))
    closed, oracle = coeff_theorem21(problem), coeff_oracle(problem)
    return {"matrix": rows, "closed_form": closed.to_json(), "oracle": oracle.to_json(),
            "pass": closed == oracle}


def gen_theorem22(rng: random.Random) -> Iterator[tuple[str, Any]]:
    for n in (1, 2, 3):
        for k in range(6):
            for lm in itertools.product(range(k * n + 1), repeat=2 * n):
                if sum(lm) > k * n:
                    continue
                ls, ms = lm[:n], lm[n:]
                rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
                yield f"n={n} k={k} l={list(ls)} m={list(ms)}", (k, ls, ms, rows)


def run_theorem22(payload) -> dict:
    k, ls, ms, rows = payload
    lhs, rhs = theorem22_sides(k, ls, ms, RingMatrix.from_rows(rows, RingSpec.integer()))
    return {"matrix": rows, "lhs": lhs.to_json(), "rhs": rhs.to_json(),
            "l_exceeds_k": max(ls) > k, "pass": lhs == rhs}


def gen_cor22(rng: random.Random) -> Iterator[tuple[str, Any]]:
    made = 0
    while made < 160:
        n = 1 + made % 4
        spread = rng.randint(0, 2)
        ms = [rng.randint(0, 2)]
        for _ in range(n - 1):
            # a gap above the k spread keeps k_i - m_i strictly decreasing
            ms.append(ms[-1] + spread + 1 + rng.randint(0, 1))
        top = ms[-1] + rng.randint(0, 2)
        ks = tuple(top + rng.randint(0, spread) for _ in range(n))
        ms = tuple(ms)
        try:
            check_cor22_conditions(ks, ms)
        except HypothesisError:
            continue
        if sum(ms) + math.comb(n, 2) > sum(ks):
            continue
        rows = [[rng.randint(1, 4) if i == j else rng.randint(0, 4) for j in range(n)] for i in range(n)]
        made += 1
        yield f"{made:03d} n={n} k={list(ks)} m={list(ms)}", (ks, ms, rows)


def run_cor22(payload) -> dict:
    ks, ms, rows = payload
    res = check_cor22(ks, ms, RingMatrix.from_rows(rows, RingSpec.integer()))
    return {"matrix": rows, "c": res.c, "L": res.L, "per": res.per, "bound_ok": res.bound_ok,
            "reversal_ok": res.reversal_ok, "pass": res.bound_ok and res.reversal_ok}


def gen_snevily(rng: random.Random) -> Iterator[tuple[str, Any]]:
    for N in (3, 5, 7, 9):
        for n in (1, 2, 3):
            for A in itertools.combinations(range(N), n):
                for B in itertools.combinations(range(N), n):
                    yield f"N={N} A={list(A)} B={list(B)}", (N, A, B, True)
    for i in range(300):
        A = tuple(sorted(rng.sample(range(9), 4)))
        B = tuple(rng.sample(range(9), 4))
        yield f"N=9 spot {i:03d} A={list(A)} B={list(B)}", (9, A, B, True)
    # Z_2 has even order: {0,1} + {0,1} admits no transversal
    yield "N=2 A=[0, 1] B=[0, 1] even-order", (2, (0, 1), (0, 1), False)


def run_snevily(payload) -> dict:
    N, A, B, expect = payload
    w = snevily_transversal(CyclicGroup(N), A, B)
    return {"witness": w, "expect_witness": expect, "pass": (w is not None) == expect}


def gen_corollary11(rng: random.Random) -> Iterator[tuple[str, Any]]:
    for deg, top in ((2, 4), (3, 3)):
        F = RingSpec.gf(2, deg)
        codes = range(F.size())
        for n in range(1, top + 1):
            for A in itertools.combinations(codes, n):
                for B in itertools.combinations(codes, n):
                    yield f"{F} A={list(A)} B={list(B)}", (deg, A, B)


def run_corollary11(payload) -> dict:
    deg, A, B = payload
    F = RingSpec.gf(2, deg)
    w = corollary11_numbering(F, [F.from_code(a) for a in A], [F.from_code(b) for b in B])
    return {"numbering": None if w is None else [[F.to_code(a), F.to_code(b)] for a, b in w],
            "pass": w is not None}


def gen_bounds_gf(rng: random.Random) -> Iterator[tuple[str, Any]]:
    draws = 8
    for p in (5, 7, 11, 13):
        F = RingSpec.prime_field(p)
        for n, m, k in itertools.product((2, 3), (1, 2), range(1, 7)):
            if k > p:
                continue
            for d in range(draws):
                tag = f"GF({p}) n={n} m={m} k={k} #{d}"
                ks = (k,) * n
                yield tag + " T1.2i", random_field_instance(
                    rng, F, n, ks, m, "S_eq14", monic=False, theorem="T1.2i").to_json()
                yield tag + " T1.2ii", random_field_instance(
                    rng, F, n, ks, m, "T_eq15", monic=False, theorem="T1.2ii").to_json()
                yield tag + " T1.3ii", random_field_instance(
                    rng, F, n, ks, m, "T_eq15", theorem="T1.3ii").to_json()
                spread = sorted(max(1, min(p, k - rng.randrange(m))) for _ in range(n))
                yield tag + " T1.3i", random_field_instance(
                    rng, F, n, tuple(spread), m, "T_eq15", theorem="T1.3i").to_json()
                yield tag + " T1.4i", random_field_instance(
                    rng, F, n, ks, m, "C_eq18", theorem="T1.4i").to_json()
    for deg in (2, 3):
        F = RingSpec.gf(2, deg)
        for n in (2, 3):
            if n + 1 > F.size():
                continue
            for d in range(20):
                yield f"{F} n={n} m=1 k={n + 1} #{d:02d} T1.4ii", random_field_instance(
                    rng, F, n, (n + 1,) * n, 1, "C_eq18", distinct_shifts=True, theorem="T1.4ii").to_json()


def gen_bounds_zn(rng: random.Random) -> Iterator[tuple[str, Any]]:
    draws = 8
    for N in range(3, 16, 2):
        for n, m, k in itertools.product((2, 3), (1, 2), range(1, 7)):
            if k > N:
                continue
            for d in range(draws):
                tag = f"Z_{N:02d} n={n} m={m} k={k} #{d}"
                yield tag + " T1.1i", random_group_instance(rng, N, n, k, m, "MULTI_11", theorem="T1.1i").to_json()
                yield tag + " T1.1ii set11", random_group_instance(
                    rng, N, n, k, m, "SET_11", theorem="T1.1ii").to_json()
                yield tag + " T1.1ii set12", random_group_instance(
                    rng, N, n, k, m, "SET_12", theorem="T1.1ii").to_json()


def run_bound(payload) -> dict:
    rep = verify_bound(SumsetInstance.from_json(payload))
    return {"theorem": rep.certificate.theorem, "certified": rep.certificate.issued,
            "bound": rep.certificate.guaranteed_lower_bound, "compared": rep.compared,
            "count": rep.count, "distinct_sums": rep.enumeration.distinct_sums,
            "equality": rep.equality, "pass": rep.passed}


def _naive_semigroup(primes: tuple[int, ...], top: int) -> set[int]:
    """All sums c_1 p_1 + ... with every partial sum <= top, by nested ranges."""
    out = {0}
    for p in primes:
        out = {s + c * p for s in out for c in range((top - s) // p + 1)}
    return out


def gen_dq(rng: random.Random) -> Iterator[tuple[str, Any]]:
    for q in range(1, 61):
        yield f"q={q:02d}", q


def run_dq(q: int) -> dict:
    top = 200
    naive = _naive_semigroup(tuple(prime_factors(q)), top)
    bad = [x for x in range(top + 1) if dq_member(q, x) != (x in naive)]
    bad_fact = [n for n in range(6) if factorial_in_dq(n, q) != (math.factorial(n) in naive)]
    return {"primes": list(prime_factors(q)), "mismatches": bad, "factorial_mismatches": bad_fact,
            "pass": not bad and not bad_fact}


def gen_perb(rng: random.Random) -> Iterator[tuple[str, Any]]:
    for q in range(1, 16, 2):
        for n in range(1, min(q, 5) + 1):
            for e in itertools.combinations(range(q), n):
                yield f"q={q:02d} e={list(e)}", (q, e, False)
    # even q: b = (i, -i) gives per(B) = -i + i = 0
    yield "q=04 e=[1, 3] even-order witness", (4, (1, 3), True)


def run_perb(payload) -> dict:
    q, e, expect_zero = payload
    per, zero = per_vandermonde_roots(q, e)
    return {"per_B": per.to_json(), "zero": zero, "expect_zero": expect_zero, "pass": zero == expect_zero}


SUITES: dict[str, tuple[Callable[[random.Random], Iterable], Callable[[Any], dict]]] = {
    "coeff-oracle": (gen_coeff_oracle, run_coeff_oracle),
    "theorem22": (gen_theorem22, run_theorem22),
    "cor22": (gen_cor22, run_cor22),
    "snevily": (gen_snevily, run_snevily),
    "corollary11": (gen_corollary11, run_corollary11),
    "bounds-gf": (gen_bounds_gf, run_bound),
    "bounds-zn": (gen_bounds_zn, run_bound),
    "dq": (gen_dq, run_dq),
    "perB-odd-q": (gen_perb, run_perb),
}


# ---------------------------------------------------------------------------
# driver


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, seed: int = DEFAULT_SEED, jobs: int = 1) -> tuple[list[dict], dict]:
    """Run every case of a suite; returns (records sorted by case key, summary)."""
    if name not in SUITES:
        raise UnknownSuite(name)
    gen, runner = SUITES[name]
    cases = list(gen(random.Random(seed)))
    payloads = [p for _, p in cases]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(runner, payloads, chunksize=CHUNK))
    else:
        results = [runner(p) for p in payloads]
    width = len(str(len(cases)))
    records = []
    for idx, ((label, _), res) in enumerate(zip(cases, results)):
        records.append({"suite": name, "case": f"{idx:0{width}d}", "label": label, **res})
    records.sort(key=lambda r: r["case"])
    passed = sum(1 for r in records if r["pass"])
    summary = {"suite": name, "summary": True, "seed": seed, "cases": len(records),
               "passed": passed, "failed": len(records) - passed}
    return records, summary
