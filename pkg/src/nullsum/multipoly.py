"""Sparse multivariate polynomials over any :class:`RingSpec`.

A polynomial is a dict from exponent tuples to nonzero raw ring elements.
Products and powers accept an :class:`ExponentCap`; since exponents only
grow under multiplication, a term above the cap in any variable can never
contribute to a monomial within the cap, so it is dropped on the spot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exactalg import RingError, RingMatrix, RingSpec, RingValue, SizeLimitError, permutation_sign

VANDERMONDE_LIMIT = 6
DETERMINANT_POLY_LIMIT = 6
POWER_LIMIT = 10_000


@dataclass(frozen=True)
class ExponentCap:
    caps: tuple[int, ...]

    def __init__(self, caps: Iterable[int]) -> None:
        object.__setattr__(self, "caps", tuple(int(c) for c in caps))

    def admits(self, exps: Sequence[int]) -> bool:
        return all(e <= c for e, c in zip(exps, self.caps))


class SparsePoly:
    """Polynomial in x1..xn; ``terms`` maps exponent tuples to raw coefficients."""

    __slots__ = ("nvars", "spec", "terms")

    def __init__(self, nvars: int, spec: RingSpec, terms: Mapping[tuple, object] | None = None,
                 *, _trusted: bool = False) -> None:
        if nvars < 0:
            raise RingError("nvars must be nonnegative")
        self.nvars = nvars
        self.spec = spec
        if _trusted:
            self.terms = dict(terms) if terms else {}
            return
        clean: dict[tuple, object] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or min(exps, default=0) < 0:
                raise RingError(f"bad exponent vector {exps} for {nvars} variables")
            raw = spec.coerce(c)
            if exps in clean:
                raw = spec.add(clean[exps], raw)
            clean[exps] = raw
        self.terms = {e: c for e, c in clean.items() if not spec.is_zero(c)}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, spec: RingSpec) -> SparsePoly:
        return cls(nvars, spec, _trusted=True)

    @classmethod
    def constant(cls, c, nvars: int, spec: RingSpec) -> SparsePoly:
        return cls(nvars, spec, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int, spec: RingSpec) -> SparsePoly:
        return cls.constant(1, nvars, spec)

    @classmethod
    def variable(cls, i: int, nvars: int, spec: RingSpec) -> SparsePoly:
        """x_{i+1} (0-based index ``i``)."""
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, spec, {exps: 1})

    @classmethod
    def univariate(cls, coeffs: Sequence, i: int, nvars: int, spec: RingSpec) -> SparsePoly:
        """sum_d coeffs[d] * x_{i+1}^d with raw or coercible coefficients."""
        terms = {}
        for d, c in enumerate(coeffs):
            terms[tuple(d if j == i else 0 for j in range(nvars))] = c
        return cls(nvars, spec, terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: SparsePoly) -> None:
        if not isinstance(other, SparsePoly):
            raise TypeError(f"expected SparsePoly, got {type(other).__name__}")
        if other.nvars != self.nvars or other.spec != self.spec:
            raise RingError(
                f"polynomial mismatch: {self.nvars} vars over {self.spec} vs "
                f"{other.nvars} vars over {other.spec}"
            )

    def _lift(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        return SparsePoly.constant(other, self.nvars, self.spec)

    def __add__(self, other) -> SparsePoly:
        other = self._lift(other)
        spec = self.spec
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = spec.add(out[e], c)
                if spec.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return SparsePoly(self.nvars, spec, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        neg = self.spec.neg
        return SparsePoly(self.nvars, self.spec, {e: neg(c) for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> SparsePoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SparsePoly:
        return self._lift(other) - self

    def __mul__(self, other) -> SparsePoly:
        return poly_mul(self, self._lift(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SparsePoly:
        return poly_power(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.spec == other.spec and self.terms == other.terms
        try:
            return self == self._lift(other)
        except RingError:
            return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection ---------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> RingValue:
        return extract_coefficient(self, exps)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in ascending graded-lex order (total degree, then exponent tuple)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def swap_variables(self, i: int, j: int) -> SparsePoly:
        def swap(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)
        return SparsePoly(self.nvars, self.spec, {swap(e): c for e, c in self.terms.items()}, _trusted=True)

    def evaluate(self, point: Sequence) -> RingValue:
        spec = self.spec
        pt = [spec.coerce(x) for x in point]
        total = spec.zero()
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(pt, exps):
                if e:
                    term = spec.mul(term, spec.pow(x, e))
            total = spec.add(total, term)
        return RingValue(spec, total)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SparsePoly({self.spec}: {format_poly(self)})"


def _monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(f: SparsePoly) -> str:
    """Canonical text, e.g. ``4*x2 - 6*x1``."""
    if not f.terms:
        return "0"
    spec = f.spec
    scalar = spec.kind in ("integer", "rational", "prime-field")
    out = []
    for exps, c in f.sorted_terms():
        mono = _monomial(exps)
        if scalar:
            neg = spec.kind != "prime-field" and c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        else:
            neg = False
            txt = spec.format(c)
            if not mono:
                body = f"({txt})" if " " in txt else txt
            elif txt == "1":
                body = mono
            else:
                body = f"({txt})*{mono}" if " " in txt or txt.startswith("-") else f"{txt}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def poly_mul(f: SparsePoly, g: SparsePoly, cap: ExponentCap | None = None) -> SparsePoly:
    """Exact product; with ``cap``, terms exceeding it in any variable are dropped."""
    f._check(g)
    spec = f.spec
    add, mul, is_zero = spec.add, spec.mul, spec.is_zero
    caps = cap.caps if cap is not None else None
    out: dict[tuple, object] = {}
    gitems = list(g.terms.items())
    for ef, cf in f.terms.items():
        if caps is not None and any(e > c for e, c in zip(ef, caps)):
            continue
        for eg, cg in gitems:
            e = tuple(a + b for a, b in zip(ef, eg))
            if caps is not None and any(x > c for x, c in zip(e, caps)):
                continue
            v = mul(cf, cg)
            if e in out:
                out[e] = add(out[e], v)
            else:
                out[e] = v
    return SparsePoly(f.nvars, spec, {e: c for e, c in out.items() if not is_zero(c)}, _trusted=True)


def poly_power(f: SparsePoly, e: int, cap: ExponentCap | None = None) -> SparsePoly:
    """f**e by repeated multiplication, pruning against ``cap`` after every step."""
    if e < 0:
        raise RingError("negative powers are not polynomials")
    if e > POWER_LIMIT:
        raise SizeLimitError(f"poly_power is limited to exponents <= {POWER_LIMIT}, got {e}")
    result = SparsePoly.one(f.nvars, f.spec)
    for _ in range(e):
        result = poly_mul(result, f, cap)
        if not result.terms:
            break
    return result


def sum_of_variables(nvars: int, spec: RingSpec) -> SparsePoly:
    return SparsePoly(nvars, spec, {tuple(1 if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)})


def extract_coefficient(f: SparsePoly, exps: Sequence[int]) -> RingValue:
    """The coefficient of x1^e1...xn^en in f (zero when absent)."""
    exps = tuple(exps)
    if len(exps) != f.nvars:
        raise RingError(f"exponent vector {exps} does not match {f.nvars} variables")
    return RingValue(f.spec, f.terms.get(exps, f.spec.zero()))


def coefficient_of_product(f: SparsePoly, g: SparsePoly, exps: Sequence[int]) -> RingValue:
    """[x^exps](f*g) without forming the whole product."""
    f._check(g)
    spec = f.spec
    exps = tuple(exps)
    total = spec.zero()
    gt = g.terms
    for ef, cf in f.terms.items():
        rest = tuple(a - b for a, b in zip(exps, ef))
        if min(rest, default=0) < 0:
            continue
        cg = gt.get(rest)
        if cg is not None:
            total = spec.add(total, spec.mul(cf, cg))
    return RingValue(spec, total)


def vandermonde_factor(n: int, spec: RingSpec) -> SparsePoly:
    """The expanded product of (x_j - x_i) over 1 <= i < j <= n."""
    if n > VANDERMONDE_LIMIT:
        raise SizeLimitError(f"vandermonde_factor is limited to n <= {VANDERMONDE_LIMIT}, got {n}")
    result = SparsePoly.one(n, spec)
    for i in range(n):
        for j in range(i + 1, n):
            result = poly_mul(result, SparsePoly.variable(j, n, spec) - SparsePoly.variable(i, n, spec))
    return result


def generic_determinant_poly(a: RingMatrix, exps: Sequence[int], spec: RingSpec | None = None) -> SparsePoly:
    """det(a_ij * x_j^(m_i)) expanded as a signed sum over permutations."""
    spec = spec or a.spec
    n = a.n
    if n > DETERMINANT_POLY_LIMIT:
        raise SizeLimitError(f"generic_determinant_poly is limited to n <= {DETERMINANT_POLY_LIMIT}, got n={n}")
    if len(exps) != n:
        raise RingError(f"need {n} row exponents, got {len(exps)}")
    rows = a.rows if a.spec == spec else tuple(tuple(spec.coerce(RingValue(a.spec, x)) for x in r)
                                                for r in a.rows)
    terms: dict[tuple, object] = {}
    one = spec.one()
    for perm in itertools.permutations(range(n)):
        # row i contributes a_{i, perm(i)} x_{perm(i)}^{m_i}
        coeff = one
        mono = [0] * n
        for i in range(n):
            coeff = spec.mul(coeff, rows[i][perm[i]])
            mono[perm[i]] += exps[i]
        if spec.is_zero(coeff):
            continue
        if permutation_sign(perm) < 0:
            coeff = spec.neg(coeff)
        key = tuple(mono)
        terms[key] = spec.add(terms[key], coeff) if key in terms else coeff
    return SparsePoly(n, spec, {e: c for e, c in terms.items() if not spec.is_zero(c)}, _trusted=True)


def falling_factorial(x, n: int):
    """(x)_n = x (x-1) ... (x-n+1); the empty product is 1.

    Works for ints and for :class:`RingValue` (returning a RingValue).
    """
    if n < 0:
        raise ValueError("falling factorial needs n >= 0")
    result = 1
    for j in range(n):
        result = (x - j) * result
    if isinstance(x, RingValue) and n == 0:
        return RingValue(x.spec, x.spec.one())
    return result
