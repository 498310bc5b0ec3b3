"""Exact coefficient rings, matrices, permanents and determinants.

Five ring kinds are supported: the integers, the rationals, prime fields
GF(p), extension fields GF(p^deg) = GF(p)[t]/(modulus) and the cyclotomic
integers Z[zeta_q] stored in the power basis 1, zeta, ..., zeta^(phi(q)-1).

Ring elements have a *raw* representation (int, Fraction or tuple of ints)
which is what the hot loops in this package work on.  :class:`RingValue`
wraps a raw representation together with its :class:`RingSpec` and gives
the usual operator overloads for interactive use.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, Sequence

INFINITE = math.inf

NAIVE_PERMANENT_LIMIT = 8
RYSER_PERMANENT_LIMIT = 30
CYCLOTOMIC_LIMIT = 200
IRREDUCIBILITY_DEGREE_LIMIT = 8

KINDS = ("integer", "rational", "prime-field", "extension-field", "cyclotomic")


class RingError(ValueError):
    """Raised for malformed ring data or an operation the ring does not support."""


class SizeLimitError(RingError):
    """Raised when a computation would exceed one of the explicit size limits."""


# ---------------------------------------------------------------------------
# elementary number theory


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order (trial division)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = m
    for p in prime_factors(m):
        result -= result // p
    return result


def _int_poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # den must be monic; coefficient lists are low-degree first
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the q-th cyclotomic polynomial.

    Computed by dividing x^q - 1 by the product of Phi_d over proper
    divisors d of q.
    """
    if q < 1 or q > CYCLOTOMIC_LIMIT:
        raise SizeLimitError(f"cyclotomic_polynomial supports 1 <= q <= {CYCLOTOMIC_LIMIT}, got {q}")
    num = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            num, rem = _int_poly_divmod(num, cyclotomic_polynomial(d))
            if any(rem):
                raise AssertionError(f"Phi_{d} does not divide x^{q}-1 quotient")
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


# ---------------------------------------------------------------------------
# polynomials over GF(p), used to validate and auto-select moduli


def _gfp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _gfp_trim([x % p for x in a])
    m = _gfp_trim([x % p for x in m])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j in range(dm + 1):
            a[shift + j] = (a[shift + j] - c * m[j]) % p
        _gfp_trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    # ordered by base-p value of the lower coefficients read high-to-low
    for code in range(p**deg):
        low = []
        for _ in range(deg):
            code, r = divmod(code, p)
            low.append(r)
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive divisor search; only meant for degree <= 8."""
    poly = _gfp_trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg > IRREDUCIBILITY_DEGREE_LIMIT:
        raise SizeLimitError(
            f"irreducibility check is exhaustive and limited to degree {IRREDUCIBILITY_DEGREE_LIMIT}"
        )
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _gfp_rem(poly, div, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``deg`` over GF(p).

    Candidates are compared by the base-p integer whose digits are the
    coefficients, so GF(2)[t] gives t^2+t+1 and t^3+t+1.
    """
    for cand in _monic_polys(p, deg):
        if is_irreducible(cand, p):
            return cand
    raise RingError(f"no irreducible polynomial of degree {deg} over GF({p})")


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RingSpec:
    """Description of a coefficient ring; also carries the raw-element arithmetic.

    Build one with the classmethods (``RingSpec.prime_field(7)``) or
    :meth:`from_json`.  ``add``/``mul``/... operate on raw representations.
    """

    kind: str
    p: int | None = None
    deg: int | None = None
    modulus: tuple[int, ...] | None = None
    q: int | None = None

    add: Callable[[Any, Any], Any] = field(init=False, repr=False, compare=False)
    sub: Callable[[Any, Any], Any] = field(init=False, repr=False, compare=False)
    mul: Callable[[Any, Any], Any] = field(init=False, repr=False, compare=False)
    neg: Callable[[Any], Any] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        kind = self.kind
        if kind not in KINDS:
            raise RingError(f"unknown ring kind {kind!r}; expected one of {', '.join(KINDS)}")
        setattr_ = object.__setattr__
        if kind in ("integer", "rational"):
            self._no_params("p", "deg", "modulus", "q")
            setattr_(self, "add", operator.add)
            setattr_(self, "sub", operator.sub)
            setattr_(self, "mul", operator.mul)
            setattr_(self, "neg", operator.neg)
        elif kind == "prime-field":
            self._no_params("deg", "modulus", "q")
            p = self._check_prime()
            setattr_(self, "add", lambda a, b: (a + b) % p)
            setattr_(self, "sub", lambda a, b: (a - b) % p)
            setattr_(self, "mul", lambda a, b: (a * b) % p)
            setattr_(self, "neg", lambda a: (-a) % p)
        elif kind == "extension-field":
            self._no_params("q")
            p = self._check_prime()
            if self.deg is None or self.deg < 1:
                raise RingError("extension-field needs a positive 'deg'")
            if self.modulus is None:
                setattr_(self, "modulus", least_irreducible(p, self.deg))
            else:
                mod = tuple(int(c) % p for c in self.modulus)
                setattr_(self, "modulus", mod)
                if len(mod) != self.deg + 1 or mod[-1] != 1:
                    raise RingError(f"modulus {list(mod)} must be monic of degree {self.deg}")
                if not is_irreducible(mod, p):
                    raise RingError(f"modulus {list(mod)} is reducible over GF({p})")
            self._install_vector_ops(p, self.modulus)
        else:
            self._no_params("p", "deg", "modulus")
            if self.q is None or self.q < 1:
                raise RingError("cyclotomic ring needs a positive 'q'")
            self._install_vector_ops(None, cyclotomic_polynomial(self.q))

    def __reduce__(self):
        return (RingSpec, (self.kind, self.p, self.deg, self.modulus, self.q))

    def _no_params(self, *names: str) -> None:
        for name in names:
            if getattr(self, name) is not None:
                raise RingError(f"{self.kind} ring takes no {name!r} parameter")

    def _check_prime(self) -> int:
        if self.p is None or not is_prime(self.p):
            raise RingError(f"{self.kind} needs a prime 'p', got {self.p}")
        return self.p

    def _install_vector_ops(self, p: int | None, modulus: Sequence[int]) -> None:
        d = len(modulus) - 1
        low = tuple(modulus[:d])

        if p is None:
            def add(a, b):
                return tuple(x + y for x, y in zip(a, b))

            def sub(a, b):
                return tuple(x - y for x, y in zip(a, b))

            def neg(a):
                return tuple(-x for x in a)
        else:
            def add(a, b):
                return tuple((x + y) % p for x, y in zip(a, b))

            def sub(a, b):
                return tuple((x - y) % p for x, y in zip(a, b))

            def neg(a):
                return tuple(-x % p for x in a)

        def mul(a, b):
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            # modulus is monic: x^d == -low
            for i in range(2 * d - 2, d - 1, -1):
                c = prod[i]
                if c:
                    base = i - d
                    for j in range(d):
                        prod[base + j] -= c * low[j]
            if p is None:
                return tuple(prod[:d])
            return tuple(c % p for c in prod[:d])

        object.__setattr__(self, "add", add)
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "neg", neg)

    # -- constructors -------------------------------------------------------

    @classmethod
    def integer(cls) -> RingSpec:
        return cls("integer")

    @classmethod
    def rational(cls) -> RingSpec:
        return cls("rational")

    @classmethod
    def prime_field(cls, p: int) -> RingSpec:
        return cls("prime-field", p=p)

    @classmethod
    def extension_field(cls, p: int, deg: int, modulus: Sequence[int] | None = None) -> RingSpec:
        if deg == 1 and modulus is None:
            modulus = (0, 1)
        return cls("extension-field", p=p, deg=deg,
                   modulus=None if modulus is None else tuple(modulus))

    @classmethod
    def gf(cls, p: int, deg: int = 1) -> RingSpec:
        """GF(p) for deg == 1, otherwise GF(p^deg) with the auto-selected modulus."""
        return cls.prime_field(p) if deg == 1 else cls.extension_field(p, deg)

    @classmethod
    def cyclotomic(cls, q: int) -> RingSpec:
        return cls("cyclotomic", q=q)

    @classmethod
    def from_json(cls, obj: dict) -> RingSpec:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise RingError(f"ring spec must be an object with a 'kind', got {obj!r}")
        extra = set(obj) - {"kind", "p", "deg", "modulus", "q"}
        if extra:
            raise RingError(f"unexpected ring spec keys: {sorted(extra)}")
        modulus = obj.get("modulus")
        return cls(obj["kind"], p=obj.get("p"), deg=obj.get("deg"),
                   modulus=None if modulus is None else tuple(modulus), q=obj.get("q"))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind in ("prime-field", "extension-field"):
            out["p"] = self.p
        if self.kind == "extension-field":
            out["deg"] = self.deg
            out["modulus"] = list(self.modulus)
        if self.kind == "cyclotomic":
            out["q"] = self.q
        return out

    def __str__(self) -> str:
        if self.kind == "integer":
            return "ZZ"
        if self.kind == "rational":
            return "QQ"
        if self.kind == "prime-field":
            return f"GF({self.p})"
        if self.kind == "extension-field":
            return f"GF({self.p}^{self.deg})"
        return f"Z[zeta_{self.q}]"

    # -- properties ---------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in ("rational", "prime-field", "extension-field")

    @property
    def is_finite(self) -> bool:
        return self.kind in ("prime-field", "extension-field")

    @property
    def dim(self) -> int:
        """Length of the coefficient vector for vector-represented kinds."""
        if self.kind == "extension-field":
            return self.deg
        if self.kind == "cyclotomic":
            return euler_phi(self.q)
        return 1

    def characteristic(self) -> int | float:
        return self.p if self.is_finite else INFINITE

    def size(self) -> int | float:
        if self.kind == "prime-field":
            return self.p
        if self.kind == "extension-field":
            return self.p**self.deg
        return INFINITE

    # -- raw element helpers ------------------------------------------------

    def zero(self):
        if self.kind in ("integer", "prime-field"):
            return 0
        if self.kind == "rational":
            return Fraction(0)
        return (0,) * self.dim

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        n = int(n)
        if self.kind == "integer":
            return n
        if self.kind == "rational":
            return Fraction(n)
        if self.kind == "prime-field":
            return n % self.p
        if self.kind == "extension-field":
            return (n % self.p,) + (0,) * (self.deg - 1)
        return (n,) + (0,) * (self.dim - 1)

    def is_zero(self, a) -> bool:
        if isinstance(a, tuple):
            return not any(a)
        return a == 0

    def equal(self, a, b) -> bool:
        return a == b

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"zero has no inverse in {self}")
        if self.kind == "rational":
            return 1 / a
        if self.kind == "prime-field":
            return pow(a, -1, self.p)
        if self.kind == "extension-field":
            # a^(p^deg - 2) by Lagrange
            return self.pow(a, self.p**self.deg - 2)
        if self.kind == "integer" and a in (1, -1):
            return a
        if self.kind == "cyclotomic":
            return self.exact_div(self.one(), a)
        raise RingError(f"{a!r} is not a unit in {self}")

    def exact_div(self, a, b):
        """Return x with b*x == a, raising RingError when b does not divide a."""
        if self.is_field:
            return self.mul(a, self.inv(b))
        if self.is_zero(b):
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.kind == "integer":
            qt, r = divmod(a, b)
            if r:
                raise RingError(f"{b} does not divide {a} in ZZ")
            return qt
        # Z[zeta]: solve the multiplication-by-b system over QQ and check integrality
        d = self.dim
        basis = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
        cols = [self.mul(b, e) for e in basis]
        mat = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(a[i])] for i in range(d)]
        sol = _solve_rational(mat, d)
        if any(x.denominator != 1 for x in sol):
            raise RingError(f"{self.format(b)} does not divide {self.format(a)} in {self}")
        return tuple(int(x) for x in sol)

    def zeta_power(self, e: int):
        """zeta_q^e in the power basis (cyclotomic rings only)."""
        if self.kind != "cyclotomic":
            raise RingError("zeta_power is defined for cyclotomic rings only")
        e %= self.q
        _, rem = _int_poly_divmod([0] * e + [1], cyclotomic_polynomial(self.q))
        return tuple(rem) + (0,) * (self.dim - len(rem))

    def generator(self):
        """The class of t in GF(p)[t]/(modulus) (extension fields only)."""
        if self.kind != "extension-field":
            raise RingError("generator is defined for extension fields only")
        if self.deg == 1:
            return ((-self.modulus[0]) % self.p,)
        return tuple(1 if i == 1 else 0 for i in range(self.deg))

    def elements(self) -> list:
        """All elements of a finite field, in canonical (code) order."""
        if self.kind == "prime-field":
            return list(range(self.p))
        if self.kind == "extension-field":
            return [self.from_code(c) for c in range(self.p**self.deg)]
        raise RingError(f"{self} is infinite")

    def from_code(self, code: int):
        """Extension-field element whose coefficients are the base-p digits of code."""
        if not 0 <= code < self.p**self.deg:
            raise RingError(f"element code {code} out of range for {self}")
        digits = []
        for _ in range(self.deg):
            code, r = divmod(code, self.p)
            digits.append(r)
        return tuple(digits)

    def to_code(self, a) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def sort_key(self, a):
        if self.kind == "extension-field":
            return self.to_code(a)
        return a

    def coerce(self, x):
        """Convert ints, Fractions, sequences or RingValues into a raw element."""
        if isinstance(x, RingValue):
            if x.spec != self:
                raise RingError(f"value from {x.spec} used in {self}")
            return x.raw
        if isinstance(x, bool):
            raise RingError("booleans are not ring elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.kind == "rational":
                return x
            if x.denominator == 1:
                return self.from_int(x.numerator)
            if self.kind in ("prime-field", "extension-field"):
                return self.mul(self.from_int(x.numerator), self.inv(self.from_int(x.denominator)))
            raise RingError(f"{x} is not an element of {self}")
        if isinstance(x, (list, tuple)):
            if self.kind not in ("extension-field", "cyclotomic"):
                raise RingError(f"{self} elements are scalars, got {x!r}")
            coeffs = [int(c) for c in x]
            if self.kind == "extension-field":
                if len(coeffs) > self.deg:
                    rem = _gfp_rem(coeffs, self.modulus, self.p)
                    coeffs = rem
                coeffs = [c % self.p for c in coeffs] + [0] * (self.deg - len(coeffs))
                return tuple(coeffs)
            d = self.dim
            if len(coeffs) > d:
                _, coeffs = _int_poly_divmod(coeffs, cyclotomic_polynomial(self.q))
            return tuple(coeffs) + (0,) * (d - len(coeffs))
        raise RingError(f"cannot interpret {x!r} as an element of {self}")

    def value(self, x) -> RingValue:
        return RingValue(self, self.coerce(x))

    # -- serialization ------------------------------------------------------

    def element_from_json(self, x):
        """Parse the JSON form of an element.

        integer / prime-field: int; rational: int or "a/b"; extension-field: int
        code (base-p digits, low first) or coefficient list; cyclotomic: list of
        power-basis coefficients or {"zeta": e}.
        """
        if self.kind == "rational" and isinstance(x, str):
            try:
                return Fraction(x)
            except ValueError as exc:
                raise RingError(f"bad rational {x!r}") from exc
        if self.kind == "extension-field" and isinstance(x, int) and not isinstance(x, bool):
            return self.from_code(x)
        if self.kind == "cyclotomic" and isinstance(x, dict):
            if set(x) != {"zeta"}:
                raise RingError(f"cyclotomic element object must be {{'zeta': e}}, got {x!r}")
            return self.zeta_power(int(x["zeta"]))
        return self.coerce(x)

    def element_to_json(self, a):
        if self.kind in ("integer", "prime-field"):
            return a
        if self.kind == "rational":
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.kind == "extension-field":
            return self.to_code(a)
        return list(a)

    def format(self, a) -> str:
        if self.kind in ("integer", "prime-field", "rational"):
            return str(a)
        var = "t" if self.kind == "extension-field" else "z"
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _solve_rational(aug: list[list[Fraction]], n: int) -> list[Fraction]:
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise RingError("singular system in exact division")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class RingValue:
    """An immutable element of a :class:`RingSpec`."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec: RingSpec, raw) -> None:
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("RingValue is immutable")

    def _other(self, other):
        try:
            return self.spec.coerce(other)
        except RingError:
            return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.mul(self.raw, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.spec, self.spec.neg(self.raw))

    def __pow__(self, e: int):
        return RingValue(self.spec, self.spec.pow(self.raw, e))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.spec, self.spec.exact_div(self.raw, o))

    def inverse(self) -> RingValue:
        return RingValue(self.spec, self.spec.inv(self.raw))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.raw)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RingValue):
            return self.spec == other.spec and self.raw == other.raw
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self.raw == o

    def __hash__(self) -> int:
        return hash((self.spec, self.raw))

    def __repr__(self) -> str:
        return f"RingValue({self.spec}, {self.spec.format(self.raw)})"

    def __str__(self) -> str:
        return self.spec.format(self.raw)

    def to_json(self):
        return self.spec.element_to_json(self.raw)

    def __int__(self) -> int:
        if self.spec.kind in ("integer", "prime-field"):
            return self.raw
        if self.spec.kind == "rational" and self.raw.denominator == 1:
            return self.raw.numerator
        raise TypeError(f"{self!r} is not an integer")


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class CyclicGroup:
    """The additive group Z/NZ with elements 0..N-1."""

    N: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise RingError(f"cyclic group order must be positive, got {self.N}")

    # Z/NZ ring operations, so restriction polynomials can be evaluated on group carriers

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.N

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.N

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.N

    def neg(self, a: int) -> int:
        return -a % self.N

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.N

    def from_int(self, n: int) -> int:
        return n % self.N

    def is_zero(self, a: int) -> bool:
        return a == 0

    def sort_key(self, a: int) -> int:
        return a

    def characteristic(self) -> int:
        return self.N

    def coerce(self, g) -> int:
        if isinstance(g, bool) or not isinstance(g, int):
            raise RingError(f"Z_{self.N} elements are integers, got {g!r}")
        return g % self.N

    element_from_json = coerce

    def element_to_json(self, a: int) -> int:
        return a

    def format(self, a: int) -> str:
        return str(a)

    def elements(self) -> list[int]:
        return list(range(self.N))

    def order(self, g: int) -> int:
        return element_order(g, self.N)

    def to_json(self) -> dict:
        return {"kind": "cyclic-group", "N": self.N}

    def __str__(self) -> str:
        return f"Z_{self.N}"


def element_order(g: int, N: int) -> int:
    """Additive order of g in Z/NZ."""
    return N // math.gcd(N, g % N)


def field_characteristic(spec: RingSpec) -> int | float:
    return spec.characteristic()


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RingMatrix:
    """A square matrix of raw elements over one RingSpec."""

    spec: RingSpec
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise RingError("RingMatrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], spec: RingSpec) -> RingMatrix:
        return cls(spec, tuple(tuple(spec.coerce(x) for x in row) for row in rows))

    @classmethod
    def from_json(cls, rows, spec: RingSpec) -> RingMatrix:
        return cls(spec, tuple(tuple(spec.element_from_json(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int, spec: RingSpec) -> RingMatrix:
        one, zero = spec.one(), spec.zero()
        return cls(spec, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def vandermonde(cls, bs: Sequence, spec: RingSpec) -> RingMatrix:
        """The matrix (b_j^(i-1)) with rows i and columns j."""
        bs = [spec.coerce(b) for b in bs]
        n = len(bs)
        return cls(spec, tuple(tuple(spec.pow(b, i) for b in bs) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> RingValue:
        i, j = ij
        return RingValue(self.spec, self.rows[i][j])

    def map_rows(self, f) -> RingMatrix:
        return RingMatrix(self.spec, tuple(tuple(f(i, j, x) for j, x in enumerate(row))
                                           for i, row in enumerate(self.rows)))

    def to_json(self) -> list:
        return [[self.spec.element_to_json(x) for x in row] for row in self.rows]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 0..n-1 given in one-line notation."""
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def permanent_naive(M: RingMatrix, limit: int = NAIVE_PERMANENT_LIMIT) -> RingValue:
    """Sum over all n! permutations; the reference definition."""
    n, spec = M.n, M.spec
    if n > limit:
        raise SizeLimitError(f"permanent_naive enumerates n! terms and is limited to n <= {limit}, got n={n}")
    total = spec.zero()
    rows = M.rows
    for perm in itertools.permutations(range(n)):
        term = spec.one()
        for i in range(n):
            term = spec.mul(term, rows[i][perm[i]])
        total = spec.add(total, term)
    return RingValue(spec, total)


def permanent_ryser(M: RingMatrix, limit: int = RYSER_PERMANENT_LIMIT) -> RingValue:
    """Ryser's inclusion-exclusion formula, columns subsets visited in Gray-code order.

    per(A) = sum over nonempty column sets S of (-1)^(n-|S|) prod_i sum_{j in S} a_ij.
    Consecutive Gray codes differ in one column, so each step adds or removes
    that column from every row sum.
    """
    n, spec = M.n, M.spec
    if n > limit:
        raise SizeLimitError(f"permanent_ryser is limited to n <= {limit}, got n={n}")
    if n == 0:
        return RingValue(spec, spec.one())
    rows = M.rows
    add, sub, mul = spec.add, spec.sub, spec.mul
    rowsum = [spec.zero()] * n
    total = spec.zero()
    size = 0
    prev_gray = 0
    for t in range(1, 1 << n):
        gray = t ^ (t >> 1)
        j = (gray ^ prev_gray).bit_length() - 1
        if gray & (1 << j):
            rowsum = [add(rowsum[i], rows[i][j]) for i in range(n)]
            size += 1
        else:
            rowsum = [sub(rowsum[i], rows[i][j]) for i in range(n)]
            size -= 1
        prev_gray = gray
        prod = rowsum[0]
        for i in range(1, n):
            prod = mul(prod, rowsum[i])
        total = add(total, prod) if (n - size) % 2 == 0 else sub(total, prod)
    return RingValue(spec, total)


def permanent(M: RingMatrix) -> RingValue:
    return permanent_ryser(M)


def determinant(M: RingMatrix) -> RingValue:
    """Exact determinant.

    Gaussian elimination over fields; Bareiss fraction-free elimination over
    the integers and Z[zeta_q] (each division is exact).
    """
    n, spec = M.n, M.spec
    if n == 0:
        return RingValue(spec, spec.one())
    a = [list(r) for r in M.rows]
    sub, mul, is_zero = spec.sub, spec.mul, spec.is_zero
    sign = 1
    if spec.is_field:
        det = spec.one()
        for k in range(n):
            piv = next((r for r in range(k, n) if not is_zero(a[r][k])), None)
            if piv is None:
                return RingValue(spec, spec.zero())
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            det = mul(det, a[k][k])
            inv = spec.inv(a[k][k])
            for r in range(k + 1, n):
                if is_zero(a[r][k]):
                    continue
                f = mul(a[r][k], inv)
                a[r] = [sub(x, mul(f, y)) if c > k else x for c, (x, y) in enumerate(zip(a[r], a[k]))]
        return RingValue(spec, det if sign == 1 else spec.neg(det))
    prev = spec.one()
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not is_zero(a[r][k])), None)
        if piv is None:
            return RingValue(spec, spec.zero())
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j]))
                a[i][j] = spec.exact_div(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return RingValue(spec, det if sign == 1 else spec.neg(det))
