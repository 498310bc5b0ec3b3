"""Restricted-sumset instances and their JSON form.

Instance file layout (all polynomial coefficient arrays are low degree first)::

    {
      "label": "optional name",
      "carrier": {"kind": "prime-field", "p": 7}      # any ring spec, or
                 {"kind": "cyclic-group", "N": 15},
      "mode": "T_eq15",
      "theorem": "T1.3ii",                              # optional
      "subsets": [[0, 1, 2], [0, 1, 2]],
      "polys": [[0, 1], [1, 1]],                        # S_eq14 / T_eq15 / C_eq18
      "m": 1,                                           # SET_11 / SET_12 / MULTI_11
      "shifts": [0, 1],                                 # b_i
      "constants": [[1, 2, 0]]                          # C_eq18: [i, j, c_ij], 1-based, i < j
    }

Modes and the pairwise condition each imposes for i != j:

    S_eq14    P_i(a_i) != P_j(a_j)
    T_eq15    a_i != a_j and P_i(a_i) != P_j(a_j)
    C_eq18    P_i(a_i) != P_j(a_j) and a_i b_i - a_j b_j != c_ij (i < j)
    SET_11    a_i != a_j and m a_i + b_i != m a_j + b_j
    SET_12    m a_i != m a_j and a_i + b_i != a_j + b_j
    MULTI_11  m a_i + b_i != m a_j + b_j
    SNEVILY   a_i != a_j and a_i + b_i != a_j + b_j
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .exactalg import CyclicGroup, RingError, RingSpec

MODES = ("S_eq14", "T_eq15", "C_eq18", "SET_11", "SET_12", "MULTI_11", "SNEVILY")
POLY_MODES = ("S_eq14", "T_eq15", "C_eq18")
SHIFT_MODES = ("C_eq18", "SET_11", "SET_12", "MULTI_11", "SNEVILY")

Carrier = Union[RingSpec, CyclicGroup]


class InstanceError(ValueError):
    """Malformed instance; the message names the offending field."""


def carrier_from_json(obj: dict) -> Carrier:
    if not isinstance(obj, dict):
        raise InstanceError(f"carrier: expected an object, got {obj!r}")
    if obj.get("kind") == "cyclic-group":
        if set(obj) - {"kind", "N"} or not isinstance(obj.get("N"), int):
            raise InstanceError(f"carrier: cyclic group needs an integer 'N', got {obj!r}")
        return CyclicGroup(obj["N"])
    try:
        return RingSpec.from_json(obj)
    except RingError as exc:
        raise InstanceError(f"carrier: {exc}") from exc


def _trim(coeffs: tuple, carrier: Carrier) -> tuple:
    coeffs = list(coeffs)
    while coeffs and carrier.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class SumsetInstance:
    """Subsets A_1..A_n of a carrier with the pairwise restrictions of ``mode``.

    Elements are stored as raw carrier elements; ``polys[i]`` is the trimmed
    coefficient tuple of P_i, low degree first; ``constants`` maps 0-based
    pairs (i, j), i < j, to c_ij.
    """

    carrier: Carrier
    subsets: tuple[tuple, ...]
    mode: str
    polys: tuple[tuple, ...] = ()
    m: int | None = None
    shifts: tuple = ()
    constants: dict = field(default_factory=dict)
    theorem: str | None = None
    label: str = ""

    def __post_init__(self) -> None:
        c = self.carrier
        if self.mode not in MODES:
            raise InstanceError(f"mode: unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        subsets = []
        for idx, A in enumerate(self.subsets, start=1):
            try:
                elems = tuple(c.coerce(x) for x in A)
            except RingError as exc:
                raise InstanceError(f"subsets[{idx}]: {exc}") from exc
            if len(set(elems)) != len(elems):
                raise InstanceError(f"subsets[{idx}]: elements are not distinct")
            if not elems:
                raise InstanceError(f"subsets[{idx}]: empty subset")
            subsets.append(elems)
        if not subsets:
            raise InstanceError("subsets: need at least one subset")
        object.__setattr__(self, "subsets", tuple(subsets))
        n = len(subsets)
        if self.mode in POLY_MODES:
            if len(self.polys) != n:
                raise InstanceError(f"polys: mode {self.mode} needs {n} polynomials, got {len(self.polys)}")
            try:
                polys = tuple(_trim(tuple(c.coerce(x) for x in P), c) for P in self.polys)
            except RingError as exc:
                raise InstanceError(f"polys: {exc}") from exc
            if any(not P for P in polys):
                raise InstanceError("polys: zero polynomial")
            object.__setattr__(self, "polys", polys)
            degs = {len(P) - 1 for P in polys}
            if self.m is not None and degs != {self.m}:
                raise InstanceError(f"polys: every P_i must have degree m={self.m}, got degrees {sorted(degs)}")
        if self.mode in SHIFT_MODES:
            if len(self.shifts) != n:
                raise InstanceError(f"shifts: mode {self.mode} needs {n} shifts, got {len(self.shifts)}")
            try:
                object.__setattr__(self, "shifts", tuple(c.coerce(b) for b in self.shifts))
            except RingError as exc:
                raise InstanceError(f"shifts: {exc}") from exc
        elif self.shifts:
            object.__setattr__(self, "shifts", tuple(c.coerce(b) for b in self.shifts))
        if self.mode in ("SET_11", "SET_12", "MULTI_11"):
            if self.m is None or self.m < 1:
                raise InstanceError(f"m: mode {self.mode} needs a positive integer m")
        if self.mode == "SNEVILY":
            if any(set(A) != set(subsets[0]) for A in subsets):
                raise InstanceError("subsets: SNEVILY mode needs A_1 = ... = A_n")
        consts = {}
        for (i, j), v in dict(self.constants).items():
            if not (0 <= i < j < n):
                raise InstanceError(f"constants: bad pair ({i + 1}, {j + 1})")
            consts[(i, j)] = c.coerce(v)
        object.__setattr__(self, "constants", consts)

    @property
    def n(self) -> int:
        return len(self.subsets)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(len(A) for A in self.subsets)

    @property
    def degree(self) -> int | None:
        """The common restriction degree m (from ``m`` or the polynomials)."""
        if self.m is not None:
            return self.m
        if self.polys:
            degs = {len(P) - 1 for P in self.polys}
            if len(degs) == 1:
                return degs.pop()
        return None

    def constant(self, i: int, j: int):
        return self.constants.get((i, j), self.carrier.zero())

    def tuple_count(self) -> int:
        count = 1
        for k in self.ks:
            count *= k
        return count

    # -- JSON ---------------------------------------------------------------

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> SumsetInstance:
        if not isinstance(obj, dict):
            raise InstanceError("instance: expected a JSON object")
        known = {"label", "carrier", "mode", "theorem", "subsets", "polys", "m", "shifts", "constants"}
        extra = set(obj) - known
        if extra:
            raise InstanceError(f"instance: unknown keys {sorted(extra)}")
        for key in ("carrier", "mode", "subsets"):
            if key not in obj:
                raise InstanceError(f"{key}: missing")
        carrier = carrier_from_json(obj["carrier"])

        def elem(x, where):
            try:
                return carrier.element_from_json(x)
            except (RingError, TypeError, ValueError) as exc:
                raise InstanceError(f"{where}: {exc}") from exc

        subsets = tuple(tuple(elem(x, f"subsets[{i}]") for x in A) for i, A in enumerate(obj["subsets"], 1))
        polys = tuple(tuple(elem(x, f"polys[{i}]") for x in P) for i, P in enumerate(obj.get("polys", []), 1))
        shifts = tuple(elem(b, "shifts") for b in obj.get("shifts", []))
        consts = {}
        for entry in obj.get("constants", []):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise InstanceError(f"constants: entries are [i, j, c], got {entry!r}")
            i, j, v = entry
            consts[(int(i) - 1, int(j) - 1)] = elem(v, "constants")
        m = obj.get("m")
        if m is not None and (isinstance(m, bool) or not isinstance(m, int)):
            raise InstanceError(f"m: expected an integer, got {m!r}")
        return cls(carrier, subsets, obj["mode"], polys, m, shifts, consts,
                   obj.get("theorem"), obj.get("label", ""))

    def to_json(self) -> dict[str, Any]:
        c = self.carrier
        out: dict[str, Any] = {}
        if self.label:
            out["label"] = self.label
        out["carrier"] = c.to_json()
        out["mode"] = self.mode
        if self.theorem:
            out["theorem"] = self.theorem
        out["subsets"] = [[c.element_to_json(x) for x in A] for A in self.subsets]
        if self.polys:
            out["polys"] = [[c.element_to_json(x) for x in P] for P in self.polys]
        if self.m is not None:
            out["m"] = self.m
        if self.shifts:
            out["shifts"] = [c.element_to_json(b) for b in self.shifts]
        if self.constants:
            out["constants"] = [[i + 1, j + 1, c.element_to_json(v)] for (i, j), v in sorted(self.constants.items())]
        return out


def evaluate_univariate(coeffs: tuple, x, carrier: Carrier):
    """Horner evaluation of a raw coefficient tuple at a raw point."""
    acc = carrier.zero()
    for cf in reversed(coeffs):
        acc = carrier.add(carrier.mul(acc, x), cf)
    return acc
