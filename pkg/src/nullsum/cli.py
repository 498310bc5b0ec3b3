"""Command-line front end.

Every verb prints JSON on stdout. Exit codes:

    0  success / every check passed
    1  a verified identity or bound failed (never expected)
    2  usage or schema error (one JSON line on stderr)
    3  a theorem's hypotheses do not hold and --strict was given
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import sweeps
from .coeffcore import (
    CoefficientProblem,
    HypothesisError,
    check_cor22,
    coeff_cor21_det,
    coeff_cor21_per,
    coeff_oracle,
    coeff_theorem21,
    theorem22_sides,
)
from .exactalg import (
    CyclicGroup,
    RingError,
    RingMatrix,
    RingSpec,
    determinant,
    permanent,
    permanent_naive,
    permanent_ryser,
)
from .instance import InstanceError, SumsetInstance
from .nullbound import DegreeError, certify, dq_member, factorial_in_dq, per_vandermonde_roots
from .sumsetlab import (
    ENUMERATION_LIMIT,
    build_example_11,
    build_example_12,
    enumerate_sumset,
    example_12_instance,
    snevily_transversal,
    verify_bound,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


class UsageError(Exception):
    """Bad arguments or input; reported as exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument helpers


_RING_SHORT = [
    (re.compile(r"^(ZZ|Z|integer)$"), lambda m: RingSpec.integer()),
    (re.compile(r"^(QQ|Q|rational)$"), lambda m: RingSpec.rational()),
    (re.compile(r"^GF\((\d+)\)$"), lambda m: RingSpec.gf(int(m[1]))),
    (re.compile(r"^GF\((\d+)\^(\d+)\)$"), lambda m: RingSpec.gf(int(m[1]), int(m[2]))),
    (re.compile(r"^Z\[zeta_(\d+)\]$"), lambda m: RingSpec.cyclotomic(int(m[1]))),
]


def parse_ring(text: str) -> RingSpec:
    """Ring from shorthand (ZZ, QQ, GF(7), GF(2^3), Z[zeta_5]) or a JSON spec."""
    text = text.strip()
    if text.startswith("{"):
        return RingSpec.from_json(load_json(text, "ring"))
    for pattern, make in _RING_SHORT:
        m = pattern.match(text)
        if m:
            return make(m)
    raise UsageError(f"ring: cannot parse {text!r}")


def parse_ints(text: str | None, what: str) -> tuple[int, ...]:
    if text is None:
        raise UsageError(f"{what}: missing")
    text = text.strip().strip("[]")
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON ({exc})") from None


def load_input(arg: str) -> Any:
    """Inline JSON, a JSON file, or a JSON-lines file (returned as a list)."""
    if arg is None:
        raise UsageError("input: missing")
    stripped = arg.lstrip()
    if stripped.startswith(("{", "[")):
        return load_json(arg, "input")
    path = Path(arg)
    if not path.is_file():
        raise UsageError(f"input: no such file {arg!r}")
    text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        return [load_json(ln, f"input line {i}") for i, ln in enumerate(lines, 1)]


def load_instances(arg: str) -> list[SumsetInstance]:
    obj = load_input(arg)
    objs = obj if isinstance(obj, list) else [obj]
    return [SumsetInstance.from_json(o) for o in objs]


def parse_matrix(text: str, spec: RingSpec) -> RingMatrix:
    rows = load_json(text, "matrix")
    if not (isinstance(rows, list) and rows and all(isinstance(r, list) and len(r) == len(rows) for r in rows)):
        raise UsageError("matrix: expected a square JSON array of rows")
    return RingMatrix.from_json(rows, spec)


# ---------------------------------------------------------------------------
# verbs; each returns (list of JSON objects to print, exit status)


def cmd_coeff(args) -> tuple[list, int]:
    spec = parse_ring(args.ring)
    a = parse_matrix(args.matrix, spec)
    form = args.form
    out: dict[str, Any] = {"form": form, "ring": str(spec)}
    if form == "thm21":
        ks, ms = parse_ints(args.ks, "ks"), parse_ints(args.ms, "ms")
        problem = CoefficientProblem(a.n, args.delta, ks, ms, a)
        value = coeff_theorem21(problem)
        out.update(delta=args.delta, ks=list(ks), ms=list(ms), K=problem.K, closed_form=value.to_json())
        if args.oracle:
            oracle = coeff_oracle(problem)
            out.update(oracle=oracle.to_json(), match=oracle == value)
    elif form in ("cor21-det", "cor21-per"):
        if args.k is None:
            raise UsageError("k: cor21 forms need --k")
        ms = parse_ints(args.ms, "ms")
        delta = 0 if form == "cor21-det" else 1
        fn = coeff_cor21_det if delta == 0 else coeff_cor21_per
        value = fn(a.n, args.k, ms, a)
        out.update(k=args.k, ms=list(ms), closed_form=value.to_json())
        if args.oracle:
            oracle = coeff_oracle(CoefficientProblem(a.n, delta, (args.k,) * a.n, ms, a))
            out.update(oracle=oracle.to_json(), match=oracle == value)
    elif form == "cor22":
        ks, ms = parse_ints(args.ks, "ks"), parse_ints(args.ms, "ms")
        res = check_cor22(ks, ms, a)
        out.update(ks=list(ks), ms=list(ms), c=res.c, L=res.L, per=res.per,
                   bound_ok=res.bound_ok, reversal_ok=res.reversal_ok, match=res.bound_ok and res.reversal_ok)
    else:
        if args.k is None:
            raise UsageError("k: thm22 needs --k")
        ls, ms = parse_ints(args.ls, "ls"), parse_ints(args.ms, "ms")
        lhs, rhs = theorem22_sides(args.k, ls, ms, a)
        out.update(k=args.k, ls=list(ls), ms=list(ms), lhs=lhs.to_json(), rhs=rhs.to_json(), match=lhs == rhs)
    status = EXIT_VIOLATION if out.get("match") is False else EXIT_OK
    return [out], status


def cmd_permanent(args) -> tuple[list, int]:
    spec = parse_ring(args.ring)
    a = parse_matrix(args.matrix, spec)
    fn = {"auto": permanent, "naive": permanent_naive, "ryser": permanent_ryser}[args.method]
    return [{"permanent": fn(a).to_json(), "ring": str(spec), "method": args.method}], EXIT_OK


def cmd_det(args) -> tuple[list, int]:
    spec = parse_ring(args.ring)
    a = parse_matrix(args.matrix, spec)
    return [{"det": determinant(a).to_json(), "ring": str(spec)}], EXIT_OK


def cmd_dq(args) -> tuple[list, int]:
    if (args.x is None) == (args.n is None):
        raise UsageError("dq: give exactly one of --x or --n")
    if args.x is not None:
        return [{"member": dq_member(args.q, args.x)}], EXIT_OK
    return [{"n": args.n, "member": factorial_in_dq(args.n, args.q)}], EXIT_OK


def cmd_perb(args) -> tuple[list, int]:
    exps = parse_ints(args.exps, "exps")
    per, zero = per_vandermonde_roots(args.q, exps)
    return [{"q": args.q, "exps": list(exps), "per_B": per.to_json(), "text": str(per), "zero": zero}], EXIT_OK


def _strict_status(args, issued: bool) -> int:
    return EXIT_HYPOTHESIS if args.strict and not issued else EXIT_OK


def cmd_certify(args) -> tuple[list, int]:
    out, status = [], EXIT_OK
    for inst in load_instances(args.input):
        cert = certify(inst, args.theorem)
        out.append({"label": inst.label, **cert.to_json()})
        status = max(status, _strict_status(args, cert.issued))
    return out, status


def cmd_enumerate(args) -> tuple[list, int]:
    return [{"label": inst.label, **enumerate_sumset(inst, args.limit).to_json()}
            for inst in load_instances(args.input)], EXIT_OK


def cmd_verify(args) -> tuple[list, int]:
    out, status = [], EXIT_OK
    for inst in load_instances(args.input):
        rep = verify_bound(inst, args.theorem, args.limit, args.seed)
        out.append(rep.to_json())
        if not rep.passed:
            status = EXIT_VIOLATION
        elif status == EXIT_OK:
            status = _strict_status(args, rep.certificate.issued)
    return out, status


def cmd_snevily(args) -> tuple[list, int]:
    G = CyclicGroup(args.N)
    w = snevily_transversal(G, parse_ints(args.A, "A"), parse_ints(args.B, "B"))
    return [{"group": str(G), "witness": w}], EXIT_OK


def cmd_examples(args) -> tuple[list, int]:
    which = args.which
    if which in ("1.1i", "1.1ii"):
        inst = build_example_11(args.p, which[3:])
        rep = verify_bound(inst, limit=args.limit)
        out = rep.to_json()
        out["instance"] = inst.to_json()
        out["T"] = out["enumeration"]["sums"]
        return [out], EXIT_OK if rep.passed else EXIT_VIOLATION
    A, F = build_example_12(args.m, args.n, args.p)
    inst = example_12_instance(args.m, args.n, args.p)
    enum = enumerate_sumset(inst, args.limit)
    out = {"field": str(F), "A": [F.element_to_json(x) for x in A], "size": len(A),
           "expected_size": args.m * (args.n - 1), "admissible_tuples": enum.admissible,
           "certificate": certify(inst).to_json()}
    ok = enum.admissible == 0 and len(A) == args.m * (args.n - 1)
    return [out], EXIT_OK if ok else EXIT_VIOLATION


def cmd_sweep(args) -> tuple[list, int]:
    if args.suite not in sweeps.SUITES:
        raise UsageError(f"suite: unknown suite {args.suite!r}; expected one of {', '.join(sweeps.SUITES)}")
    seed = sweeps.DEFAULT_SEED if args.seed is None else args.seed
    start = time.perf_counter()
    records, summary = sweeps.run_suite(args.suite, seed, args.jobs)
    # wall time goes to stderr so stdout is identical for every --jobs value
    print(json.dumps({"suite": args.suite, "wall_seconds": round(time.perf_counter() - start, 3)}), file=sys.stderr)
    return records + [summary], EXIT_OK if summary["failed"] == 0 else EXIT_VIOLATION


COMMANDS = {
    "coeff": cmd_coeff, "permanent": cmd_permanent, "det": cmd_det, "dq": cmd_dq, "perB": cmd_perb,
    "certify": cmd_certify, "enumerate": cmd_enumerate, "verify": cmd_verify, "snevily": cmd_snevily,
    "examples": cmd_examples, "sweep": cmd_sweep,
}


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("NULLSUM_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomized suites and reports")
    common.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (default $NULLSUM_JOBS or 1)")
    common.add_argument("--limit", type=int, default=ENUMERATION_LIMIT, help="cap on enumerated tuples")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--strict", action="store_true", help="exit 3 when a theorem's hypotheses fail")

    parser = _Parser(prog="nullsum", description="Restricted sumsets and polynomial-method coefficient checks.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("coeff", parents=[common], help="coefficient identities")
    p.add_argument("--form", choices=["thm21", "cor21-det", "cor21-per", "cor22", "thm22"], default="thm21")
    p.add_argument("--delta", type=int, choices=[0, 1], default=0)
    p.add_argument("--ks")
    p.add_argument("--ms")
    p.add_argument("--ls")
    p.add_argument("--k", type=int)
    p.add_argument("--matrix", required=True, help="JSON rows, e.g. [[1,2],[3,4]]")
    p.add_argument("--ring", default="ZZ")
    p.add_argument("--oracle", action="store_true", help="cross-check against polynomial expansion")

    for verb in ("permanent", "det"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--matrix", required=True)
        p.add_argument("--ring", default="ZZ")
        if verb == "permanent":
            p.add_argument("--method", choices=["auto", "naive", "ryser"], default="auto")

    p = sub.add_parser("dq", parents=[common], help="membership in the semigroup generated by the primes of q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", type=int)
    p.add_argument("--n", type=int, help="test n! instead of x")

    p = sub.add_parser("perB", parents=[common], help="permanent of the Vandermonde matrix of q-th roots of unity")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--exps", required=True, help="exponents e_j with b_j = zeta_q^e_j")

    for verb in ("certify", "enumerate", "verify"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--input", required=True, help="instance JSON (inline, file, or JSON lines)")
        if verb != "enumerate":
            p.add_argument("--theorem", help="override the instance's theorem selector")

    p = sub.add_parser("snevily", parents=[common])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)

    p = sub.add_parser("examples", parents=[common], help="extremal constructions")
    p.add_argument("--which", choices=["1.1i", "1.1ii", "1.2"], required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=3)

    p = sub.add_parser("sweep", parents=[common], help="run a batch verification suite")
    p.add_argument("--suite", required=True)
    return parser


def _fail(message: str, kind: str) -> int:
    print(json.dumps({"error": message, "kind": kind}), file=sys.stderr)
    return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.verb == "examples" and args.p is None:
            args.p = 5 if args.which == "1.2" else 3
        if args.jobs < 1:
            raise UsageError("jobs: must be at least 1")
        objs, status = COMMANDS[args.verb](args)
    except UsageError as exc:
        return _fail(str(exc), "usage")
    except (InstanceError, RingError, HypothesisError, DegreeError, ValueError) as exc:
        return _fail(str(exc), type(exc).__name__)
    text = "".join(json.dumps(o, sort_keys=False) + "\n" for o in objs)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
