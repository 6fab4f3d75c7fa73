"""Command-line front end.

Exit codes: 0 success or pass, 1 a verification or check failed, 2 invalid
input.  JSON goes to stdout with sorted keys; big integers are decimal
strings.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import asymptotics, capsearch, monomials, polymethod
from .capsearch import PointSet
from .ffield import CoefficientTriple, FieldError, check_prime
from .monomials import CubeTooLarge, format_degree, to_degree

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInput(ValueError):
    pass


@dataclass
class CommandResult:
    command: str
    inputs: dict[str, Any]
    output: Any
    status: str  # "pass" | "fail" | "info"

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "output": self.output,
            "status": self.status,
        }


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _emit(obj: Any) -> None:
    print(dumps(obj.to_json() if hasattr(obj, "to_json") else obj))


def _load_set(path: str) -> PointSet:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read set file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput("set file must hold a JSON object")
    try:
        return PointSet.from_json(data)
    except (ValueError, FieldError) as exc:
        raise InvalidInput(str(exc)) from exc


def _triple(text: str, q: int) -> CoefficientTriple:
    try:
        return CoefficientTriple.parse(text, q)
    except FieldError as exc:
        raise InvalidInput(str(exc)) from exc


def _degree(text: str) -> Fraction:
    try:
        return to_degree(text)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def _prime(q: int) -> int:
    try:
        return check_prime(q)
    except FieldError as exc:
        raise InvalidInput(str(exc)) from exc


# -- commands -----------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    if args.q < 2 or args.n < 0:
        raise InvalidInput("need q >= 2 and n >= 0")
    print(monomials.count_monomials(args.q, args.n, _degree(args.d)))
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    if args.q < 2 or args.n < 0:
        raise InvalidInput("need q >= 2 and n >= 0")
    print(polymethod.theorem_bound(args.q, args.n))
    return EXIT_OK


def cmd_rate(args: argparse.Namespace) -> int:
    q = args.q
    if q < 2:
        raise InvalidInput("need q >= 2")
    inputs: dict[str, Any] = {"q": q}
    if args.constant or args.x is None:
        res = asymptotics.clp_constant(q)
        inputs["constant"] = True
    else:
        x = _degree(args.x)
        if not 0 <= x <= q - 1:
            raise InvalidInput(f"x must lie in [0, {q - 1}]")
        res = asymptotics.rate_function(q, x)
        inputs["x"] = format_degree(x)
    _emit(CommandResult("rate", inputs, res.to_json(), "info"))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    A = _load_set(args.set)
    t = _triple(args.coeffs, A.q)
    if t.gamma.value == 0:
        raise InvalidInput("gamma must be nonzero")
    ok, witness = capsearch.is_progression_free(A, t)
    out = {
        "progressionFree": ok,
        "setSize": len(A),
        "witness": None if witness is None else [p.to_list() for p in witness],
    }
    inputs = {"set": args.set, "coeffs": list(t.values()), "q": A.q, "n": A.n}
    _emit(CommandResult("verify", inputs, out, "pass" if ok else "fail"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args: argparse.Namespace) -> int:
    q = _prime(args.q)
    t = _triple(args.coeffs, q)
    if t.gamma.value == 0:
        raise InvalidInput("gamma must be nonzero")
    if args.mode == "exact":
        budget = args.budget if args.budget is not None else capsearch.DEFAULT_NODE_BUDGET
        res = capsearch.exhaustive_max(q, args.n, t, budget, symmetry=args.symmetry)
    else:
        res = capsearch.greedy_random(q, args.n, t, args.seed, args.restarts)
    ok, _ = capsearch.is_progression_free(res.witness, t)
    inputs = {
        "q": q,
        "n": args.n,
        "coeffs": list(t.values()),
        "mode": args.mode,
        "seed": args.seed,
        "restarts": args.restarts,
        "budget": args.budget,
    }
    _emit(CommandResult("search", inputs, res.to_json(), "info" if ok else "fail"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args: argparse.Namespace) -> int:
    if args.set:
        A = _load_set(args.set)
        t = _triple(args.coeffs or "1,1,1", A.q)
        inputs = {"set": args.set, "coeffs": list(t.values())}
        try:
            rep = polymethod.verify_theorem_pipeline(A, t)
        except polymethod.HypothesisError as exc:
            out = {"error": str(exc)}
            if exc.witness is not None:
                out["witness"] = [list(p.coords) for p in exc.witness]
            _emit(CommandResult("check", inputs, out, "fail"))
            return EXIT_FAIL
        _emit(rep)
        ok = rep.passed and rep.chain_holds
        _emit(CommandResult("check", inputs, {"passed": int(ok), "trials": 1}, "pass" if ok else "fail"))
        return EXIT_OK if ok else EXIT_FAIL

    if args.q is None or args.n is None:
        raise InvalidInput("check needs --set, or --q and --n")
    q = _prime(args.q)
    d = _degree(args.d) if args.d is not None else None
    t = _triple(args.coeffs, q) if args.coeffs else None
    if t is not None and t.gamma.value == 0:
        raise InvalidInput("gamma must be nonzero for progression-free sampling")
    inputs = {
        "q": q,
        "n": args.n,
        "d": None if d is None else format_degree(d),
        "coeffs": None if t is None else list(t.values()),
        "trials": args.trials,
        "seed": args.seed,
    }
    if args.trials <= 0:
        _emit(CommandResult("check", inputs, {"passed": 0, "trials": 0}, "info"))
        return EXIT_OK
    rng = random.Random(args.seed)
    passed = 0
    for _ in range(args.trials):
        rep = polymethod.proposition_trial(q, args.n, rng, d=d, t=t)
        _emit(rep)
        passed += rep.passed
    ok = passed == args.trials
    _emit(CommandResult("check", inputs, {"passed": passed, "trials": args.trials}, "pass" if ok else "fail"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_converge(args: argparse.Namespace) -> int:
    if args.q < 2:
        raise InvalidInput("need q >= 2")
    try:
        ns = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"malformed --n-list {args.n_list!r}") from exc
    rows = asymptotics.convergence_report(args.q, ns)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(asymptotics.report_csv(rows))
    inputs = {"q": args.q, "nList": ns, "csv": args.csv}
    _emit(CommandResult("converge", inputs, [r.to_json() for r in rows], "info"))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="capbound", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", help="number of q-power-free monomials of degree <= d")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", required=True, help='integer or rational "p/r"')
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("bound", help="3 * m_{(q-1)n/3}")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("rate", help="rate function I(x) or the constant q*exp(-I((q-1)/3))")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--x", help='integer or rational "p/r" in [0, q-1]')
    s.add_argument("--constant", action="store_true")
    s.set_defaults(func=cmd_rate)

    s = sub.add_parser("verify", help="check a set file for progression-freeness")
    s.add_argument("--set", required=True)
    s.add_argument("--coeffs", required=True, help='"alpha,beta,gamma"')
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="find a large progression-free set")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--coeffs", default="1,1,1")
    s.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=1)
    s.add_argument("--budget", type=int)
    s.add_argument("--symmetry", choices=capsearch.SYMMETRIES, default="affine")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("check", help="randomized rank-bound trials, or the full bound on a set file")
    s.add_argument("--q", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--d")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coeffs")
    s.add_argument("--set")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("converge", help="exact counts against the large-deviation limit")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n-list", default="3,9,99,999")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_converge)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, FieldError, CubeTooLarge, ValueError) as exc:
        print(f"capbound {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
