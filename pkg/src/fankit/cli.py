"""Command-line front end: run checks and reductions against a definition
file and emit replayable certificates.

Exit codes: 0 YES/decided, 1 NO/counterexample/failed re-check,
2 UNKNOWN/resource, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from .certificate import Certificate, CertificateFormatError, verify
from .continuity import deco_decide, defu_via_wkl, path_modulus, \
    uc_bound_bruteforce, uc_via_fan
from .errors import (BudgetExceededError, CertificateError, FankitError,
                     FuelError, InconsistencyError, OutOfRangeError,
                     PreconditionError, WitnessError)
from .fan import coconvex_bound, fan_bruteforce
from .oracles import WKLOracle, llpo_bounded_oracle, wkl_from_llpo, \
    wkl_oracle_from_llpo
from .sets import Outcome, bar_verdict, uniform_bound
from .specfile import SpecError, load_specdoc
from .trees import complete, members_at
from .words import format_word, restrict

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class UsageError(FankitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit; raise instead
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fankit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="definition file")
        return p

    p = add("bar-check")
    p.add_argument("--set", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("uniform-bound")
    p.add_argument("--set", required=True)
    p.add_argument("--max", type=int, required=True)

    p = add("complete-tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("find-path")
    p.add_argument("--tree", required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--oracle", default="llpo:16")

    p = add("coconvex-bound")
    p.add_argument("--bar", required=True)

    p = add("uc-bound")
    p.add_argument("--fn", required=True)
    p.add_argument("--via-fan", action="store_true")

    p = add("deco")
    p.add_argument("--fn", required=True)

    p = add("defu")
    p.add_argument("--set", required=True)
    p.add_argument("--oracle", default="llpo:16")

    p = add("verify")
    p.add_argument("--cert", required=True)
    return parser


def _oracle_horizon(text: str) -> int:
    if not text.startswith("llpo:"):
        raise UsageError(f"unsupported oracle {text!r}; use llpo:H")
    try:
        return int(text[len("llpo:"):])
    except ValueError as exc:
        raise UsageError(f"bad oracle horizon in {text!r}") from exc


def _do_bar_check(args, doc) -> tuple[int, Certificate]:
    carrier = doc.get_set(args.set)
    verdict = bar_verdict(carrier, args.depth)
    command = f"bar-check --set {args.set} --depth {args.depth}"
    if verdict.outcome is Outcome.YES:
        return EXIT_YES, Certificate(command, "YES", [("BOUND", str(verdict.bound))])
    if verdict.outcome is Outcome.NO:
        escape = format_word(restrict(verdict.escape, args.depth))
        return EXIT_NO, Certificate(command, "NO", [("ESCAPE", escape)])
    return EXIT_UNKNOWN, Certificate(command, "UNKNOWN", [("BOUND", str(verdict.depth))])


def _do_uniform_bound(args, doc) -> tuple[int, Certificate]:
    carrier = doc.get_set(args.set)
    verdict = uniform_bound(carrier, args.max)
    command = f"uniform-bound --set {args.set} --max {args.max}"
    if verdict.outcome is Outcome.YES:
        return EXIT_YES, Certificate(command, "YES", [("BOUND", str(verdict.bound))])
    return EXIT_UNKNOWN, Certificate(command, "UNKNOWN", [("BOUND", str(verdict.depth))])


def _do_complete_tree(args, doc) -> tuple[int, Certificate]:
    t = doc.get_tree(args.tree)
    completed = complete(t)
    command = f"complete-tree --tree {args.tree} --depth {args.depth}"
    payload = []
    for k in range(args.depth + 1):
        words = " ".join(format_word(u) for u in members_at(completed, k))
        payload.append(("WITNESS", f"{k}:{words}"))
    return EXIT_YES, Certificate(command, "YES", payload)


def _do_find_path(args, doc) -> tuple[int, Certificate]:
    t = doc.get_tree(args.tree)
    horizon = _oracle_horizon(args.oracle)
    gen = wkl_from_llpo(t, llpo_bounded_oracle(horizon), fuel=max(64, args.bits))
    path = gen.take(args.bits)
    command = f"find-path --tree {args.tree} --bits {args.bits} --oracle llpo:{horizon}"
    cert = Certificate(command, "YES", [("PATH", format_word(path))],
                       trace=";".join(gen.trace))
    return EXIT_YES, cert


def _do_coconvex_bound(args, doc) -> tuple[int, Certificate]:
    b = doc.get_bar(args.bar)
    n = coconvex_bound(b)
    command = f"coconvex-bound --bar {args.bar}"
    return EXIT_YES, Certificate(command, "YES", [("BOUND", str(n))])


def _do_uc_bound(args, doc) -> tuple[int, Certificate]:
    f = doc.get_functional(args.fn)
    command = f"uc-bound --fn {args.fn}"
    if args.via_fan:
        fan = fan_bruteforce(max_n=32)
        n = uc_via_fan(f, path_modulus(f), fan)
        trace = f"fan[{fan.tag}]={n}"
    else:
        n = uc_bound_bruteforce(f)
        trace = ""
    return EXIT_YES, Certificate(command, "YES", [("BOUND", str(n))], trace=trace)


def _do_deco(args, doc) -> tuple[int, Certificate]:
    f = doc.get_functional(args.fn)
    verdict = deco_decide(f)
    command = f"deco --fn {args.fn}"
    if verdict.exists:
        left, right = verdict.witnesses
        # deco witnesses are finite prefixes padded with zeros
        pair = f"{format_word(left.prefix)}:{format_word(right.prefix)}"
        return EXIT_YES, Certificate(command, "EXISTS", [("WITNESS", pair)])
    return EXIT_YES, Certificate(command, "NOT_EXISTS", [])


def _do_defu(args, doc) -> tuple[int, Certificate]:
    d = doc.get_set(args.set)
    horizon = _oracle_horizon(args.oracle)
    captured = []
    base = wkl_oracle_from_llpo(llpo_bounded_oracle(horizon))

    def solve(t):
        gen = base.solve(t)
        captured.append(gen)
        return gen

    verdict = defu_via_wkl(d, WKLOracle(solve, tag=base.tag))
    command = f"defu --set {args.set} --oracle llpo:{horizon}"
    trace = ";".join(captured[0].trace) if captured else ""
    if verdict.exists:
        return EXIT_YES, Certificate(command, "EXISTS",
                                     [("WITNESS", format_word(verdict.witness))],
                                     trace=trace)
    return EXIT_YES, Certificate(command, "NOT_EXISTS", [], trace=trace)


def _do_verify(args, doc) -> tuple[int, str]:
    with open(args.cert, "r", encoding="utf-8") as fh:
        cert = Certificate.parse(fh.read())
    ok, report = verify(cert, doc)
    if ok:
        return EXIT_YES, "VERIFY=OK\n"
    lines = "\n".join("DIFF=" + line for line in report.splitlines())
    return EXIT_NO, f"VERIFY=FAIL\n{lines}\n"


_HANDLERS = {
    "bar-check": _do_bar_check,
    "uniform-bound": _do_uniform_bound,
    "complete-tree": _do_complete_tree,
    "find-path": _do_find_path,
    "coconvex-bound": _do_coconvex_bound,
    "uc-bound": _do_uc_bound,
    "deco": _do_deco,
    "defu": _do_defu,
}


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command line; returns (exit code, certificate text)."""
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, f"ERROR=usage: {exc}\n"
    try:
        doc = load_specdoc(args.spec)
    except (SpecError, OSError) as exc:
        return EXIT_USAGE, f"ERROR=spec: {exc}\n"
    try:
        if args.command == "verify":
            return _do_verify(args, doc)
        code, cert = _HANDLERS[args.command](args, doc)
        return code, cert.render()
    except (UsageError, PreconditionError, SpecError, OutOfRangeError,
            CertificateFormatError) as exc:
        return EXIT_USAGE, f"ERROR={type(exc).__name__}: {exc}\n"
    except (BudgetExceededError, FuelError) as exc:
        return EXIT_UNKNOWN, f"ERROR={type(exc).__name__}: {exc}\n"
    except (CertificateError, InconsistencyError, WitnessError) as exc:
        return EXIT_NO, f"ERROR={type(exc).__name__}: {exc}\n"


def main() -> None:
    code, text = run(sys.argv[1:])
    sys.stdout.write(text)
    sys.exit(code)


if __name__ == "__main__":
    main()
