"""Command line interface: validate, run, profile, sweep, foursquare.

Inputs are given either literally ("aabb") or run-length encoded ("a2b2",
count after each symbol), so exact analyses scale to inputs that would never
fit in memory.  Exit codes: 0 ok, 1 usage or malformed input, 2 validation
failure, 3 step budget exhausted.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .exact import four_square
from .machine import (
    DEFAULT_STEP_BUDGET,
    InputError,
    MachineSpec,
    NonHaltingError,
    RESTARTING_REALTIME,
    SpecificationError,
    TWO_WAY_QCCA,
    enumerate_round,
    run_trajectory,
    sample_trajectories,
    validate_spec,
)
from .machinefile import MachineFileError, load_spec
from .power import ParameterError, build_power, is_member_pair, round_closed_form, solve_restart
from .reports import (
    fraction_decimal,
    power_sweep_rows,
    render_figures,
    render_rows,
    upower_sweep_rows,
)
from .upower import (
    FamilyError,
    analyze_upower,
    build_upower,
    enumerate_pass,
    family_bounds,
    is_member,
    is_upower_member,
    parse_family,
    profile_member_space,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3

_COUNTED = re.compile(r"(?:[a-z]\d+)+")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


class SystemExitWithCode(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_input(text: str) -> list[tuple[str, int]]:
    """Parse "a2b4" into runs [("a",2),("b",4)]; anything else is literal."""
    if _COUNTED.fullmatch(text):
        pairs = [(m[0], int(m[1:])) for m in re.findall(r"[a-z]\d+", text)]
    else:
        pairs = [(ch, 1) for ch in text]
    runs: list[tuple[str, int]] = []
    for sym, count in pairs:
        if count == 0:
            continue
        if runs and runs[-1][0] == sym:
            runs[-1] = (sym, runs[-1][1] + count)
        else:
            runs.append((sym, count))
    return runs


def _input_length(runs: list[tuple[str, int]]) -> int:
    return sum(c for _, c in runs)


def _describe_input(runs: list[tuple[str, int]]) -> str:
    return " ".join(f"{s}^{c}" for s, c in runs) if runs else "(empty)"


def _power_shape(runs: list[tuple[str, int]]) -> tuple[int, int] | None:
    if len(runs) == 2 and runs[0][0] == "a" and runs[1][0] == "b":
        return runs[0][1], runs[1][1]
    return None


def _get_machine(args) -> tuple[str, MachineSpec]:
    name = args.machine
    if name == "power":
        return "power", build_power(args.k)
    if name == "upower":
        return "upower", build_upower(args.k, single_a_member=args.upower_min_exponent == 0)
    if name.startswith("file:"):
        path = name[len("file:"):]
        spec = load_spec(path)
        report = validate_spec(spec)
        if not report.ok:
            lines = "\n".join(f"  {p}" for p in report.problems)
            raise SystemExitWithCode(EXIT_VALIDATION, f"machine file {path} fails validation:\n{lines}")
        return "file", spec
    raise UsageError(f"unknown machine {name!r} (use power, upower, or file:<path>)")


def _print_prob(label: str, value) -> None:
    print(f"{label} = {value} ({fraction_decimal(value)})")


def cmd_validate(args) -> int:
    if args.machine.startswith("file:"):
        path = args.machine[len("file:"):]
        try:
            spec = load_spec(path)
        except (OSError, MachineFileError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    else:
        _, spec = _get_machine(args)
    report = validate_spec(spec)
    print(f"machine: {spec.name} ({spec.kind})")
    for key, text in report.operator_reports:
        print(f"operator {key}: {text}")
    if report.ok:
        print("validation: ok")
        return EXIT_OK
    for problem in report.problems:
        print(f"problem: {problem}")
    print("validation: FAILED")
    return EXIT_VALIDATION


def _run_exact_power(args, runs) -> int:
    shape = _power_shape(runs)
    print(f"machine: power (k={args.k})")
    print(f"input: {_describe_input(runs)}")
    if shape is None:
        print("input is not of the form a^m b^n: rejected deterministically")
        _print_prob("overall reject", 1)
        return EXIT_OK
    m, n = shape
    print(f"member: {'yes' if is_member_pair(m, n) else 'no'}")
    p_acc, p_rej = round_closed_form(m, n, args.k)
    _print_prob("per-round accept", p_acc)
    _print_prob("per-round reject", p_rej)
    _print_prob("per-round restart", 1 - p_acc - p_rej)
    overall_acc, overall_rej, rounds = solve_restart(p_acc, p_rej)
    _print_prob("overall accept", overall_acc)
    _print_prob("overall reject", overall_rej)
    _print_prob("expected rounds", rounds)
    return EXIT_OK


def _run_exact_upower(args, runs) -> int:
    if any(s != "a" for s, _ in runs):
        print("input is not unary: rejected deterministically")
        _print_prob("overall reject", 1)
        return EXIT_OK
    m = _input_length(runs)
    single = args.upower_min_exponent == 0
    print(f"machine: upower (k={args.k})")
    print(f"input: a^{m}")
    if m < 1:
        print("empty input: rejected deterministically")
        _print_prob("overall reject", 1)
        return EXIT_OK
    print(f"member: {'yes' if is_upower_member(m, single) else 'no'}")
    analysis = analyze_upower(m, args.k, single)
    _print_prob("per-pass accept", analysis.pass_accept)
    _print_prob("per-pass reject", analysis.pass_reject)
    _print_prob("per-pass restart", analysis.pass_restart)
    _print_prob("overall accept", analysis.overall_accept)
    _print_prob("overall reject", analysis.overall_reject)
    _print_prob("expected passes", analysis.expected_passes)
    return EXIT_OK


def _run_family(args) -> int:
    family = parse_family(args.family)
    runs = parse_input(args.input)
    if any(s != "a" for s, _ in runs):
        raise FamilyError("family membership is defined for unary inputs a^m")
    length = _input_length(runs)
    member = is_member(length, family)
    print(f"input: a^{length}")
    print(f"member: {'yes' if member else 'no'}")
    for line in family_bounds(family, args.k, length).lines():
        print(line)
    return EXIT_OK


def cmd_run(args) -> int:
    if args.family:
        if args.machine:
            raise UsageError("--family and --machine are mutually exclusive")
        return _run_family(args)
    if not args.machine:
        raise UsageError("run needs --machine or --family")
    kind_name, spec = _get_machine(args)
    runs = parse_input(args.input)

    if args.mode == "exact":
        if kind_name == "power":
            return _run_exact_power(args, runs)
        if kind_name == "upower":
            return _run_exact_upower(args, runs)
        if spec.kind == RESTARTING_REALTIME:
            analysis = enumerate_round(spec, runs)
            _print_prob("per-round accept", analysis.p_accept)
            _print_prob("per-round reject", analysis.p_reject)
            if analysis.overall_accept is None:
                raise SystemExitWithCode(EXIT_BUDGET, "machine never halts on this input")
            _print_prob("overall accept", analysis.overall_accept)
            _print_prob("overall reject", analysis.overall_reject)
            _print_prob("expected rounds", analysis.expected_rounds)
            return EXIT_OK
        raise UsageError("exact mode is available for power, upower, and restarting machine files")

    if args.mode == "enumerate":
        if kind_name == "upower" or spec.kind == TWO_WAY_QCCA:
            if kind_name != "upower":
                raise UsageError("pass enumeration is available for the built-in upower machine")
            if any(s != "a" for s, _ in runs):
                raise UsageError("upower enumeration needs a unary input")
            m = _input_length(runs)
            analysis = enumerate_pass(args.k, m, args.upower_min_exponent == 0)
            print(f"machine: upower (k={args.k}), step-level pass enumeration")
            _print_prob("per-pass accept", analysis.pass_accept)
            _print_prob("per-pass reject", analysis.pass_reject)
            _print_prob("per-pass restart", analysis.pass_restart)
            _print_prob("overall accept", analysis.overall_accept)
            _print_prob("overall reject", analysis.overall_reject)
            return EXIT_OK
        analysis = enumerate_round(spec, runs)
        print(f"machine: {spec.name}, exact round enumeration")
        _print_prob("per-round accept", analysis.p_accept)
        _print_prob("per-round reject", analysis.p_reject)
        _print_prob("per-round restart", analysis.p_restart)
        if analysis.overall_accept is not None:
            _print_prob("overall accept", analysis.overall_accept)
            _print_prob("overall reject", analysis.overall_reject)
            _print_prob("expected rounds", analysis.expected_rounds)
        return EXIT_OK

    if args.mode == "sample":
        summary = sample_trajectories(spec, runs, args.trajectories, args.seed, args.step_budget)
        print(f"machine: {spec.name}")
        print(f"trajectories: {summary.count} (seed {args.seed})")
        print(f"accepted: {summary.accepts} ({summary.accepts / summary.count:.6f})")
        print(f"rejected: {summary.rejects} ({summary.rejects / summary.count:.6f})")
        print(f"still running at budget: {summary.running}")
        print(f"mean rounds: {summary.mean_rounds:.3f}")
        print(f"mean steps: {summary.total_steps / summary.count:.3f}")
        if spec.uses_counter:
            print(f"max counter: {summary.max_counter}")
        if args.trace:
            _write_trace(spec, runs, args)
        if summary.running:
            return EXIT_BUDGET
        return EXIT_OK

    raise UsageError(f"unknown mode {args.mode!r}")


def _write_trace(spec, runs, args) -> None:
    with open(args.trace, "w", encoding="utf-8") as fh:
        def line(step, state, head, counter, outcome):
            fh.write(f"{step}\t{state}\t{head}\t{counter}\t{outcome}\n")

        stats = run_trajectory(spec, runs, args.seed, args.step_budget, trace=line)
        fh.write(f"# verdict={stats.verdict} steps={stats.steps} rounds={stats.rounds}\n")
    print(f"trace written to {args.trace}")


def cmd_profile(args) -> int:
    kind_name, spec = _get_machine(args)
    runs = parse_input(args.input)
    if not spec.uses_counter:
        raise UsageError(f"machine {spec.name} has no counter to profile")
    if any(s != "a" for s, _ in runs) and kind_name == "upower":
        raise UsageError("upower profiling needs a unary input")
    m = _input_length(runs)
    if args.mode == "sampled":
        stats = run_trajectory(spec, runs, args.seed, args.step_budget)
        print(f"max counter (one sampled trajectory, seed {args.seed}): {stats.max_counter}")
        if stats.verdict == "running":
            print("trajectory still running at the step budget")
            return EXIT_BUDGET
        return EXIT_OK
    if kind_name != "upower":
        raise UsageError("exact-schedule profiling is available for the built-in upower machine")
    single = args.upower_min_exponent == 0
    peak = profile_member_space(m, args.k, single)
    member = is_upower_member(m, single)
    predicted = m.bit_length() - 1 if member else m
    print(f"input: a^{m} ({'member' if member else 'non-member'})")
    print(f"max counter over the exact schedule: {peak}")
    print(f"prediction ({'log2(m)' if member else 'm'}): {predicted} -> {'met' if peak == predicted else 'NOT met'}")
    return EXIT_OK if peak == predicted else EXIT_VALIDATION


def _parse_range(text: str) -> range:
    m = re.fullmatch(r"(\d+):(\d+)", text)
    if not m:
        raise UsageError(f"range must look like 1:4, got {text!r}")
    lo, hi = int(m[1]), int(m[2])
    if lo < 1 or hi < lo:
        raise UsageError(f"empty or invalid range {text!r}")
    return range(lo, hi + 1)


def cmd_sweep(args) -> int:
    ks = _parse_range(args.k_range)
    sizes = _parse_range(args.size_range)
    if args.machine == "power":
        rows = power_sweep_rows(ks, sizes)
    elif args.machine == "upower":
        rows = upower_sweep_rows(ks, sizes)
    else:
        raise UsageError("sweep supports the built-in machines power and upower")
    text = render_rows(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    if args.plot:
        if not args.out:
            raise UsageError("--plot needs --out to know where to put the figures")
        for path in render_figures(args.machine, rows, args.out):
            print(f"wrote figure {path}")
    return EXIT_OK


def cmd_foursquare(args) -> int:
    a, b, c, d = four_square(args.n)
    print(f"{a} {b} {c} {d}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qcasim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_machine_opts(p, need_input=True):
        p.add_argument("--machine", help="power, upower, or file:<path>")
        p.add_argument("--k", type=int, default=1, help="error-tuning parameter (default 1)")
        if need_input:
            p.add_argument("--input", help="input word, literal or counted (a2b4)")
        p.add_argument("--upower-min-exponent", type=int, choices=(0, 1), default=0,
                       help="smallest exponent n of the unary language (default 0)")

    p = sub.add_parser("validate", help="check operator completeness, totality, boundaries")
    add_machine_opts(p, need_input=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="exact analysis, exhaustive enumeration, or sampling")
    add_machine_opts(p)
    p.add_argument("--mode", choices=("exact", "enumerate", "sample"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trajectories", type=int, default=10_000)
    p.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    p.add_argument("--family", help="membership/bounds: upower | poly:c0,c1,... | "
                                    "powerbase:m | polypower:c0,..:m | iter:base:family")
    p.add_argument("--trace", help="write a per-step log of one extra trajectory here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("profile", help="counter space usage")
    add_machine_opts(p)
    p.add_argument("--mode", choices=("exact-schedule", "sampled"), default="exact-schedule")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("sweep", help="tabulate exact behavior over k and input size")
    p.add_argument("--machine", required=True, help="power or upower")
    p.add_argument("--k-range", default="1:4", help="inclusive k range, e.g. 1:4")
    p.add_argument("--size-range", default="1:6", help="inclusive m range, e.g. 1:6")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--plot", action="store_true", help="render figures next to --out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("foursquare", help="canonical four-square decomposition")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_foursquare)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "input", None) is None and args.command in ("run", "profile") \
                and not getattr(args, "family", None):
            raise UsageError(f"{args.command} needs --input")
        if getattr(args, "family", None) and getattr(args, "input", None) is None:
            raise UsageError("--family needs --input")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, FamilyError, ParameterError, MachineFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonHaltingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SpecificationError as exc:
        print(f"specification error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExitWithCode as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
