"""Command-line front end.

Subcommands cover the pipeline end to end: `star-height` decides the
height of a language, `limitedness` decides boundedness of a cost
automaton over a language, `evaluate` and `value-profile` measure word
values directly, `simulate-strategy` replays an exported strategy
against an adversarial word supply, and `export-dot` renders any
artifact file for graphviz.

Reports go to stdout one `key: value` per line so scripts can grep
them.  Verdicts always come with a certificate file, either a strategy
(limited, and for the deciding height of `star-height`) or a lasso
(unlimited); `--cert-out` picks the path, the default sits next to the
first input as `<input>.cert`.

Exit codes: 0 success, 2 unparseable input, 3 budget exceeded,
4 alphabet mismatch between the inputs.
"""

from __future__ import annotations

import argparse
import sys
import time

from starheight.costautomaton import INF, evaluate, language_words, value_profile
from starheight.errors import AlphabetMismatchError, BudgetError, FileFormatError
from starheight.fileio import (
    Lasso,
    dot_artifact,
    parse_cost_automaton,
    parse_strategy,
    print_lasso,
    print_strategy,
    read_language,
)
from starheight.game.limitedness import (
    extracted_bound,
    simulate_strategy_b,
    solve_limitedness,
)
from starheight.reduction.height_automaton import build_height_automaton
from starheight.regexcore.automata import cycle_rank, dfa_to_nfa
from starheight.regexcore.monoid import transition_monoid
from starheight.regexcore.syntax import RegexParseError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_ALPHABET = 4


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _emit(key: str, value) -> None:
    print(f"{key}: {value}")


def _echo(args, names) -> None:
    parts = [args.command] + [getattr(args, name) for name in names]
    _emit("command", " ".join(str(p) for p in parts))


def _cert_path(args, default_source: str) -> str:
    if args.cert_out:
        return args.cert_out
    return default_source + ".cert"


def _write_cert(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    _emit("certificate", path)


def _check_word(word: str, alphabet) -> None:
    for ch in word:
        if ch not in alphabet:
            raise AlphabetMismatchError(
                f"letter {ch!r} is not in the automaton alphabet "
                f"{' '.join(alphabet)}"
            )


def _monoid_within_budget(lang, budget: int):
    monoid = transition_monoid(lang)
    if monoid.size > budget:
        raise BudgetError(
            f"monoid has {monoid.size} elements, over the budget {budget}"
        )
    return monoid


def _fmt_value(value) -> str:
    return "inf" if value == INF else str(int(value))


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_star_height(args) -> int:
    started = time.perf_counter()
    lang = read_language(_read_file(args.language))
    _echo(args, ["language"])
    _emit("language-states", len(lang.states))
    monoid = _monoid_within_budget(lang, args.budget_monoid)
    _emit("monoid-size", monoid.size)
    cap = cycle_rank(dfa_to_nfa(lang))
    _emit("cycle-rank-cap", cap)
    answer = None
    for h in range(cap + 1):
        machine = build_height_automaton(monoid, h, max_states=args.budget_states)
        candidate = solve_limitedness(machine, lang, budget_states=args.budget_states)
        _emit(f"height-{h}", candidate.verdict)
        if candidate.verdict == "limited":
            answer = candidate
            break
    if answer is None:
        # The cycle-rank height is always definable; reaching this line
        # means the reduction or the solver broke, not the input.
        raise RuntimeError("no height up to the cycle-rank cap verified")
    _emit("star-height", h)
    if "arena_vertices" in answer.details:
        _emit("arena-vertices", answer.details["arena_vertices"])
    _emit("bound", extracted_bound(answer, machine))
    _write_cert(
        _cert_path(args, args.language),
        print_strategy(answer.strategy_b, machine),
    )
    _emit("wall-time-ms", int((time.perf_counter() - started) * 1000))
    return EXIT_OK


def cmd_limitedness(args) -> int:
    started = time.perf_counter()
    auto = parse_cost_automaton(_read_file(args.automaton))
    lang = read_language(_read_file(args.language))
    _echo(args, ["automaton", "language"])
    _emit("automaton-states", len(auto.states))
    _emit("counters", auto.num_counters)
    _emit("monoid-size", _monoid_within_budget(lang, args.budget_monoid).size)
    answer = solve_limitedness(auto, lang, budget_states=args.budget_states)
    if "arena_vertices" in answer.details:
        _emit("arena-vertices", answer.details["arena_vertices"])
    _emit("verdict", answer.verdict)
    cert = _cert_path(args, args.automaton)
    if answer.verdict == "limited":
        _emit("bound", extracted_bound(answer, auto))
        _write_cert(cert, print_strategy(answer.strategy_b, auto))
    else:
        stem, cycle = answer.details.get("pump", ("", auto.alphabet[0]))
        _emit("lasso-stem", stem)
        _emit("lasso-cycle", cycle)
        _write_cert(cert, print_lasso(Lasso(auto.alphabet, stem, cycle)))
    _emit("wall-time-ms", int((time.perf_counter() - started) * 1000))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    auto = parse_cost_automaton(_read_file(args.automaton))
    _check_word(args.word, auto.alphabet)
    _echo(args, ["automaton", "word"])
    _emit("value", _fmt_value(evaluate(auto, args.word)))
    return EXIT_OK


def cmd_value_profile(args) -> int:
    started = time.perf_counter()
    auto = parse_cost_automaton(_read_file(args.automaton))
    lang = read_language(_read_file(args.language))
    if set(auto.alphabet) != set(lang.alphabet):
        raise AlphabetMismatchError(
            "automaton and language alphabets differ: "
            f"{' '.join(auto.alphabet)} vs {' '.join(lang.alphabet)}"
        )
    _echo(args, ["automaton", "language"])
    _emit("max-len", args.max_len)
    profile = value_profile(auto, lang, args.max_len)
    for length in sorted(profile):
        _emit(f"value-{length}", _fmt_value(profile[length]))
    _emit("wall-time-ms", int((time.perf_counter() - started) * 1000))
    return EXIT_OK


def cmd_simulate_strategy(args) -> int:
    started = time.perf_counter()
    auto = parse_cost_automaton(_read_file(args.automaton))
    strategy = parse_strategy(_read_file(args.strategy), auto)
    lang = read_language(_read_file(args.language))
    if set(auto.alphabet) != set(lang.alphabet) or set(strategy.alphabet) != set(
        auto.alphabet
    ):
        raise AlphabetMismatchError("strategy, automaton and language alphabets differ")
    bound = args.bound
    if bound is None:
        bound = len(auto.states) * strategy.num_states
    _echo(args, ["strategy", "automaton", "language"])
    _emit("bound", bound)
    _emit("max-len", args.max_len)
    checked = 0
    failures = 0
    for word in language_words(lang, args.max_len):
        report = simulate_strategy_b(strategy, auto, lang, word, bound)
        checked += 1
        if not report.ok:
            failures += 1
            _emit(f"violation-{failures}", f"{word or 'eps'} ({report.describe()})")
    _emit("words-checked", checked)
    _emit("violations", failures)
    _emit("result", "ok" if failures == 0 else "violation")
    _emit("wall-time-ms", int((time.perf_counter() - started) * 1000))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    dot = dot_artifact(_read_file(args.artifact))
    sys.stdout.write(dot)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Wiring.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starheight",
        description="Star height of regular languages via limitedness games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def budgets(p):
        p.add_argument(
            "--budget-states",
            type=int,
            default=200_000,
            help="largest construction (machine or arena) to attempt",
        )
        p.add_argument(
            "--budget-monoid",
            type=int,
            default=5_000,
            help="largest transition monoid to accept",
        )

    p = sub.add_parser("star-height", help="decide the star height of a language")
    p.add_argument("language", help="regex or dfa file")
    p.add_argument("--cert-out", help="where to write the witness strategy")
    budgets(p)
    p.set_defaults(handler=cmd_star_height)

    p = sub.add_parser("limitedness", help="decide boundedness over a language")
    p.add_argument("automaton", help="cost-automaton file")
    p.add_argument("language", help="regex or dfa file")
    p.add_argument("--cert-out", help="where to write the certificate")
    budgets(p)
    p.set_defaults(handler=cmd_limitedness)

    p = sub.add_parser("evaluate", help="value of one word")
    p.add_argument("automaton", help="cost-automaton file")
    p.add_argument("word", help="the word; empty string for the empty word")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("value-profile", help="per-length value suprema over a language")
    p.add_argument("automaton", help="cost-automaton file")
    p.add_argument("language", help="regex or dfa file")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(handler=cmd_value_profile)

    p = sub.add_parser("simulate-strategy", help="audit a strategy file on all short words")
    p.add_argument("strategy", help="strategy file")
    p.add_argument("automaton", help="cost-automaton file")
    p.add_argument("language", help="regex or dfa file")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument(
        "--bound",
        type=int,
        help="counter bound to audit against (default: states times memory)",
    )
    p.set_defaults(handler=cmd_simulate_strategy)

    p = sub.add_parser("export-dot", help="render an artifact file as DOT")
    p.add_argument("artifact", help="dfa, costautomaton, strategy, lasso or regex file")
    p.set_defaults(handler=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (FileFormatError, RegexParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AlphabetMismatchError as exc:
        print(f"error: alphabet mismatch: {exc}", file=sys.stderr)
        return EXIT_ALPHABET


if __name__ == "__main__":
    raise SystemExit(main())
