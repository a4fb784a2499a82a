"""Artifact file formats: round trips, rejection cases, DOT output."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starheight.costautomaton import INC, RESET, CostAutomaton, Transition
from starheight.errors import FileFormatError
from starheight.fileio import (
    Lasso,
    detect_kind,
    dot_artifact,
    dot_cost_automaton,
    dot_dfa,
    dot_strategy,
    parse_cost_automaton,
    parse_dfa,
    parse_lasso,
    parse_regex_file,
    parse_strategy,
    print_cost_automaton,
    print_dfa,
    print_lasso,
    print_strategy,
    read_artifact,
    read_language,
)
from starheight.fixtures import all_fixtures, longest_block_automaton
from starheight.game.limitedness import (
    extracted_bound,
    simulate_strategy_b,
    solve_limitedness,
)
from starheight.game.strategy import FiniteMemoryStrategy
from starheight.regexcore.automata import determinize_minimize, regex_to_nfa
from starheight.regexcore.syntax import parse_regex

AB = ("a", "b")


def lang(expr):
    return determinize_minimize(regex_to_nfa(parse_regex(expr, AB), AB))


# ---------------------------------------------------------------------------
# DFA files.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("expr", ["(ab)*", "a*", "ab+ba", "empty", "eps", "(a+b)*"])
def test_dfa_round_trip(expr):
    d = lang(expr)
    text = print_dfa(d)
    assert parse_dfa(text) == d
    assert print_dfa(parse_dfa(text)) == text


def test_dfa_parse_tolerates_blank_lines_and_comments():
    d = lang("a*")
    text = "# a comment\n\n" + print_dfa(d).replace("\n", "\n\n")
    assert parse_dfa(text) == d


@pytest.mark.parametrize(
    "mangle",
    [
        lambda t: t.replace("dfa\n", "automaton\n"),
        lambda t: t.replace("initial: ", "initial: q0 "),
        lambda t: t + "trans: q0 a q0\n",
        lambda t: t.replace("trans: q0 a", "trans: q9 a"),
        lambda t: t.replace("alphabet: a b", "alphabet: ab b"),
        lambda t: "".join(line + "\n" for line in t.splitlines() if " a " not in line),
        lambda t: t.replace("states:", "nodes:"),
    ],
)
def test_dfa_parse_rejects_damage(mangle):
    text = print_dfa(lang("(ab)*"))
    with pytest.raises(FileFormatError):
        parse_dfa(mangle(text))


def test_empty_file_rejected_everywhere():
    for parser in (parse_dfa, parse_cost_automaton, parse_strategy, parse_lasso):
        with pytest.raises(FileFormatError):
            parser("")
    with pytest.raises(FileFormatError):
        detect_kind("   \n\n")


@st.composite
def random_dfas(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    states = tuple(f"q{i}" for i in range(n))
    transitions = {}
    for q in states:
        for a in AB:
            transitions[(q, a)] = states[draw(st.integers(0, n - 1))]
    final = frozenset(q for q in states if draw(st.booleans()))
    return Dfa_like(states, transitions, final)


def Dfa_like(states, transitions, final):
    from starheight.regexcore.automata import Dfa

    return Dfa(
        alphabet=AB,
        states=states,
        initial=states[0],
        final=final,
        transitions=transitions,
    )


@settings(max_examples=60, deadline=None)
@given(random_dfas())
def test_dfa_round_trip_random(d):
    text = print_dfa(d)
    assert parse_dfa(text) == d
    assert print_dfa(parse_dfa(text)) == text


# ---------------------------------------------------------------------------
# Cost-automaton files.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(all_fixtures()))
def test_cost_round_trip(name):
    auto = all_fixtures()[name]
    text = print_cost_automaton(auto)
    assert parse_cost_automaton(text) == auto
    assert print_cost_automaton(parse_cost_automaton(text)) == text


def test_cost_transition_order_is_preserved():
    # Strategy files name transitions by position, so order is contract.
    auto = all_fixtures()["block-and-count"]
    parsed = parse_cost_automaton(print_cost_automaton(auto))
    assert parsed.transitions == auto.transitions


@pytest.mark.parametrize(
    "mangle",
    [
        lambda t: t.replace("counters: 1", "counters: 0"),
        lambda t: t.replace("counters: 1", "counters: one"),
        lambda t: t.replace("inc(0)", "inc(3)"),
        lambda t: t.replace("inc(0)", "bump(0)"),
        lambda t: t.replace("inc(0)", ""),
        lambda t: t.replace("costautomaton", "dfa"),
    ],
)
def test_cost_parse_rejects_damage(mangle):
    text = print_cost_automaton(longest_block_automaton())
    with pytest.raises(FileFormatError):
        parse_cost_automaton(mangle(text))


def test_compound_actions_are_not_printable():
    auto = CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("p",),
        initial=frozenset(["p"]),
        final=frozenset(["p"]),
        transitions=(
            Transition("p", "a", "p", ((INC, 0), (INC, 0))),
            Transition("p", "b", "p", ((RESET, 0),)),
        ),
    )
    with pytest.raises(ValueError, match="one action slot"):
        print_cost_automaton(auto)


def test_multiple_initial_states_round_trip():
    auto = CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("p", "q"),
        initial=frozenset(["p", "q"]),
        final=frozenset(["q"]),
        transitions=(
            Transition("p", "a", "q", ((INC, 0),)),
            Transition("q", "b", "p", ()),
        ),
    )
    text = print_cost_automaton(auto)
    assert parse_cost_automaton(text) == auto
    assert "initial: p q" in text
    assert "trans: q b p none" in text


# ---------------------------------------------------------------------------
# Strategy files.
# ---------------------------------------------------------------------------


def _limited_pair():
    auto = longest_block_automaton()
    d = lang("(ab)*")
    answer = solve_limitedness(auto, d)
    assert answer.verdict == "limited"
    return auto, d, answer


def test_strategy_round_trip_and_replay():
    auto, d, answer = _limited_pair()
    text = print_strategy(answer.strategy_b, auto)
    parsed = parse_strategy(text, auto)
    assert print_strategy(parsed, auto) == text
    again = parse_strategy(print_strategy(parsed, auto), auto)
    assert again.states == parsed.states
    assert again.transitions == parsed.transitions
    assert again.outputs == parsed.outputs
    # The file carries a usable strategy, not just a picture of one.
    bound = extracted_bound(answer, auto)
    for word in ("", "ab", "abab", "ababab"):
        assert simulate_strategy_b(parsed, auto, d, word, bound).ok


def test_strategy_parse_without_automaton_keeps_names():
    auto, _, answer = _limited_pair()
    text = print_strategy(answer.strategy_b, auto)
    raw = parse_strategy(text)
    played = set().union(*raw.outputs.values())
    assert played and all(isinstance(t, str) and t.startswith("t") for t in played)


def test_letter_strategy_is_not_a_strategy_file():
    lasso_like = FiniteMemoryStrategy(
        alphabet=AB,
        states=(0,),
        initial=0,
        transitions={(0, "a"): 0, (0, "b"): 0},
        outputs={0: "a"},
    )
    with pytest.raises(ValueError, match="lasso"):
        print_strategy(lasso_like, longest_block_automaton())


@pytest.mark.parametrize(
    "mangle",
    [
        lambda t: t.replace("out: m0 -> {}", "out: m0 -> t0"),
        lambda t: t.replace("out: m0 -> {}", "out: m0 -> {t99}"),
        lambda t: t.replace("out: m0 -> {}", "out: m0 -> {x1}"),
        lambda t: t.replace("out: m0 -> {}", ""),
        lambda t: t.replace("strategy\n", "dfa\n"),
    ],
)
def test_strategy_parse_rejects_damage(mangle):
    auto, _, answer = _limited_pair()
    text = print_strategy(answer.strategy_b, auto)
    with pytest.raises(FileFormatError):
        parse_strategy(mangle(text), auto)


# ---------------------------------------------------------------------------
# Lasso files.
# ---------------------------------------------------------------------------


def test_lasso_round_trip():
    for lasso in (Lasso(AB, "", "a"), Lasso(AB, "ab", "ba"), Lasso(("a",), "a", "a")):
        text = print_lasso(lasso)
        assert parse_lasso(text) == lasso
        assert print_lasso(parse_lasso(text)) == text


def test_lasso_rejects_empty_cycle_and_foreign_letters():
    with pytest.raises(FileFormatError):
        parse_lasso("lasso\nalphabet: a b\nstem: a\ncycle:\n")
    with pytest.raises(FileFormatError):
        parse_lasso("lasso\nalphabet: a b\nstem: a\ncycle: c\n")


# ---------------------------------------------------------------------------
# Dispatch.
# ---------------------------------------------------------------------------


def test_detect_kind_covers_all_artifacts():
    auto, _, answer = _limited_pair()
    samples = {
        "dfa": print_dfa(lang("a*")),
        "costautomaton": print_cost_automaton(auto),
        "strategy": print_strategy(answer.strategy_b, auto),
        "lasso": print_lasso(Lasso(AB, "", "a")),
        "regex": "alphabet: a b\n(a*b*)*\n",
    }
    for kind, text in samples.items():
        assert detect_kind(text) == kind
        got_kind, value = read_artifact(text)
        assert got_kind == kind
        assert value is not None
    with pytest.raises(FileFormatError):
        detect_kind("arena\nstuff\n")


def test_read_language_accepts_both_forms():
    via_regex = read_language("alphabet: a b\n(ab)*\n")
    via_file = read_language(print_dfa(lang("(ab)*")))
    assert via_regex == via_file


def test_regex_file_shape_is_strict():
    with pytest.raises(FileFormatError):
        parse_regex_file("alphabet: a b\n")
    with pytest.raises(FileFormatError):
        parse_regex_file("alphabet: a b\na*\nb*\n")


# ---------------------------------------------------------------------------
# DOT output.
# ---------------------------------------------------------------------------


def _node_lines(dot):
    return [
        line
        for line in dot.splitlines()
        if "shape=" in line and "->" not in line
    ]


def test_dot_cost_single_state_fixture():
    dot = dot_cost_automaton(longest_block_automaton())
    assert dot.startswith("digraph")
    assert len(_node_lines(dot)) == 1
    assert '"s" -> "s" [label="a/inc(0)"];' in dot
    assert '"s" -> "s" [label="b/reset(0)"];' in dot


def test_dot_dfa_marks_final_states():
    dot = dot_dfa(lang("(ab)*"))
    assert "doublecircle" in dot
    assert dot.count("->") == 6


def test_dot_strategy_is_bipartite():
    auto, _, answer = _limited_pair()
    dot = dot_strategy(answer.strategy_b, auto)
    assert "shape=box" in dot and "shape=ellipse" in dot
    assert "style=dashed" in dot
    # One output box per memory state, dashed-linked.
    boxes = [line for line in dot.splitlines() if "shape=box" in line]
    assert len(boxes) == answer.strategy_b.num_states
    # The raw-name parse renders the same picture.
    text = print_strategy(answer.strategy_b, auto)
    assert dot_strategy(parse_strategy(text)) == dot


def test_dot_artifact_dispatch():
    auto = longest_block_automaton()
    assert dot_artifact(print_cost_automaton(auto)) == dot_cost_automaton(auto)
    assert dot_artifact("alphabet: a b\nab+ba\n") == dot_dfa(lang("ab+ba"))
    lasso_dot = dot_artifact(print_lasso(Lasso(AB, "a", "ba")))
    assert lasso_dot.count("->") == 3
