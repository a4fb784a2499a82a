"""Cost-automaton semantics: run values, evaluation, profiles, fixtures."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from starheight.costautomaton import (
    INC,
    INF,
    RESET,
    CostAutomaton,
    Transition,
    apply_actions,
    enumerate_accepting_runs,
    enumerate_runs,
    evaluate,
    run_value,
    validate,
    value_profile,
)
from starheight.fixtures import (
    block_and_count_automaton,
    longest_block_automaton,
    min_block_automaton,
)
from starheight.regexcore import determinize_minimize, parse_regex, regex_to_nfa

AB = ("a", "b")


def lang(text):
    return determinize_minimize(regex_to_nfa(parse_regex(text, AB), AB))


def words_up_to(max_len):
    frontier = [""]
    for w in frontier:
        yield w
        if len(w) < max_len:
            frontier.extend(w + ch for ch in AB)


def chain_run(auto, word, picker):
    """Build the unique run of a deterministic fixture by following letters."""
    table = {(t.source, t.letter): t for t in auto.transitions}
    (state,) = auto.initial
    run = []
    for ch in word:
        t = table[(state, ch)]
        run.append(t)
        state = t.target
    return run


def test_validate_fixtures_ok():
    for auto in (
        longest_block_automaton(),
        block_and_count_automaton(),
        min_block_automaton(),
    ):
        assert validate(auto) == []


def test_validate_catches_bad_counter():
    auto = CostAutomaton(
        alphabet=AB,
        num_counters=2,
        states=("s",),
        initial=frozenset({"s"}),
        final=frozenset({"s"}),
        transitions=(Transition("s", "a", "s", ((INC, 5),)),),
    )
    problems = validate(auto)
    assert any("out of range" in p for p in problems)


def test_validate_catches_undeclared_final():
    auto = CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("s",),
        initial=frozenset({"s"}),
        final=frozenset({"s", "ghost"}),
        transitions=(),
    )
    problems = validate(auto)
    assert any("ghost" in p for p in problems)


def test_run_value_empty_run():
    assert run_value(longest_block_automaton(), ()) == 0


def test_run_value_single_counter_blocks():
    auto = longest_block_automaton()
    run = chain_run(auto, "aabaa", None)
    # Blocks of increments: 2, then 2; reset in between.
    assert run_value(auto, run[:4]) == 2
    assert run_value(auto, run) == 2
    assert run_value(auto, chain_run(auto, "aab", None)) == 2


def test_run_value_hierarchy():
    auto = block_and_count_automaton()
    # inc(0), inc(0), inc(1), inc(0): counter 0 peaks at 2, counter 1 at 1,
    # and the inc on counter 1 resets counter 0 in between.
    run = chain_run(auto, "aaba", None)
    assert run_value(auto, run) == 2


def test_run_value_rejects_broken_chain():
    auto = min_block_automaton()
    t1 = auto.transitions[0]  # left -a-> left
    t2 = auto.transitions[3]  # middle -a-> middle
    with pytest.raises(ValueError):
        run_value(auto, (t1, t2))


def test_apply_actions_peak_tracks_transient_counts():
    counts, peak = apply_actions((3, 0), ((INC, 0), (RESET, 0)))
    assert counts == (0, 0)
    assert peak == 4


def test_enumerate_runs_min_block_aba():
    runs = enumerate_accepting_runs(min_block_automaton(), "aba")
    assert len(runs) == 2
    assert sorted(value for _, value in runs) == [1, 1]


def test_enumerate_runs_deterministic_single():
    runs = enumerate_accepting_runs(longest_block_automaton(), "abab")
    assert len(runs) == 1


def test_enumerate_runs_no_accepting():
    auto = min_block_automaton()
    # Words ending while only "left" is reachable do not exist; build an
    # automaton state with no accepting continuation instead.
    stuck = CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("s", "t"),
        initial=frozenset({"s"}),
        final=frozenset({"t"}),
        transitions=(Transition("s", "a", "s"),),
    )
    assert enumerate_accepting_runs(stuck, "a") == []
    assert evaluate(stuck, "a") == INF


def test_evaluate_fixture_examples():
    assert evaluate(longest_block_automaton(), "aabaaa") == 3
    assert evaluate(min_block_automaton(), "aabaaaaa") == 2
    assert evaluate(longest_block_automaton(), "") == 0


def test_evaluate_matches_enumeration_exhaustively():
    for auto in (
        longest_block_automaton(),
        block_and_count_automaton(),
        min_block_automaton(),
    ):
        for w in words_up_to(8):
            runs = enumerate_accepting_runs(auto, w)
            expected = min((value for _, value in runs), default=INF)
            assert evaluate(auto, w) == expected, (auto, w)


def test_evaluate_on_nondeterministic_compound_actions():
    # Nondeterministic two-way automaton with compound action tuples, to
    # exercise the search path rather than the deterministic shortcut.
    auto = CostAutomaton(
        alphabet=AB,
        num_counters=2,
        states=("s", "t"),
        initial=frozenset({"s"}),
        final=frozenset({"s", "t"}),
        transitions=(
            Transition("s", "a", "s", ((INC, 0), (INC, 0))),
            Transition("s", "a", "t", ((INC, 1),)),
            Transition("t", "a", "t", ((RESET, 0), (INC, 0))),
            Transition("t", "b", "s", ((RESET, 1),)),
        ),
    )
    for w in words_up_to(7):
        runs = enumerate_accepting_runs(auto, w)
        expected = min((value for _, value in runs), default=INF)
        assert evaluate(auto, w) == expected, w


def test_run_extension_monotone_without_reset():
    auto = longest_block_automaton()
    inc = auto.transitions[0]
    reset = auto.transitions[1]
    for word in words_up_to(6):
        run = chain_run(auto, word, None)
        base = run_value(auto, run)
        assert run_value(auto, run + [inc]) >= base
        assert run_value(auto, run + [reset]) >= 0


def test_value_profile_longest_block_over_a_star():
    profile = value_profile(longest_block_automaton(), lang("a*"), 6)
    assert profile == {n: n for n in range(7)}


def test_value_profile_longest_block_over_ab_star():
    profile = value_profile(longest_block_automaton(), lang("(ab)*"), 8)
    assert set(profile) == {0, 2, 4, 6, 8}
    assert all(value <= 1 for value in profile.values())


def test_value_profile_block_and_count_lower_bound():
    profile = value_profile(block_and_count_automaton(), lang("(a+b)*"), 9)
    for length, value in profile.items():
        assert value >= math.ceil(math.sqrt(length))
        assert value <= length


def test_block_and_count_sqrt_sandwich_per_word():
    # value = max(longest a-block, #b), so (value+1)^2 > |w| >= value.
    auto = block_and_count_automaton()
    for w in words_up_to(9):
        value = evaluate(auto, w)
        assert (value + 1) * (value + 1) > len(w), w
        assert value <= len(w), w


def test_block_and_count_value_formula():
    auto = block_and_count_automaton()
    for w in words_up_to(8):
        blocks = [len(part) for part in w.split("b")]
        expected = max(max(blocks), w.count("b"))
        assert evaluate(auto, w) == expected, w


def test_min_block_values_match_block_lengths():
    auto = min_block_automaton()
    for w in words_up_to(8):
        blocks = [len(part) for part in w.split("b")]
        assert evaluate(auto, w) == min(blocks), w
        values = sorted(value for _, value in enumerate_accepting_runs(auto, w))
        assert values == sorted(blocks), w
