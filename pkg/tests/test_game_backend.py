"""Büchi determinization and parity solving, checked against oracles."""

import itertools
import random

import pytest

from starheight.errors import BudgetError
from starheight.game.buchi import (
    BuchiAutomaton,
    determinize_to_parity,
    nba_accepts_lasso,
    nba_union,
    shift_priorities,
)
from starheight.game.parity import (
    ParityGame,
    brute_force_regions,
    solve_parity_game,
    strategy_is_winning,
)


def nba_infinitely_many_a():
    states = ("rest", "hit")
    trans = {
        ("rest", "a"): frozenset(["hit"]),
        ("rest", "b"): frozenset(["rest"]),
        ("hit", "a"): frozenset(["hit"]),
        ("hit", "b"): frozenset(["rest"]),
    }
    return BuchiAutomaton(("a", "b"), states, frozenset(["rest"]), frozenset(["hit"]), trans)


def nba_finitely_many_a(letters=("a", "b")):
    x, other = letters[0], letters[1:]
    trans = {("wait", a): frozenset(["wait"]) for a in letters}
    for a in other:
        trans[("wait", a)] = frozenset(["wait", "calm"])
        trans[("calm", a)] = frozenset(["calm"])
    return BuchiAutomaton(
        tuple(letters),
        ("wait", "calm"),
        frozenset(["wait"]),
        frozenset(["calm"]),
        trans,
    )


def nba_infinitely_many_ab_factors():
    states = ("plain", "saw_a", "saw_ab")
    trans = {}
    for q in states:
        trans[(q, "a")] = frozenset(["saw_a"])
    trans[("saw_a", "b")] = frozenset(["saw_ab"])
    trans[("saw_ab", "b")] = frozenset(["plain"])
    trans[("plain", "b")] = frozenset(["plain"])
    return BuchiAutomaton(
        ("a", "b"), states, frozenset(["plain"]), frozenset(["saw_ab"]), trans
    )


def nba_empty_language():
    trans = {("q", "a"): frozenset(["q"]), ("q", "b"): frozenset(["q"])}
    return BuchiAutomaton(("a", "b"), ("q",), frozenset(["q"]), frozenset(), trans)


def lassos(alphabet, max_stem, max_cycle):
    for ls in range(max_stem + 1):
        for stem in itertools.product(alphabet, repeat=ls):
            for lc in range(1, max_cycle + 1):
                for cycle in itertools.product(alphabet, repeat=lc):
                    yield stem, cycle


def test_lasso_oracle_infinitely_many_a():
    nba = nba_infinitely_many_a()
    assert nba_accepts_lasso(nba, "", "a")
    assert nba_accepts_lasso(nba, "bbb", "ab")
    assert not nba_accepts_lasso(nba, "aaaa", "b")
    assert not nba_accepts_lasso(nba, "", "b")


def test_lasso_oracle_finitely_many_a():
    nba = nba_finitely_many_a()
    assert nba_accepts_lasso(nba, "", "b")
    assert nba_accepts_lasso(nba, "aaa", "b")
    assert not nba_accepts_lasso(nba, "", "ab")
    assert not nba_accepts_lasso(nba, "b", "ba")


def test_lasso_oracle_rejects_empty_language():
    nba = nba_empty_language()
    for stem, cycle in lassos(("a", "b"), 2, 2):
        assert not nba_accepts_lasso(nba, stem, cycle)


def test_lasso_needs_nonempty_cycle():
    with pytest.raises(ValueError):
        nba_accepts_lasso(nba_infinitely_many_a(), "a", "")


def test_union_accepts_either():
    everything = nba_union(
        [("inf", nba_infinitely_many_a()), ("fin", nba_finitely_many_a())]
    )
    for stem, cycle in lassos(("a", "b"), 2, 2):
        assert nba_accepts_lasso(everything, stem, cycle)


def test_union_rejects_alphabet_mismatch():
    with pytest.raises(ValueError):
        nba_union(
            [("x", nba_infinitely_many_a()), ("y", nba_finitely_many_a(("x", "y")))]
        )


@pytest.mark.parametrize(
    "factory",
    [
        nba_infinitely_many_a,
        nba_finitely_many_a,
        nba_infinitely_many_ab_factors,
        nba_empty_language,
    ],
)
def test_determinization_matches_lasso_oracle(factory):
    nba = factory()
    dpa = determinize_to_parity(nba)
    for stem, cycle in lassos(nba.alphabet, 3, 3):
        assert dpa.accepts_lasso(stem, cycle) == nba_accepts_lasso(nba, stem, cycle), (
            stem,
            cycle,
        )


def test_determinization_of_finitely_many_x_exhaustive():
    nba = nba_finitely_many_a(("x", "y"))
    dpa = determinize_to_parity(nba)
    for stem, cycle in lassos(("x", "y"), 4, 4):
        assert dpa.accepts_lasso(stem, cycle) == nba_accepts_lasso(nba, stem, cycle)


def test_determinization_is_total_with_positive_priorities():
    dpa = determinize_to_parity(nba_infinitely_many_a())
    for q in dpa.states:
        assert dpa.priority[q] >= 1
        for a in dpa.alphabet:
            assert (q, a) in dpa.transitions


def test_priority_shift_complements():
    nba = nba_infinitely_many_a()
    dpa = determinize_to_parity(nba)
    flipped = shift_priorities(dpa, 1)
    for stem, cycle in lassos(("a", "b"), 2, 3):
        assert flipped.accepts_lasso(stem, cycle) != dpa.accepts_lasso(stem, cycle)


def test_determinization_budget():
    with pytest.raises(BudgetError):
        determinize_to_parity(nba_infinitely_many_ab_factors(), max_states=2)


def random_nba(rng, num_states=4, alphabet=("a", "b")):
    states = tuple(f"s{i}" for i in range(num_states))
    trans = {}
    for q in states:
        for a in alphabet:
            targets = frozenset(p for p in states if rng.random() < 0.35)
            if targets:
                trans[(q, a)] = targets
    initial = frozenset(rng.sample(states, rng.randint(1, 2)))
    accepting = frozenset(p for p in states if rng.random() < 0.4)
    return BuchiAutomaton(alphabet, states, initial, accepting, trans)


def test_determinization_on_random_automata():
    rng = random.Random(20240817)
    for trial in range(60):
        nba = random_nba(rng)
        dpa = determinize_to_parity(nba, max_states=200_000)
        for stem, cycle in lassos(("a", "b"), 2, 3):
            assert dpa.accepts_lasso(stem, cycle) == nba_accepts_lasso(
                nba, stem, cycle
            ), (trial, stem, cycle)
        for _ in range(25):
            stem = [rng.choice("ab") for _ in range(rng.randint(0, 6))]
            cycle = [rng.choice("ab") for _ in range(rng.randint(1, 6))]
            assert dpa.accepts_lasso(stem, cycle) == nba_accepts_lasso(
                nba, stem, cycle
            ), (trial, stem, cycle)


# ---------------------------------------------------------------------------
# Parity games.
# ---------------------------------------------------------------------------


def game_from(owner, priority, edges):
    return ParityGame(tuple(owner), dict(owner), dict(priority), dict(edges))


def test_single_even_loop():
    game = ParityGame(("v",), {"v": 0}, {"v": 2}, {"v": ("v",)})
    win0, win1, strat0, strat1 = solve_parity_game(game)
    assert win0 == {"v"}
    assert not win1
    assert strat0 == {"v": "v"}


def test_single_odd_loop():
    game = ParityGame(("v",), {"v": 0}, {"v": 1}, {"v": ("v",)})
    win0, win1, _, strat1 = solve_parity_game(game)
    assert win1 == {"v"}
    assert not win0
    assert strat1 == {}  # no player-1 vertices to steer


def test_forced_two_cycle():
    game = ParityGame(
        ("lo", "hi"),
        {"lo": 0, "hi": 1},
        {"lo": 1, "hi": 2},
        {"lo": ("hi",), "hi": ("lo",)},
    )
    win0, win1, *_ = solve_parity_game(game)
    assert win0 == {"lo", "hi"}
    assert not win1


def test_choice_vertex_prefers_even_loop():
    edges = {"pick": ("even", "odd"), "even": ("even",), "odd": ("odd",)}
    priority = {"pick": 0, "even": 2, "odd": 1}
    for chooser, expect_zero in ((0, {"pick", "even"}), (1, {"even"})):
        owner = {"pick": chooser, "even": 0, "odd": 1}
        game = ParityGame(("pick", "even", "odd"), owner, priority, edges)
        win0, win1, strat0, strat1 = solve_parity_game(game)
        assert win0 == expect_zero
        if chooser == 0:
            assert strat0["pick"] == "even"
        else:
            assert strat1["pick"] == "odd"


def test_rejects_deadlocked_vertex():
    game = ParityGame(("v",), {"v": 0}, {"v": 2}, {"v": ()})
    with pytest.raises(ValueError):
        solve_parity_game(game)


def random_game(rng, max_vertices=7, max_priority=5):
    count = rng.randint(1, max_vertices)
    vertices = tuple(f"v{i}" for i in range(count))
    owner = {v: rng.randint(0, 1) for v in vertices}
    priority = {v: rng.randint(0, max_priority) for v in vertices}
    edges = {}
    for v in vertices:
        degree = rng.randint(1, min(3, count))
        edges[v] = tuple(rng.sample(vertices, degree))
    return ParityGame(vertices, owner, priority, edges)


def test_solver_matches_brute_force_on_random_games():
    rng = random.Random(987123)
    for trial in range(150):
        game = random_game(rng)
        win0, win1, strat0, strat1 = solve_parity_game(game)
        expect0, expect1 = brute_force_regions(game)
        assert win0 == expect0, (trial, game)
        assert win1 == expect1, (trial, game)
        assert win0.isdisjoint(win1)
        assert win0 | win1 == set(game.vertices)
        assert strategy_is_winning(game, 0, strat0, win0), trial
        assert strategy_is_winning(game, 1, strat1, win1), trial
