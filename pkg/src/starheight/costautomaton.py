"""Cost automata: counters with a hierarchical reset discipline.

Counters are numbered 0..n.  An operation on counter c implicitly resets
every counter below c; an increment leaves c's own count growing while a
reset clears c as well.  The value of a run is the largest count any
counter reaches at any point.  A word's value is the minimum over its
accepting runs, or infinity when none exists.

A transition carries a tuple of declared actions, applied left to right.
Hand-written automata use at most one action per transition (the file
format's none/inc/reset); machines produced by the star-height reduction
bundle several, since block-boundary bookkeeping and a consumed letter can
coincide on one transition.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from starheight.errors import BudgetError
from starheight.regexcore.automata import Dfa

INF = math.inf

INC = "inc"
RESET = "reset"


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str
    target: str
    actions: tuple = ()  # tuple of (kind, counter) pairs, applied in order

    def describe(self) -> str:
        if not self.actions:
            ops = "none"
        else:
            ops = ";".join(f"{kind}({c})" for kind, c in self.actions)
        return f"{self.source} {self.letter} {self.target} {ops}"


@dataclass(frozen=True)
class CostAutomaton:
    alphabet: tuple
    num_counters: int
    states: tuple
    initial: frozenset
    final: frozenset
    transitions: tuple

    def by_letter(self, letter: str) -> tuple:
        return tuple(t for t in self.transitions if t.letter == letter)

    def outgoing(self, state: str, letter: str) -> tuple:
        return tuple(
            t for t in self.transitions if t.source == state and t.letter == letter
        )

    def is_deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        seen = set()
        for t in self.transitions:
            key = (t.source, t.letter)
            if key in seen:
                return False
            seen.add(key)
        return True


def validate(auto: CostAutomaton) -> list[str]:
    """Structural checks; returns a list of problems, empty when fine."""
    errors = []
    states = set(auto.states)
    if len(states) != len(auto.states):
        errors.append("duplicate state names")
    if auto.num_counters < 1:
        errors.append("at least one counter is required")
    for q in auto.initial:
        if q not in states:
            errors.append(f"initial state {q!r} not declared")
    for q in auto.final:
        if q not in states:
            errors.append(f"final state {q!r} not declared")
    alphabet = set(auto.alphabet)
    for i, t in enumerate(auto.transitions):
        where = f"transition {i} ({t.source} {t.letter} {t.target})"
        if t.source not in states:
            errors.append(f"{where}: unknown source state")
        if t.target not in states:
            errors.append(f"{where}: unknown target state")
        if t.letter not in alphabet:
            errors.append(f"{where}: undeclared letter {t.letter!r}")
        for kind, c in t.actions:
            if kind not in (INC, RESET):
                errors.append(f"{where}: unknown action kind {kind!r}")
            elif not isinstance(c, int) or not 0 <= c < auto.num_counters:
                errors.append(f"{where}: counter {c} out of range")
    return errors


def apply_actions(counts: tuple, actions: tuple) -> tuple[tuple, int]:
    """Apply an action tuple to counter counts.

    Returns (new counts, peak), where peak is the largest count any counter
    shows at any moment while the actions run, including the start.
    """
    values = list(counts)
    peak = max(values, default=0)
    for kind, c in actions:
        if kind == INC:
            for d in range(c):
                values[d] = 0
            values[c] += 1
            if values[c] > peak:
                peak = values[c]
        else:  # reset
            for d in range(c + 1):
                values[d] = 0
    return tuple(values), peak


def transition_counter_events(t: Transition, num_counters: int) -> tuple:
    """Per counter: (seen an increment, seen a reset event).

    A reset event for counter c is an explicit reset of any counter >= c
    or an increment of any counter > c (the hierarchical cascade).
    """
    inc_seen = [False] * num_counters
    reset_seen = [False] * num_counters
    for kind, c in t.actions:
        if kind == INC:
            inc_seen[c] = True
            for d in range(c):
                reset_seen[d] = True
        else:
            for d in range(c + 1):
                reset_seen[d] = True
    return tuple(zip(inc_seen, reset_seen))


def run_value(auto: CostAutomaton, run) -> int:
    """Value of a run: the highest count reached by any counter.

    The run is a sequence of transitions; it must chain (each target equals
    the next source) and start in an initial state unless empty.
    """
    run = tuple(run)
    if run:
        if run[0].source not in auto.initial:
            raise ValueError(f"run starts at non-initial state {run[0].source!r}")
        for prev, nxt in zip(run, run[1:]):
            if prev.target != nxt.source:
                raise ValueError(
                    f"run breaks at {prev.target!r} -> {nxt.source!r}"
                )
    counts = (0,) * auto.num_counters
    worst = 0
    for t in run:
        counts, peak = apply_actions(counts, t.actions)
        if peak > worst:
            worst = peak
    return worst


def enumerate_runs(
    auto: CostAutomaton,
    word: str,
    accepting_only: bool = True,
    max_runs: int = 500_000,
):
    """Every run over the word (chained from an initial state), with values.

    Exhaustive by depth-first search; intended as a test oracle for short
    words.  Raises BudgetError when more than max_runs runs exist.
    """
    out = []
    outgoing: dict = {}
    for t in auto.transitions:
        outgoing.setdefault((t.source, t.letter), []).append(t)

    def extend(state: str, pos: int, prefix: list):
        if pos == len(word):
            if not accepting_only or state in auto.final:
                run = tuple(prefix)
                out.append((run, run_value(auto, run)))
                if len(out) > max_runs:
                    raise BudgetError(f"more than {max_runs} runs over {word!r}")
            return
        for t in outgoing.get((state, word[pos]), ()):
            prefix.append(t)
            extend(t.target, pos + 1, prefix)
            prefix.pop()

    for q in sorted(auto.initial):
        extend(q, 0, [])
    return out


def enumerate_accepting_runs(auto: CostAutomaton, word: str, max_runs: int = 500_000):
    return enumerate_runs(auto, word, accepting_only=True, max_runs=max_runs)


def _evaluate_deterministic(auto: CostAutomaton, word: str):
    (state,) = auto.initial
    counts = (0,) * auto.num_counters
    worst = 0
    table = {(t.source, t.letter): t for t in auto.transitions}
    for ch in word:
        t = table.get((state, ch))
        if t is None:
            return INF
        counts, peak = apply_actions(counts, t.actions)
        if peak > worst:
            worst = peak
        state = t.target
    return worst if state in auto.final else INF


def evaluate(auto: CostAutomaton, word: str):
    """The word's value: minimal value over accepting runs, or INF.

    Deterministic automata are simulated directly.  Otherwise this is a
    best-first search over (position, state, counter counts) minimizing the
    running maximum, which visits each configuration at its optimal cost.
    """
    if auto.is_deterministic():
        return _evaluate_deterministic(auto, word)

    outgoing: dict = {}
    for t in auto.transitions:
        outgoing.setdefault((t.source, t.letter), []).append(t)
    start_counts = (0,) * auto.num_counters
    heap = [(0, 0, q, start_counts) for q in sorted(auto.initial)]
    heapq.heapify(heap)
    best: dict = {}
    while heap:
        cost, pos, state, counts = heapq.heappop(heap)
        key = (pos, state, counts)
        if best.get(key, INF) < cost:
            continue
        best[key] = cost
        if pos == len(word):
            if state in auto.final:
                return cost
            continue
        for t in outgoing.get((state, word[pos]), ()):
            new_counts, peak = apply_actions(counts, t.actions)
            new_cost = max(cost, peak)
            new_key = (pos + 1, t.target, new_counts)
            if best.get(new_key, INF) > new_cost:
                best[new_key] = new_cost
                heapq.heappush(heap, (new_cost, pos + 1, t.target, new_counts))
    return INF


def language_words(lang: Dfa, max_len: int):
    """All words of the language up to the given length, shortest first."""
    frontier = [("", lang.initial)]
    while frontier:
        next_frontier = []
        for word, state in frontier:
            if state in lang.final:
                yield word
            if len(word) < max_len:
                for a in lang.alphabet:
                    next_frontier.append((word + a, lang.step(state, a)))
        frontier = next_frontier


def value_profile(auto: CostAutomaton, lang: Dfa, max_len: int) -> dict:
    """Per-length suprema of the word value over the language.

    Lengths at which the language has no word are absent from the result.
    Infinity appears when some word of that length has no accepting run.
    """
    profile: dict = {}
    for word in language_words(lang, max_len):
        value = evaluate(auto, word)
        length = len(word)
        if length not in profile or profile[length] < value:
            profile[length] = value
    return profile
