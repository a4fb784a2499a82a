"""Monotone run scoring in base m+1, and the strategy it induces.

The score of a run packs, for each counter, the number of increments since
that counter last saw a reset into one digit of a base-(m+1) number, with
the highest counter as the most significant digit.  An increment that would
push a digit past m instead zeroes it and carries into the next digit up; a
carry falling off the top makes the score infinite, and infinity is
absorbing from then on.

Why bother: extending a run is monotone in the numeric order on scores
(the naive "infinite as soon as some counter passes m" rule is not), runs
whose value stays below the bound m keep a finite score, and any run with
a finite score has value at most m_prime(m, n).  That sandwich is what lets
the minimal-score bookkeeping below act as a winning strategy oracle for
the transition-picking player, independent of the game solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .costautomaton import INC, INF, RESET, CostAutomaton, validate
from .errors import BudgetError
from .game.strategy import FiniteMemoryStrategy


@dataclass(frozen=True)
class Score:
    """Digit vector in base m+1, least significant first; None means infinity."""

    m: int
    digits: tuple | None

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("bound m must be a natural number")
        if self.digits is not None:
            for d in self.digits:
                if not 0 <= d <= self.m:
                    raise ValueError(f"digit {d} out of range for base {self.m + 1}")

    @property
    def is_infinite(self) -> bool:
        return self.digits is None

    def numeric(self):
        if self.digits is None:
            return INF
        return sum(d * (self.m + 1) ** i for i, d in enumerate(self.digits))

    def _check_comparable(self, other: "Score"):
        if not isinstance(other, Score):
            raise TypeError(f"cannot compare Score with {type(other).__name__}")
        if other.m != self.m:
            raise ValueError("scores with different bounds are not comparable")

    def __le__(self, other):
        self._check_comparable(other)
        return self.numeric() <= other.numeric()

    def __lt__(self, other):
        self._check_comparable(other)
        return self.numeric() < other.numeric()

    def __ge__(self, other):
        return other.__le__(self)

    def __gt__(self, other):
        return other.__lt__(self)


def score_zero(m: int, n: int) -> Score:
    """The score of the empty run: n+1 zero digits."""
    if n < 0:
        raise ValueError("need at least one counter (n >= 0)")
    return Score(m, (0,) * (n + 1))


def score_infinity(m: int) -> Score:
    return Score(m, None)


def m_prime(m: int, n: int) -> int:
    """Largest value a finite score can denote: (m+1)^(n+1) - 1."""
    return (m + 1) ** (n + 1) - 1


def _atoms(action):
    """Normalize an action argument to a sequence of (kind, counter) atoms.

    Accepts None (no-op), a single atom pair, or an iterable of atoms, so
    callers can pass either one counter operation or a transition's whole
    action tuple.
    """
    if action is None:
        return ()
    if (
        isinstance(action, tuple)
        and len(action) == 2
        and isinstance(action[0], str)
    ):
        return (action,)
    return tuple(action)


def score_extend(score: Score, action, m: int | None = None) -> Score:
    """Extend a score by the counter actions of one transition."""
    if m is not None and m != score.m:
        raise ValueError(f"bound mismatch: score has m={score.m}, got m={m}")
    if score.digits is None:
        return score
    digits = list(score.digits)
    for kind, c in _atoms(action):
        if not 0 <= c < len(digits):
            raise ValueError(f"counter {c} out of range")
        if kind == RESET:
            for d in range(c + 1):
                digits[d] = 0
        elif kind == INC:
            for d in range(c):
                digits[d] = 0
            pos = c
            while True:
                if digits[pos] < score.m:
                    digits[pos] += 1
                    break
                digits[pos] = 0
                pos += 1
                if pos == len(digits):
                    return Score(score.m, None)
        else:
            raise ValueError(f"unknown action kind {kind!r}")
    return Score(score.m, tuple(digits))


def score_run(run, m: int, n: int) -> Score:
    """Left fold of score_extend over a run's transitions."""
    score = score_zero(m, n)
    for t in run:
        score = score_extend(score, t.actions)
        if score.digits is None:
            break
    return score


def score_run_single_counter(run, m: int) -> Score:
    """Shortcut for one counter, where the cutoff at m is already monotone.

    With a single counter the general construction degenerates to "count
    increments since the last reset, give up past m", so this is both a
    fast path and an independent check on the digit machinery at n = 0.
    """
    count = 0
    for t in run:
        for kind, c in t.actions:
            if c != 0:
                raise ValueError("single-counter scoring on a multi-counter run")
            if kind == RESET:
                count = 0
            elif kind == INC:
                count += 1
                if count > m:
                    return Score(m, None)
            else:
                raise ValueError(f"unknown action kind {kind!r}")
    return Score(m, (count,))


# ---------------------------------------------------------------------------
# The strategy induced by minimal scores.
#
# Memory after reading a_1 ... a_i is the pair (D, a_i) where D maps each
# automaton state to the minimal finite score over runs reading
# a_1 ... a_{i-1} and ending there (states admitting none are dropped).
# That pair determines both the next memory state and the output: the set
# of transitions on a_i that complete some minimal-score run.  Monotonicity
# of score_extend is what makes the per-state minimum a sound summary.
# ---------------------------------------------------------------------------

_START = ("start",)


def _canonical(score_map: dict) -> frozenset:
    return frozenset(score_map.items())


def _step_scores(auto: CostAutomaton, m: int, score_map: dict, letter: str) -> dict:
    new: dict = {}
    for t in auto.by_letter(letter):
        base = score_map.get(t.source)
        if base is None:
            continue
        ext = score_extend(Score(m, base), t.actions)
        if ext.digits is None:
            continue
        cur = new.get(t.target)
        if cur is None or ext.numeric() < Score(m, cur).numeric():
            new[t.target] = ext.digits
    return new


def _last_transitions(auto: CostAutomaton, m: int, score_map: dict, letter: str):
    """Transitions on `letter` that finish some minimal-score run."""
    after = _step_scores(auto, m, score_map, letter)
    chosen = []
    for t in auto.by_letter(letter):
        base = score_map.get(t.source)
        if base is None:
            continue
        ext = score_extend(Score(m, base), t.actions)
        if ext.digits is not None and ext.digits == after[t.target]:
            chosen.append(t)
    return frozenset(chosen)


def optimal_run_strategy(
    auto: CostAutomaton, m: int, max_states: int = 200_000
) -> FiniteMemoryStrategy:
    """Strategy that always plays the last transitions of minimal-score runs.

    The returned memory automaton reads input letters; its output after
    a_1 ... a_i is a frozenset of transitions of `auto`.  Restricting runs
    to the chosen sets keeps exactly the minimal-score runs alive, which
    bounds every surviving run's value by m_prime(m, n).
    """
    problems = validate(auto)
    if problems:
        raise ValueError("invalid cost automaton: " + "; ".join(problems))
    if m < 0:
        raise ValueError("bound m must be a natural number")
    n = auto.num_counters - 1
    zero = score_zero(m, n)
    start_map = {q: zero.digits for q in auto.initial}

    states = [_START]
    transitions: dict = {}
    outputs: dict = {_START: frozenset()}
    maps = {_START: start_map}
    queue = [_START]
    seen = {_START}
    while queue:
        mem = queue.pop(0)
        if mem is _START or mem == _START:
            current = start_map
        else:
            prev_map, prev_letter = maps[mem]
            current = _step_scores(auto, m, prev_map, prev_letter)
        for a in auto.alphabet:
            nxt = (_canonical(current), a)
            transitions[(mem, a)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_states:
                    raise BudgetError(
                        "optimal-run strategy memory exceeded "
                        f"{max_states} states"
                    )
                states.append(nxt)
                maps[nxt] = (current, a)
                outputs[nxt] = _last_transitions(auto, m, current, a)
                queue.append(nxt)
    return FiniteMemoryStrategy(
        alphabet=tuple(auto.alphabet),
        states=tuple(states),
        initial=_START,
        transitions=transitions,
        outputs=outputs,
    )
