"""Small hand-built cost automata used across the test suite and docs.

Each models a simple counting behavior over the alphabet {a, b}:

* longest_block_automaton: value = length of the longest block of a's.
* block_and_count_automaton: value = max(longest a-block, number of b's).
* min_block_automaton: accepting runs realize each a-block length, so the
  word value is the length of the shortest a-block.
"""

from __future__ import annotations

from starheight.costautomaton import CostAutomaton, INC, RESET, Transition

AB = ("a", "b")


def longest_block_automaton() -> CostAutomaton:
    """One state; a increments counter 0, b resets it."""
    return CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("s",),
        initial=frozenset({"s"}),
        final=frozenset({"s"}),
        transitions=(
            Transition("s", "a", "s", ((INC, 0),)),
            Transition("s", "b", "s", ((RESET, 0),)),
        ),
    )


def block_and_count_automaton() -> CostAutomaton:
    """One state, two counters; a increments counter 0, b increments
    counter 1 (which resets counter 0 through the hierarchy)."""
    return CostAutomaton(
        alphabet=AB,
        num_counters=2,
        states=("s",),
        initial=frozenset({"s"}),
        final=frozenset({"s"}),
        transitions=(
            Transition("s", "a", "s", ((INC, 0),)),
            Transition("s", "b", "s", ((INC, 1),)),
        ),
    )


def min_block_automaton() -> CostAutomaton:
    """Three states; nondeterminism picks which a-block gets counted.

    A run waits on the left state, moves to the middle on some b (or starts
    there), counts one block of a's, and leaves for the right state on the
    next b.  On a^(n1) b a^(n2) b ... b a^(nk) the accepting run values are
    exactly n1..nk.
    """
    return CostAutomaton(
        alphabet=AB,
        num_counters=1,
        states=("left", "middle", "right"),
        initial=frozenset({"left", "middle"}),
        final=frozenset({"middle", "right"}),
        transitions=(
            Transition("left", "a", "left"),
            Transition("left", "b", "left"),
            Transition("left", "b", "middle"),
            Transition("middle", "a", "middle", ((INC, 0),)),
            Transition("middle", "b", "right"),
            Transition("right", "a", "right"),
            Transition("right", "b", "right"),
        ),
    )


def all_fixtures() -> dict:
    return {
        "longest-block": longest_block_automaton(),
        "block-and-count": block_and_count_automaton(),
        "min-block": min_block_automaton(),
    }
