"""Finite-memory strategies represented as deterministic transducers.

A strategy here is a deterministic automaton over the input alphabet plus
an output attached to every memory state.  After the i-th input letter has
been fed in, the output of the state just reached is what the strategy
plays in round i.  For the player picking transition sets the outputs are
frozensets of transitions; for the player picking letters the outputs are
letters, in which case the strategy can also drive itself (see emit_word).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class FiniteMemoryStrategy:
    alphabet: tuple
    states: tuple
    initial: object
    transitions: dict = field(compare=False)  # (memory state, letter) -> memory state
    outputs: dict = field(compare=False)  # memory state -> played letter or frozenset

    def check(self) -> list[str]:
        """Structural checks; returns a list of problems, empty when fine."""
        problems = []
        known = set(self.states)
        if self.initial not in known:
            problems.append("initial memory state not declared")
        for q in self.states:
            if q not in self.outputs:
                problems.append(f"no output for memory state {q!r}")
            for a in self.alphabet:
                target = self.transitions.get((q, a))
                if target is None:
                    problems.append(f"missing transition from {q!r} on {a!r}")
                elif target not in known:
                    problems.append(f"transition from {q!r} on {a!r} leaves the state set")
        return problems

    @property
    def num_states(self) -> int:
        return len(self.states)

    def advance(self, state, letter):
        try:
            return self.transitions[(state, letter)]
        except KeyError:
            raise ValueError(
                f"memory automaton has no move from {state!r} on {letter!r}"
            ) from None

    def state_after(self, word) -> object:
        state = self.initial
        for a in word:
            state = self.advance(state, a)
        return state

    def output_after(self, word):
        return self.outputs[self.state_after(word)]

    def outputs_along(self, word) -> list:
        """Outputs after each nonempty prefix, in order."""
        state = self.initial
        played = []
        for a in word:
            state = self.advance(state, a)
            played.append(self.outputs[state])
        return played

    def emit_word(self, length: int) -> str:
        """Let a letter-valued strategy play against itself for `length` rounds."""
        state = self.initial
        out = []
        for _ in range(length):
            letter = self.outputs[state]
            out.append(letter)
            state = self.advance(state, letter)
        return "".join(out)
