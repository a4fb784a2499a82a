"""Transition monoid of a complete DFA, as the recognizing homomorphism.

Elements are state transformations (tuples indexed by state position).
Element 0 is always the identity, so the homomorphic image of the empty
word exists even when no word induces the identity transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

from starheight.regexcore.automata import Dfa


@dataclass(frozen=True)
class MonoidPresentation:
    """Finite monoid with a letter homomorphism and an accepting subset.

    elements are integers 0..size-1; mult is a flat table (row-major);
    letter_image maps each alphabet symbol to an element; accepting holds
    exactly the images of words in the language.
    """

    size: int
    identity: int
    mult: tuple  # mult[x * size + y] = product x . y
    letter_image: dict
    accepting: frozenset
    names: tuple  # display name per element

    def product(self, x: int, y: int) -> int:
        return self.mult[x * self.size + y]

    def image_of_word(self, word: str) -> int:
        e = self.identity
        for ch in word:
            e = self.product(e, self.letter_image[ch])
        return e

    def accepts_word(self, word: str) -> bool:
        return self.image_of_word(word) in self.accepting

    def elements(self) -> range:
        return range(self.size)

    def product_of_sets(self, xs, ys) -> frozenset:
        return frozenset(self.product(x, y) for x in xs for y in ys)

    def generated_submonoid(self, seed) -> frozenset:
        """Smallest submonoid containing the seed elements."""
        out = {self.identity} | set(seed)
        frontier = list(out)
        while frontier:
            x = frontier.pop()
            for y in list(out):
                for z in (self.product(x, y), self.product(y, x)):
                    if z not in out:
                        out.add(z)
                        frontier.append(z)
        return frozenset(out)

    def all_submonoids(self) -> list[frozenset]:
        """Every subset containing the identity that is closed under product.

        Intended for small monoids; the count is exponential in principle.
        """
        non_identity = [e for e in self.elements() if e != self.identity]
        out = []
        for mask in range(1 << len(non_identity)):
            subset = {self.identity}
            for bit, e in enumerate(non_identity):
                if mask >> bit & 1:
                    subset.add(e)
            closed = all(
                self.product(x, y) in subset for x in subset for y in subset
            )
            if closed:
                out.append(frozenset(subset))
        return out

    def check_laws(self):
        """Exhaustively verify associativity and the identity laws."""
        for x in self.elements():
            if self.product(self.identity, x) != x or self.product(x, self.identity) != x:
                raise AssertionError(f"identity law fails at {x}")
        for x in self.elements():
            for y in self.elements():
                for z in self.elements():
                    if self.product(self.product(x, y), z) != self.product(
                        x, self.product(y, z)
                    ):
                        raise AssertionError(f"associativity fails at {x},{y},{z}")


def transition_monoid(dfa: Dfa) -> MonoidPresentation:
    """Compute the transition monoid of a complete DFA.

    The accepting subset holds the transformations sending the initial
    state into a final state; since every element is the image of some
    word, this subset is exactly the image of the language.
    """
    positions = {q: i for i, q in enumerate(dfa.states)}
    n = len(dfa.states)

    def transform_of_letter(a: str) -> tuple:
        return tuple(positions[dfa.step(q, a)] for q in dfa.states)

    identity = tuple(range(n))
    transforms = {identity: 0}
    order = [identity]
    generators = {}
    for a in dfa.alphabet:
        t = transform_of_letter(a)
        if t not in transforms:
            transforms[t] = len(order)
            order.append(t)
        generators[a] = t

    def compose(f: tuple, g: tuple) -> tuple:
        # First f, then g (reading order: word uv acts as f then g).
        return tuple(g[f[i]] for i in range(n))

    index = 0
    while index < len(order):
        t = order[index]
        index += 1
        for a in dfa.alphabet:
            prod = compose(t, generators[a])
            if prod not in transforms:
                transforms[prod] = len(order)
                order.append(prod)

    size = len(order)
    mult = [0] * (size * size)
    for x, tx in enumerate(order):
        for y, ty in enumerate(order):
            mult[x * size + y] = transforms[compose(tx, ty)]

    initial_pos = positions[dfa.initial]
    final_pos = {positions[q] for q in dfa.final}
    accepting = frozenset(
        i for i, t in enumerate(order) if t[initial_pos] in final_pos
    )
    names = tuple(
        "1" if t == identity else "[" + " ".join(dfa.states[j] for j in t) + "]"
        for t in order
    )
    return MonoidPresentation(
        size=size,
        identity=0,
        mult=tuple(mult),
        letter_image={a: transforms[t] for a, t in generators.items()},
        accepting=accepting,
        names=names,
    )
