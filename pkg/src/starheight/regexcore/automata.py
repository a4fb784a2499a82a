"""Finite automata over finite words: NFA construction, subset
determinization, Moore minimization, and cycle rank."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from starheight.regexcore.syntax import (
    Concat,
    Empty,
    Epsilon,
    Letter,
    Regex,
    Star,
    Union,
    check_alphabet,
)


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; epsilon moves allowed during construction.

    transitions maps (state, symbol) to a frozenset of successors; epsilon
    moves use the symbol None.
    """

    alphabet: tuple[str, ...]
    states: frozenset[int]
    initial: frozenset[int]
    final: frozenset[int]
    transitions: dict

    def successors(self, state: int, symbol) -> frozenset[int]:
        return self.transitions.get((state, symbol), frozenset())

    def eps_closure(self, states) -> frozenset[int]:
        out = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for r in self.successors(q, None):
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def accepts(self, word: str) -> bool:
        current = self.eps_closure(self.initial)
        for ch in word:
            step = set()
            for q in current:
                step |= self.successors(q, ch)
            current = self.eps_closure(step)
        return bool(current & self.final)


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; transition function is total."""

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    final: frozenset[str]
    transitions: dict  # (state, symbol) -> state

    def step(self, state: str, symbol: str) -> str:
        return self.transitions[(state, symbol)]

    def run(self, word: str) -> str:
        q = self.initial
        for ch in word:
            q = self.step(q, ch)
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.final

    def check(self):
        """Raise ValueError on structural problems (used by file loading)."""
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate state names")
        if self.initial not in state_set:
            raise ValueError(f"initial state {self.initial!r} not declared")
        for q in self.final:
            if q not in state_set:
                raise ValueError(f"final state {q!r} not declared")
        for (q, a), r in self.transitions.items():
            if q not in state_set or r not in state_set:
                raise ValueError(f"transition {q!r} -{a}-> {r!r} uses unknown state")
            if a not in self.alphabet:
                raise ValueError(f"transition on undeclared symbol {a!r}")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.transitions:
                    raise ValueError(f"missing transition from {q!r} on {a!r}")


def regex_to_nfa(expr: Regex, alphabet) -> Nfa:
    """Thompson-style construction; language equals the expression's."""
    symbols = check_alphabet(alphabet)
    counter = [0]
    transitions: dict = {}

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def add(src: int, sym, dst: int):
        transitions.setdefault((src, sym), set()).add(dst)

    def build(e: Regex) -> tuple[int, int]:
        start, end = fresh(), fresh()
        match e:
            case Empty():
                pass
            case Epsilon():
                add(start, None, end)
            case Letter(symbol):
                add(start, symbol, end)
            case Union(left, right):
                for part in (left, right):
                    s, t = build(part)
                    add(start, None, s)
                    add(t, None, end)
            case Concat(left, right):
                s1, t1 = build(left)
                s2, t2 = build(right)
                add(start, None, s1)
                add(t1, None, s2)
                add(t2, None, end)
            case Star(inner):
                s, t = build(inner)
                add(start, None, end)
                add(start, None, s)
                add(t, None, s)
                add(t, None, end)
            case _:
                raise TypeError(f"not a regex node: {e!r}")
        return start, end

    start, end = build(expr)
    frozen = {key: frozenset(val) for key, val in transitions.items()}
    return Nfa(
        alphabet=symbols,
        states=frozenset(range(counter[0])),
        initial=frozenset({start}),
        final=frozenset({end}),
        transitions=frozen,
    )


def determinize_minimize(nfa: Nfa) -> Dfa:
    """Subset construction followed by Moore partition refinement.

    The result is the minimal complete DFA (a dead state is kept when the
    language is not total).  States are renamed q0, q1, ... in BFS order
    from the initial state.
    """
    alphabet = nfa.alphabet
    start = nfa.eps_closure(nfa.initial)
    subsets = {start: 0}
    order = [start]
    delta = {}
    index = 0
    while index < len(order):
        current = order[index]
        index += 1
        for a in alphabet:
            step = set()
            for q in current:
                step |= nfa.successors(q, a)
            nxt = nfa.eps_closure(frozenset(step))
            if nxt not in subsets:
                subsets[nxt] = len(order)
                order.append(nxt)
            delta[(subsets[current], a)] = subsets[nxt]
    n = len(order)
    accepting = [bool(order[i] & nfa.final) for i in range(n)]

    # Moore refinement to the coarsest congruence.
    block = [1 if accepting[i] else 0 for i in range(n)]
    while True:
        signatures = {}
        new_block = [0] * n
        for i in range(n):
            sig = (block[i],) + tuple(block[delta[(i, a)]] for a in alphabet)
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[i] = signatures[sig]
        if new_block == block:
            break
        block = new_block

    # Rename blocks in BFS order from the initial block for stable output.
    reps: dict[int, int] = {}
    bfs = [block[0]]
    reps[block[0]] = 0
    pos = 0
    while pos < len(bfs):
        b = bfs[pos]
        pos += 1
        i = block.index(b)
        for a in alphabet:
            nb = block[delta[(i, a)]]
            if nb not in reps:
                reps[nb] = len(reps)
                bfs.append(nb)
    names = {b: f"q{reps[b]}" for b in reps}
    states = tuple(names[b] for b in sorted(reps, key=lambda b: reps[b]))
    transitions = {}
    final = set()
    for b in reps:
        i = block.index(b)
        if accepting[i]:
            final.add(names[b])
        for a in alphabet:
            transitions[(names[b], a)] = names[block[delta[(i, a)]]]
    return Dfa(
        alphabet=alphabet,
        states=states,
        initial=names[block[0]],
        final=frozenset(final),
        transitions=transitions,
    )


def _rank_of_graph(vertices: frozenset, edges: frozenset) -> int:
    """Cycle rank of a digraph, by the standard recursion over SCCs."""

    @lru_cache(maxsize=None)
    def rank(vs: frozenset) -> int:
        es = frozenset((u, v) for (u, v) in edges if u in vs and v in vs)
        comps = _scc(vs, es)
        best = 0
        for comp in comps:
            internal = frozenset((u, v) for (u, v) in es if u in comp and v in comp)
            if not internal:
                continue
            if len(comp) == 1 and not any(u == v for (u, v) in internal):
                continue
            # Nontrivial strongly connected component.
            sub = 1 + min(rank(comp - {v}) for v in comp)
            best = max(best, sub)
        return best

    return rank(vertices)


def _scc(vertices: frozenset, edges: frozenset) -> list[frozenset]:
    """Strongly connected components (iterative Tarjan)."""
    adj: dict = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
    index_of: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    result = []
    counter = [0]

    for root in vertices:
        if root in index_of:
            continue
        work = [(root, iter(adj[root]))]
        index_of[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index_of:
                    index_of[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index_of[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(frozenset(comp))
    return result


def cycle_rank(nfa: Nfa) -> int:
    """Cycle rank of the transition digraph restricted to useful states
    (reachable from an initial state and co-reachable to a final one)."""
    fwd: dict = {}
    bwd: dict = {}
    edges = set()
    for (q, _sym), targets in nfa.transitions.items():
        for r in targets:
            fwd.setdefault(q, set()).add(r)
            bwd.setdefault(r, set()).add(q)
            edges.add((q, r))

    def reach(seed, adj):
        seen = set(seed)
        stack = list(seed)
        while stack:
            q = stack.pop()
            for r in adj.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    useful = reach(nfa.initial, fwd) & reach(nfa.final, bwd)
    trimmed = frozenset((u, v) for (u, v) in edges if u in useful and v in useful)
    return _rank_of_graph(frozenset(useful), trimmed)


def dfa_to_nfa(dfa: Dfa) -> Nfa:
    """View a DFA as an NFA (used for cycle rank of language inputs)."""
    transitions = {
        (q, a): frozenset({r}) for (q, a), r in dfa.transitions.items()
    }
    return Nfa(
        alphabet=dfa.alphabet,
        states=frozenset(dfa.states),
        initial=frozenset({dfa.initial}),
        final=dfa.final,
        transitions=transitions,
    )
