"""Nondeterministic Büchi automata and determinization to parity automata.

The determinization runs Safra's tree construction and then flattens the
resulting Rabin condition into a parity condition with an index appearance
record: a permutation of the node names, reordered so that names whose
node just died move to the front.  Everything is max-parity with even good:
a run of the parity automaton is accepting when the highest priority it
sees infinitely often is even.

Acceptance of ultimately periodic words is decidable directly on the
nondeterministic automaton by graph search, which is what the tests use to
cross-check the determinization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BudgetError


@dataclass(frozen=True)
class BuchiAutomaton:
    alphabet: tuple
    states: tuple
    initial: frozenset
    accepting: frozenset
    transitions: dict = field(compare=False)  # (state, letter) -> frozenset

    def post(self, state, letter) -> frozenset:
        return self.transitions.get((state, letter), frozenset())

    def check(self) -> list[str]:
        problems = []
        known = set(self.states)
        letters = set(self.alphabet)
        if len(known) != len(self.states):
            problems.append("duplicate state names")
        for bucket, label in ((self.initial, "initial"), (self.accepting, "accepting")):
            for q in bucket:
                if q not in known:
                    problems.append(f"{label} state {q!r} not declared")
        for (q, a), targets in self.transitions.items():
            if q not in known:
                problems.append(f"transition from unknown state {q!r}")
            if a not in letters:
                problems.append(f"transition on unknown letter {a!r}")
            for p in targets:
                if p not in known:
                    problems.append(f"transition into unknown state {p!r}")
        return problems


def nba_union(parts) -> BuchiAutomaton:
    """Disjoint union of Büchi automata over a shared alphabet.

    `parts` is a sequence of (tag, automaton) pairs; states are wrapped as
    (tag, state).  Accepts the union language.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("need at least one automaton")
    alphabet = parts[0][1].alphabet
    for _, nba in parts:
        if nba.alphabet != alphabet:
            raise ValueError("alphabet mismatch in union")
    states = []
    initial = set()
    accepting = set()
    transitions = {}
    for tag, nba in parts:
        states.extend((tag, q) for q in nba.states)
        initial.update((tag, q) for q in nba.initial)
        accepting.update((tag, q) for q in nba.accepting)
        for (q, a), targets in nba.transitions.items():
            transitions[((tag, q), a)] = frozenset((tag, p) for p in targets)
    return BuchiAutomaton(
        alphabet=alphabet,
        states=tuple(states),
        initial=frozenset(initial),
        accepting=frozenset(accepting),
        transitions=transitions,
    )


def _reachable_product(nba: BuchiAutomaton, cycle, starts):
    """Adjacency of the (state, cycle position) product, restricted to
    nodes reachable from `starts`."""
    length = len(cycle)
    adjacency = {}
    stack = list(starts)
    seen = set(starts)
    while stack:
        node = stack.pop()
        q, i = node
        targets = []
        for p in nba.post(q, cycle[i]):
            nxt = (p, (i + 1) % length)
            targets.append(nxt)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
        adjacency[node] = targets
    return adjacency


def _sccs(adjacency):
    """Tarjan's algorithm, iterative."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    counter = [0]
    out = []

    for root in adjacency:
        if root in index:
            continue
        work = [(root, iter(adjacency[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adjacency[succ])))
                    advanced = True
                    break
                elif succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if not advanced:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    comp = []
                    while True:
                        member = stack.pop()
                        on_stack.remove(member)
                        comp.append(member)
                        if member == node:
                            break
                    out.append(comp)
    return out


def nba_accepts_lasso(nba: BuchiAutomaton, stem, cycle) -> bool:
    """Does the automaton accept stem followed by cycle repeated forever?

    Decided without determinization: unwind the cycle against the state
    space and look for a reachable strongly connected component that can
    loop while touching an accepting state.
    """
    cycle = list(cycle)
    if not cycle:
        raise ValueError("cycle must be nonempty")
    current = set(nba.initial)
    for a in stem:
        current = {p for q in current for p in nba.post(q, a)}
        if not current:
            return False
    starts = {(q, 0) for q in current}
    adjacency = _reachable_product(nba, cycle, starts)
    for comp in _sccs(adjacency):
        members = set(comp)
        nontrivial = len(comp) > 1 or any(
            node in adjacency[node] for node in comp
        )
        if not nontrivial:
            continue
        if any(q in nba.accepting for q, _ in comp):
            return True
    return False


# ---------------------------------------------------------------------------
# Safra trees.
# ---------------------------------------------------------------------------


class _Node:
    __slots__ = ("name", "label", "children")

    def __init__(self, name, label, children=None):
        self.name = name
        self.label = set(label)
        self.children = children if children is not None else []


def _freeze(node) -> tuple:
    return (
        node.name,
        frozenset(node.label),
        tuple(_freeze(c) for c in node.children),
    )


def _thaw(frozen) -> _Node:
    name, label, children = frozen
    return _Node(name, set(label), [_thaw(c) for c in children])


def _preorder(node):
    yield node
    for child in node.children:
        for sub in _preorder(child):
            yield sub


def _safra_step(tree, letter, nba: BuchiAutomaton, pool: int):
    """One transition of the Safra construction.

    Returns (next tree, red names, green names).  Red marks names whose
    node was removed this step; green marks names whose node's label
    became exactly the union of its children, which were then pruned.
    """
    root = _thaw(tree)
    reds = set()
    greens = set()

    # Branch: states seen in the accepting set sprout a youngest child.
    # Births are not red events: a name reborn forever keeps dying in
    # between, so death events alone already separate the acceptance
    # classes, and the record shuffles less without birth marks.
    in_use = {v.name for v in _preorder(root)}
    free = [name for name in range(pool) if name not in in_use]
    free.reverse()  # pop() hands out the smallest first
    for node in list(_preorder(root)):
        hit = node.label & nba.accepting
        if hit:
            if not free:
                raise RuntimeError("Safra name pool exhausted")
            name = free.pop()
            node.children.append(_Node(name, hit))

    # Subset step on every label.
    for node in _preorder(root):
        node.label = {p for q in node.label for p in nba.post(q, letter)}

    # Horizontal merge: a state stays only in the oldest sibling holding it.
    def claim(node):
        taken = set()
        for child in node.children:
            child.label &= node.label - taken
            taken |= child.label
            claim(child)

    claim(root)

    # Drop empty nodes (the root stays even when empty: it is the dead state).
    def sweep(node):
        kept = []
        for child in node.children:
            if child.label:
                kept.append(child)
                sweep(child)
            else:
                for gone in _preorder(child):
                    reds.add(gone.name)
        node.children = kept

    sweep(root)

    # Vertical merge: a node covered by its children flashes green and
    # loses its whole subtree.
    def flash(node):
        if node.children:
            union = set()
            for child in node.children:
                union |= child.label
            if union == node.label:
                for child in node.children:
                    for gone in _preorder(child):
                        reds.add(gone.name)
                node.children = []
                greens.add(node.name)
                return
        for child in node.children:
            flash(child)

    flash(root)
    return _freeze(root), frozenset(reds), frozenset(greens - reds)


def _record_step(perm: tuple, reds, greens):
    """Advance the index appearance record and emit a max-parity priority.

    Positions are 1-based from the front.  A death at position e yields
    2e+1, a green flash at position g yields 2g; the step's priority is
    the maximum over all events, or 1 when nothing happened.  Names that
    died move to the front, everyone else keeps their order.
    """
    priority = 1
    for idx, name in enumerate(perm):
        if name in reds:
            priority = max(priority, 2 * (idx + 1) + 1)
        if name in greens:
            priority = max(priority, 2 * (idx + 1))
    if reds:
        front = [name for name in perm if name in reds]
        rest = [name for name in perm if name not in reds]
        perm = tuple(front + rest)
    return perm, priority


@dataclass(frozen=True)
class DetParityAutomaton:
    alphabet: tuple
    states: tuple
    initial: object
    transitions: dict = field(compare=False)  # (state, letter) -> state
    priority: dict = field(compare=False)  # state -> int

    def step(self, state, letter):
        try:
            return self.transitions[(state, letter)]
        except KeyError:
            raise ValueError(f"no transition from {state!r} on {letter!r}") from None

    def run(self, word):
        state = self.initial
        for a in word:
            state = self.step(state, a)
        return state

    def max_priority(self) -> int:
        return max(self.priority.values(), default=1)

    def accepts_lasso(self, stem, cycle) -> bool:
        """Acceptance of stem followed by cycle repeated forever."""
        cycle = list(cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        state = self.run(stem)
        # Iterate whole cycles until the state at the seam repeats.
        seen = {}
        trace = [state]
        while state not in seen:
            seen[state] = len(trace) - 1
            for a in cycle:
                state = self.step(state, a)
                trace.append(state)
        start = seen[state]
        recurring = trace[start + 1 :]
        return max(self.priority[s] for s in recurring) % 2 == 0


def determinize_to_parity(
    nba: BuchiAutomaton, max_states: int = 500_000
) -> DetParityAutomaton:
    """Deterministic max-parity automaton for the same ω-language.

    States are triples (Safra tree, name record, priority of the step that
    entered the state); only the reachable part is built.  Raises
    BudgetError past max_states states.
    """
    problems = nba.check()
    if problems:
        raise ValueError("invalid automaton: " + "; ".join(problems))
    pool = 2 * len(nba.states) + 2
    root = _Node(0, set(nba.initial))
    start = (_freeze(root), tuple(range(pool)), 1)
    transitions = {}
    priority = {start: 1}
    queue = [start]
    seen = {start}
    while queue:
        state = queue.pop(0)
        tree, perm, _ = state
        for a in nba.alphabet:
            next_tree, reds, greens = _safra_step(tree, a, nba, pool)
            next_perm, pri = _record_step(perm, reds, greens)
            target = (next_tree, next_perm, pri)
            transitions[(state, a)] = target
            if target not in seen:
                seen.add(target)
                if len(seen) > max_states:
                    raise BudgetError(
                        f"determinization exceeded {max_states} states"
                    )
                priority[target] = pri
                queue.append(target)
    return DetParityAutomaton(
        alphabet=tuple(nba.alphabet),
        states=tuple(seen),
        initial=start,
        transitions=transitions,
        priority=priority,
    )


def shift_priorities(dpa: DetParityAutomaton, amount: int = 1) -> DetParityAutomaton:
    """Add `amount` to every priority; shifting by an odd amount
    complements the accepted ω-language."""
    return DetParityAutomaton(
        alphabet=dpa.alphabet,
        states=dpa.states,
        initial=dpa.initial,
        transitions=dpa.transitions,
        priority={q: p + amount for q, p in dpa.priority.items()},
    )
