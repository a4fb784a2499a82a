"""Max-parity games and a recursive solver with strategy extraction.

Player 0 wins a play when the highest priority seen infinitely often is
even, player 1 when it is odd.  Every vertex must have at least one
successor.  The solver is the classical recursive one; it returns the full
winning regions together with memoryless strategies on them.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ParityGame:
    vertices: tuple
    owner: dict = field(compare=False)  # vertex -> 0 or 1
    priority: dict = field(compare=False)  # vertex -> int >= 0
    edges: dict = field(compare=False)  # vertex -> tuple of successors

    def check(self) -> list[str]:
        problems = []
        known = set(self.vertices)
        for v in self.vertices:
            if self.owner.get(v) not in (0, 1):
                problems.append(f"vertex {v!r} has no owner")
            if not isinstance(self.priority.get(v), int) or self.priority[v] < 0:
                problems.append(f"vertex {v!r} has no usable priority")
            succ = self.edges.get(v, ())
            if not succ:
                problems.append(f"vertex {v!r} has no successors")
            for u in succ:
                if u not in known:
                    problems.append(f"edge {v!r} -> {u!r} leaves the game")
        return problems


def _attractor(vertices, owner, edges, player, targets):
    """Player's attractor to `targets` within `vertices`.

    Returns (attractor set, move choice for player-owned vertices pulled
    in by an edge into the previous layer).
    """
    vertices = set(vertices)
    preds = {v: [] for v in vertices}
    out_degree = {}
    for v in vertices:
        succ = [u for u in edges[v] if u in vertices]
        out_degree[v] = len(succ)
        for u in succ:
            preds[u].append(v)
    inside = set(t for t in targets if t in vertices)
    moves = {}
    pending = list(inside)
    remaining = dict(out_degree)
    while pending:
        u = pending.pop()
        for v in preds[u]:
            if v in inside:
                continue
            if owner[v] == player:
                inside.add(v)
                moves[v] = u
                pending.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    inside.add(v)
                    pending.append(v)
    return inside, moves


def solve_parity_game(game: ParityGame):
    """Winning regions and memoryless strategies for both players.

    Returns (win0, win1, strategy0, strategy1): the regions partition the
    vertices; strategy_i maps each player-i vertex inside win_i to a
    chosen successor.
    """
    problems = game.check()
    if problems:
        raise ValueError("invalid game: " + "; ".join(problems))
    owner = game.owner
    priority = game.priority
    edges = game.edges
    floor = 2 * len(game.vertices) + 1000
    if sys.getrecursionlimit() < floor:
        sys.setrecursionlimit(floor)

    def recurse(vertices):
        if not vertices:
            return set(), set(), {}, {}
        top = max(priority[v] for v in vertices)
        mine = top % 2
        other = 1 - mine
        crown = {v for v in vertices if priority[v] == top}
        region, pull = _attractor(vertices, owner, edges, mine, crown)
        rest = vertices - region
        sub = recurse(rest)
        win_mine, win_other = (sub[0], sub[1]) if mine == 0 else (sub[1], sub[0])
        strat_mine, strat_other = (sub[2], sub[3]) if mine == 0 else (sub[3], sub[2])
        if not win_other:
            # Everything is winning for the top-priority player: attract to
            # the crown, and on the crown itself any move inside works.
            strategy = dict(strat_mine)
            strategy.update(pull)
            for v in crown:
                if owner[v] == mine and v not in strategy:
                    strategy[v] = next(u for u in edges[v] if u in vertices)
            if mine == 0:
                return set(vertices), set(), strategy, {}
            return set(), set(vertices), {}, strategy
        trap, pull_other = _attractor(vertices, owner, edges, other, win_other)
        sub2 = recurse(vertices - trap)
        win0_2, win1_2, strat0_2, strat1_2 = sub2
        win_mine_2 = win0_2 if mine == 0 else win1_2
        win_other_2 = win1_2 if mine == 0 else win0_2
        strat_mine_2 = strat0_2 if mine == 0 else strat1_2
        strat_other_2 = strat1_2 if mine == 0 else strat0_2
        full_other = win_other_2 | trap
        strategy_other = dict(strat_other)  # winning inside the old trap core
        strategy_other.update(pull_other)
        strategy_other.update(strat_other_2)
        if mine == 0:
            return win_mine_2, full_other, strat_mine_2, strategy_other
        return full_other, win_mine_2, strategy_other, strat_mine_2

    win0, win1, strat0, strat1 = recurse(set(game.vertices))
    return win0, win1, strat0, strat1


# ---------------------------------------------------------------------------
# Verification helpers, also used as the test oracle.
# ---------------------------------------------------------------------------


def _forced_graph(game: ParityGame, player: int, strategy: dict, region):
    """Successor lists once `player` commits to `strategy` inside region."""
    adjacency = {}
    for v in region:
        if game.owner[v] == player:
            choice = strategy.get(v)
            adjacency[v] = [choice] if choice is not None else []
        else:
            adjacency[v] = list(game.edges[v])
    return adjacency


def _has_bad_cycle(adjacency, start, parity: int, priority: dict, region):
    """Can the free player drive the play from `start` into a cycle whose
    maximum priority has the given parity, staying inside region?"""
    region = set(region)
    reach = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for u in adjacency.get(v, ()):
            if u in region and u not in reach:
                reach.add(u)
                queue.append(u)
    for w in reach:
        if priority[w] % 2 != parity:
            continue
        # Cycle through w using only priorities <= priority[w].
        cap = priority[w]
        allowed = {v for v in reach if priority[v] <= cap}
        if w not in allowed:
            continue
        seen = set()
        queue = [u for u in adjacency.get(w, ()) if u in allowed]
        hit = False
        while queue:
            v = queue.pop()
            if v == w:
                hit = True
                break
            if v in seen:
                continue
            seen.add(v)
            queue.extend(u for u in adjacency.get(v, ()) if u in allowed)
        if hit:
            return True
    return False


def strategy_is_winning(game: ParityGame, player: int, strategy: dict, region) -> bool:
    """Check a memoryless strategy by exhausting the opponent's options.

    True when, with `player` committed to `strategy`, no play starting in
    `region` can reach a cycle whose top priority favors the opponent.
    The check is only meaningful if region is closed under the dynamics,
    which holds for solver output.
    """
    region = set(region)
    for v in region:
        if game.owner[v] == player and v not in strategy:
            return False
    adjacency = _forced_graph(game, player, strategy, region)
    for v in region:
        for u in adjacency[v]:
            if u not in region:
                return False  # play escapes the claimed region
    opponent_parity = (1 - player) % 2
    return not any(
        _has_bad_cycle(adjacency, v, opponent_parity, game.priority, region)
        for v in region
    )


def brute_force_regions(game: ParityGame):
    """Winning regions by enumerating one player's memoryless strategies.

    For each vertex: player 0 wins iff some memoryless 0-strategy leaves
    player 1 without a reachable odd-topped cycle.  Exponential; only for
    cross-checking the solver on small games.
    """
    zero_vertices = [v for v in game.vertices if game.owner[v] == 0]
    win0 = set()
    choices = [game.edges[v] for v in zero_vertices]

    def assignments(i):
        if i == len(zero_vertices):
            yield {}
            return
        for rest in assignments(i + 1):
            for pick in choices[i]:
                combo = dict(rest)
                combo[zero_vertices[i]] = pick
                yield combo

    everything = set(game.vertices)
    for strategy in assignments(0):
        adjacency = _forced_graph(game, 0, strategy, everything)
        for v in game.vertices:
            if v in win0:
                continue
            if not _has_bad_cycle(adjacency, v, 1, game.priority, everything):
                win0.add(v)
        if len(win0) == len(game.vertices):
            break
    win1 = everything - win0
    return win0, win1
