"""Line-based artifact files and DOT rendering.

Every artifact lives in a small plain-text format announced by its first
token: `dfa`, `costautomaton`, `strategy`, or `lasso`.  A language can
also be given as a regex file, which has no marker and starts directly
with its `alphabet: a b` header followed by one expression line.

Printing is canonical (fixed ordering, single spaces), so parse-print-
parse is the identity on parsed values and print-parse-print is the
identity on printed text.  Strategy files name the cost automaton's
transitions t0, t1, ... in the order of its `trans:` lines; parsing a
strategy therefore needs that automaton to resolve the names, and
without it the raw names are kept, which is enough for DOT output.

Only single-action cost automata are printable: the file grammar has one
action slot per transition.  Machines built by the height reduction can
bundle several actions on a transition and are refused with an error
rather than silently flattened.
"""

from __future__ import annotations

from dataclasses import dataclass

from starheight.costautomaton import INC, RESET, CostAutomaton, Transition, validate
from starheight.errors import FileFormatError
from starheight.game.strategy import FiniteMemoryStrategy
from starheight.regexcore.automata import Dfa, determinize_minimize, regex_to_nfa
from starheight.regexcore.syntax import parse_regex


@dataclass(frozen=True)
class Lasso:
    """Unlimitedness certificate: pump the cycle and values grow."""

    alphabet: tuple
    stem: str
    cycle: str


# ---------------------------------------------------------------------------
# Shared line machinery.
# ---------------------------------------------------------------------------


def _lines(text: str):
    """Meaningful (number, content) pairs: blank and # lines dropped."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((number, line))
    return out


def _fields(lines, number_by_key, path_kind):
    """Collect `key: rest` lines into a dict; trans/out keep every line."""
    header = {}
    multi = {"trans": [], "out": []}
    for number, line in lines:
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FileFormatError(f"expected 'key: value', got {line!r}", number)
        if key in multi:
            multi[key].append((number, rest.strip()))
        elif key in header:
            raise FileFormatError(f"duplicate {key!r} line", number)
        elif key not in number_by_key:
            raise FileFormatError(f"unknown key {key!r} in a {path_kind} file", number)
        else:
            header[key] = (number, rest.strip())
    for key in number_by_key:
        if key not in header:
            raise FileFormatError(f"missing {key!r} line in a {path_kind} file")
    return header, multi["trans"], multi["out"]


def _names(rest: str, number, what, allow_empty=False) -> tuple:
    tokens = tuple(rest.split())
    if not tokens and not allow_empty:
        raise FileFormatError(f"empty {what} list", number)
    if len(set(tokens)) != len(tokens):
        raise FileFormatError(f"duplicate name in {what} list", number)
    return tokens


def _alphabet(rest: str, number) -> tuple:
    letters = _names(rest, number, "alphabet")
    for a in letters:
        if len(a) != 1 or not a.isalnum():
            raise FileFormatError(
                f"letters are single alphanumerics, got {a!r}", number
            )
    return letters


def _known(token: str, declared, number, what):
    if token not in declared:
        raise FileFormatError(f"undeclared {what} {token!r}", number)
    return token


def detect_kind(text: str) -> str:
    """First-token dispatch; regex files are recognized by their header."""
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    number, first = lines[0]
    token = first.split()[0].rstrip(":")
    if token in ("dfa", "costautomaton", "strategy", "lasso"):
        return token
    if token == "alphabet":
        return "regex"
    raise FileFormatError(f"unrecognized artifact header {first!r}", number)


def _expect_header(lines, kind):
    number, first = lines[0]
    if first != kind:
        raise FileFormatError(f"expected a line saying {kind!r}", number)
    return lines[1:]


# ---------------------------------------------------------------------------
# DFA files.
# ---------------------------------------------------------------------------


def parse_dfa(text: str) -> Dfa:
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    body = _expect_header(lines, "dfa")
    header, trans, out = _fields(
        body, ("alphabet", "states", "initial", "final"), "dfa"
    )
    if out:
        raise FileFormatError("'out:' lines belong to strategy files", out[0][0])
    alphabet = _alphabet(header["alphabet"][1], header["alphabet"][0])
    states = _names(header["states"][1], header["states"][0], "state")
    initial = _names(header["initial"][1], header["initial"][0], "initial state")
    if len(initial) != 1:
        raise FileFormatError(
            "a dfa has exactly one initial state", header["initial"][0]
        )
    final = _names(header["final"][1], header["final"][0], "final state", allow_empty=True)
    state_set = set(states)
    for q in final:
        _known(q, state_set, header["final"][0], "final state")
    _known(initial[0], state_set, header["initial"][0], "initial state")
    transitions = {}
    for number, rest in trans:
        parts = rest.split()
        if len(parts) != 3:
            raise FileFormatError("expected 'trans: q a q2'", number)
        q, a, q2 = parts
        _known(q, state_set, number, "state")
        _known(q2, state_set, number, "state")
        _known(a, set(alphabet), number, "letter")
        if (q, a) in transitions:
            raise FileFormatError(f"second transition from {q} on {a}", number)
        transitions[(q, a)] = q2
    for q in states:
        for a in alphabet:
            if (q, a) not in transitions:
                raise FileFormatError(
                    f"incomplete dfa: no transition from {q} on {a}"
                )
    return Dfa(
        alphabet=alphabet,
        states=states,
        initial=initial[0],
        final=frozenset(final),
        transitions=transitions,
    )


def print_dfa(dfa: Dfa) -> str:
    lines = [
        "dfa",
        "alphabet: " + " ".join(dfa.alphabet),
        "states: " + " ".join(dfa.states),
        "initial: " + dfa.initial,
        ("final: " + " ".join(q for q in dfa.states if q in dfa.final)).rstrip(),
    ]
    for q in dfa.states:
        for a in dfa.alphabet:
            lines.append(f"trans: {q} {a} {dfa.transitions[(q, a)]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cost-automaton files.
# ---------------------------------------------------------------------------


def _parse_action(token: str, num_counters: int, number) -> tuple:
    if token == "none":
        return ()
    for kind in (INC, RESET):
        if token.startswith(kind + "(") and token.endswith(")"):
            inner = token[len(kind) + 1 : -1]
            if not inner.isdigit():
                raise FileFormatError(f"counter index expected in {token!r}", number)
            c = int(inner)
            if not 0 <= c < num_counters:
                raise FileFormatError(
                    f"counter {c} out of range 0..{num_counters - 1}", number
                )
            return ((kind, c),)
    raise FileFormatError(
        f"action must be none, inc(c) or reset(c), got {token!r}", number
    )


def parse_cost_automaton(text: str) -> CostAutomaton:
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    body = _expect_header(lines, "costautomaton")
    header, trans, out = _fields(
        body, ("alphabet", "counters", "states", "initial", "final"), "costautomaton"
    )
    if out:
        raise FileFormatError("'out:' lines belong to strategy files", out[0][0])
    alphabet = _alphabet(header["alphabet"][1], header["alphabet"][0])
    counters_text = header["counters"][1]
    if not counters_text.isdigit() or int(counters_text) < 1:
        raise FileFormatError(
            "counters: takes a positive integer", header["counters"][0]
        )
    num_counters = int(counters_text)
    states = _names(header["states"][1], header["states"][0], "state")
    state_set = set(states)
    initial = _names(header["initial"][1], header["initial"][0], "initial state")
    final = _names(header["final"][1], header["final"][0], "final state", allow_empty=True)
    for q in initial + final:
        _known(q, state_set, None, "state")
    transitions = []
    for number, rest in trans:
        parts = rest.split()
        if len(parts) != 4:
            raise FileFormatError("expected 'trans: q a q2 action'", number)
        q, a, q2, action = parts
        _known(q, state_set, number, "state")
        _known(q2, state_set, number, "state")
        _known(a, set(alphabet), number, "letter")
        transitions.append(
            Transition(q, a, q2, _parse_action(action, num_counters, number))
        )
    auto = CostAutomaton(
        alphabet=alphabet,
        num_counters=num_counters,
        states=states,
        initial=frozenset(initial),
        final=frozenset(final),
        transitions=tuple(transitions),
    )
    problems = validate(auto)
    if problems:
        raise FileFormatError("; ".join(problems))
    return auto


def _action_token(t: Transition) -> str:
    if not t.actions:
        return "none"
    if len(t.actions) > 1:
        raise ValueError(
            "the file format has one action slot per transition; "
            f"{t.source} {t.letter} {t.target} carries {len(t.actions)} "
            "(reduction-built machines are not printable)"
        )
    kind, c = t.actions[0]
    return f"{kind}({c})"


def print_cost_automaton(auto: CostAutomaton) -> str:
    order = {q: i for i, q in enumerate(auto.states)}
    lines = [
        "costautomaton",
        "alphabet: " + " ".join(auto.alphabet),
        f"counters: {auto.num_counters}",
        "states: " + " ".join(auto.states),
        "initial: " + " ".join(sorted(auto.initial, key=order.get)),
        ("final: " + " ".join(sorted(auto.final, key=order.get))).rstrip(),
    ]
    # Transition order is meaningful: strategy files name these t0, t1, ...
    for t in auto.transitions:
        lines.append(f"trans: {t.source} {t.letter} {t.target} {_action_token(t)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Strategy files.
# ---------------------------------------------------------------------------


def _transition_ids(auto: CostAutomaton) -> dict:
    return {t: f"t{i}" for i, t in enumerate(auto.transitions)}


def print_strategy(strategy: FiniteMemoryStrategy, auto: CostAutomaton) -> str:
    """Memory automaton plus an output table of transition names.

    Memory states get canonical names m0, m1, ... in declaration order, so
    arbitrary tuple-shaped states from the game export become printable.
    Letter-valued strategies have no transition sets to name; those are
    exported as lasso files instead.
    """
    ids = _transition_ids(auto)
    rename = {q: f"m{i}" for i, q in enumerate(strategy.states)}
    out_lines = []
    for q in strategy.states:
        played = strategy.outputs[q]
        if isinstance(played, str):
            raise ValueError(
                "letter-valued strategies are exported as lasso files, "
                "not strategy files"
            )
        tokens = []
        for t in played:
            if t not in ids:
                raise ValueError(
                    f"output transition {t.describe()!r} is not in the automaton"
                )
            tokens.append(ids[t])
        tokens.sort(key=lambda s: int(s[1:]))
        out_lines.append(f"out: {rename[q]} -> {{{','.join(tokens)}}}")
    lines = [
        "strategy",
        "alphabet: " + " ".join(strategy.alphabet),
        "states: " + " ".join(rename[q] for q in strategy.states),
        "initial: " + rename[strategy.initial],
    ]
    for q in strategy.states:
        for a in strategy.alphabet:
            lines.append(f"trans: {rename[q]} {a} {rename[strategy.transitions[(q, a)]]}")
    return "\n".join(lines + out_lines) + "\n"


def parse_strategy(text: str, auto: CostAutomaton | None = None) -> FiniteMemoryStrategy:
    """Read a strategy file; with the automaton, outputs become transitions.

    Without the automaton the outputs stay as the raw t-names from the
    file, which DOT rendering can show but the simulator cannot run.
    """
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    body = _expect_header(lines, "strategy")
    header, trans, out = _fields(
        body, ("alphabet", "states", "initial"), "strategy"
    )
    alphabet = _alphabet(header["alphabet"][1], header["alphabet"][0])
    states = _names(header["states"][1], header["states"][0], "state")
    state_set = set(states)
    initial = _names(header["initial"][1], header["initial"][0], "initial state")
    if len(initial) != 1:
        raise FileFormatError(
            "a strategy has exactly one initial memory state", header["initial"][0]
        )
    _known(initial[0], state_set, header["initial"][0], "initial state")
    transitions = {}
    for number, rest in trans:
        parts = rest.split()
        if len(parts) != 3:
            raise FileFormatError("expected 'trans: m a m2'", number)
        q, a, q2 = parts
        _known(q, state_set, number, "state")
        _known(q2, state_set, number, "state")
        _known(a, set(alphabet), number, "letter")
        if (q, a) in transitions:
            raise FileFormatError(f"second transition from {q} on {a}", number)
        transitions[(q, a)] = q2
    for q in states:
        for a in alphabet:
            if (q, a) not in transitions:
                raise FileFormatError(f"no memory move from {q} on {a}")
    outputs = {}
    for number, rest in out:
        name, sep, braces = rest.partition("->")
        name = name.strip()
        braces = braces.strip()
        if not sep or not (braces.startswith("{") and braces.endswith("}")):
            raise FileFormatError("expected 'out: m -> {t0,t1}'", number)
        _known(name, state_set, number, "state")
        if name in outputs:
            raise FileFormatError(f"second output table entry for {name}", number)
        inner = braces[1:-1].strip()
        tokens = [tok.strip() for tok in inner.split(",")] if inner else []
        chosen = set()
        for tok in tokens:
            if not (tok.startswith("t") and tok[1:].isdigit()):
                raise FileFormatError(f"transition name expected, got {tok!r}", number)
            if auto is None:
                chosen.add(tok)
                continue
            index = int(tok[1:])
            if index >= len(auto.transitions):
                raise FileFormatError(
                    f"{tok} names no transition of the automaton "
                    f"(it has {len(auto.transitions)})",
                    number,
                )
            chosen.add(auto.transitions[index])
        outputs[name] = frozenset(chosen)
    for q in states:
        if q not in outputs:
            raise FileFormatError(f"no output table entry for {q}")
    return FiniteMemoryStrategy(
        alphabet=alphabet,
        states=states,
        initial=initial[0],
        transitions=transitions,
        outputs=outputs,
    )


# ---------------------------------------------------------------------------
# Lasso files.
# ---------------------------------------------------------------------------


def parse_lasso(text: str) -> Lasso:
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    body = _expect_header(lines, "lasso")
    header, trans, out = _fields(body, ("alphabet", "stem", "cycle"), "lasso")
    if trans or out:
        raise FileFormatError("a lasso file has no trans/out lines")
    alphabet = _alphabet(header["alphabet"][1], header["alphabet"][0])
    number, stem = header["stem"]
    number_c, cycle = header["cycle"]
    if not cycle:
        raise FileFormatError("the cycle part must be nonempty", number_c)
    for part, where in ((stem, number), (cycle, number_c)):
        for ch in part:
            if ch not in alphabet:
                raise FileFormatError(f"letter {ch!r} not in the alphabet", where)
    return Lasso(alphabet=alphabet, stem=stem, cycle=cycle)


def print_lasso(lasso: Lasso) -> str:
    return (
        "lasso\n"
        + "alphabet: " + " ".join(lasso.alphabet) + "\n"
        + ("stem: " + lasso.stem).rstrip() + "\n"
        + "cycle: " + lasso.cycle + "\n"
    )


# ---------------------------------------------------------------------------
# Language inputs: regex file or DFA file.
# ---------------------------------------------------------------------------


def parse_regex_file(text: str) -> Dfa:
    """`alphabet: a b` header, then exactly one expression line."""
    lines = _lines(text)
    if not lines:
        raise FileFormatError("empty file")
    number, first = lines[0]
    key, sep, rest = first.partition(":")
    if key.strip() != "alphabet" or not sep:
        raise FileFormatError("a regex file starts with 'alphabet: ...'", number)
    alphabet = _alphabet(rest.strip(), number)
    if len(lines) < 2:
        raise FileFormatError("missing the expression line")
    if len(lines) > 2:
        raise FileFormatError("one expression line expected", lines[2][0])
    ast = parse_regex(lines[1][1], alphabet)
    return determinize_minimize(regex_to_nfa(ast, alphabet))


def read_language(text: str) -> Dfa:
    kind = detect_kind(text)
    if kind == "dfa":
        return parse_dfa(text)
    if kind == "regex":
        return parse_regex_file(text)
    raise FileFormatError(f"expected a dfa or regex file, found {kind!r}")


def read_artifact(text: str):
    """(kind, parsed value); strategies keep raw t-names (no automaton)."""
    kind = detect_kind(text)
    parser = {
        "dfa": parse_dfa,
        "costautomaton": parse_cost_automaton,
        "strategy": parse_strategy,
        "lasso": parse_lasso,
        "regex": parse_regex_file,
    }[kind]
    return kind, parser(text)


# ---------------------------------------------------------------------------
# DOT rendering.
# ---------------------------------------------------------------------------


def _quote(name: str) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _state_line(name, is_initial, is_final) -> str:
    shape = "doublecircle" if is_final else "circle"
    attrs = [f"shape={shape}"]
    if is_initial:
        attrs.append("penwidth=2")
    return f"  {_quote(name)} [{', '.join(attrs)}];"


def dot_dfa(dfa: Dfa) -> str:
    lines = ["digraph dfa {", "  rankdir=LR;"]
    for q in dfa.states:
        lines.append(_state_line(q, q == dfa.initial, q in dfa.final))
    for q in dfa.states:
        for a in dfa.alphabet:
            target = dfa.transitions[(q, a)]
            lines.append(f"  {_quote(q)} -> {_quote(target)} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_cost_automaton(auto: CostAutomaton) -> str:
    """Counter actions ride on the edge labels, as in a/inc(0)."""
    lines = ["digraph costautomaton {", "  rankdir=LR;"]
    for q in auto.states:
        lines.append(_state_line(q, q in auto.initial, q in auto.final))
    for t in auto.transitions:
        if t.actions:
            label = t.letter + "/" + ";".join(f"{kind}({c})" for kind, c in t.actions)
        else:
            label = t.letter
        lines.append(
            f"  {_quote(t.source)} -> {_quote(t.target)} [label={_quote(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_strategy(strategy: FiniteMemoryStrategy, auto: CostAutomaton | None = None) -> str:
    """Bipartite picture: memory states and, dashed, their output tables."""
    ids = _transition_ids(auto) if auto is not None else None
    rename = {q: f"m{i}" for i, q in enumerate(strategy.states)}
    lines = ["digraph strategy {", "  rankdir=LR;"]
    for q in strategy.states:
        attrs = ["shape=ellipse"]
        if q == strategy.initial:
            attrs.append("penwidth=2")
        lines.append(f"  {_quote(rename[q])} [{', '.join(attrs)}];")
    for q in strategy.states:
        played = strategy.outputs[q]
        if isinstance(played, str):
            label = played
        else:
            tokens = []
            for t in played:
                if isinstance(t, str):
                    tokens.append(t)
                elif ids is not None:
                    tokens.append(ids[t])
                else:
                    raise ValueError(
                        "resolved outputs need the automaton to recover t-names"
                    )
            tokens.sort(key=lambda s: int(s[1:]) if s[1:].isdigit() else 0)
            label = "{" + ",".join(tokens) + "}"
        box = rename[q] + "_out"
        lines.append(f"  {_quote(box)} [shape=box, label={_quote(label)}];")
        lines.append(f"  {_quote(rename[q])} -> {_quote(box)} [style=dashed];")
    for q in strategy.states:
        for a in strategy.alphabet:
            target = strategy.transitions[(q, a)]
            lines.append(
                f"  {_quote(rename[q])} -> {_quote(rename[target])} [label={_quote(a)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_lasso(lasso: Lasso) -> str:
    word = lasso.stem + lasso.cycle
    lines = ["digraph lasso {", "  rankdir=LR;"]
    for i in range(len(word)):
        lines.append(f"  {_quote(f'p{i}')} [shape=circle];")
    for i, a in enumerate(word):
        target = i + 1 if i + 1 < len(word) else len(lasso.stem)
        lines.append(f"  {_quote(f'p{i}')} -> {_quote(f'p{target}')} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_artifact(text: str) -> str:
    """DOT for whatever artifact the text holds; regexes render as DFAs."""
    kind, value = read_artifact(text)
    if kind in ("dfa", "regex"):
        return dot_dfa(value)
    if kind == "costautomaton":
        return dot_cost_automaton(value)
    if kind == "strategy":
        return dot_strategy(value)
    return dot_lasso(value)
