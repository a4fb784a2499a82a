"""Normal-form expressions of bounded height and degree, plus a
brute-force membership oracle for the languages they carve out of a
monoid.

The shapes, by height:

* height 0: a finite set of words, each no longer than the degree.
* height h >= 1: a finite union of blocks w1 e1* w2 e2* ... wi ei*,
  where the block has at most `degree` segments, every wj has length at
  most `degree`, and every ej is an expression of height at most h-1 and
  degree at most `degree`.

For a monoid subset N, the subset language at height h and degree m
collects every word covered by some such expression whose image lies
inside N.  Membership unwinds to a factorization search: split the word
into short pieces and looped pieces, pick a generating subset for each
loop, and require the whole product (with each loop closed into the
submonoid it generates) to stay inside N.  The oracle below evaluates
that condition directly by exhaustive search; the cost automaton in
height_automaton.py must agree with it, which is the whole point of
keeping the two implementations independent.

Conventions: a union of zero blocks denotes the empty language, and a
factorization into zero pieces denotes the empty word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import BudgetError
from ..regexcore import Dfa, MonoidPresentation, transition_monoid


@dataclass(frozen=True)
class StringExpression:
    """Height-0 body: frozenset of words.  Height >= 1 body: tuple of
    blocks, each block a tuple of (word, inner expression) segments."""

    height: int
    degree: int
    body: object

    def check(self) -> list:
        problems = []
        if self.height < 0 or self.degree < 0:
            problems.append("height and degree must be naturals")
            return problems
        if self.height == 0:
            if not isinstance(self.body, frozenset):
                problems.append("height-0 body must be a frozenset of words")
                return problems
            for w in self.body:
                if len(w) > self.degree:
                    problems.append(f"word {w!r} longer than degree {self.degree}")
        else:
            if not isinstance(self.body, tuple):
                problems.append("height-1+ body must be a tuple of blocks")
                return problems
            for block in self.body:
                if len(block) > self.degree:
                    problems.append(f"block with {len(block)} segments exceeds degree")
                for word, inner in block:
                    if len(word) > self.degree:
                        problems.append(f"segment word {word!r} too long")
                    if inner.height > self.height - 1:
                        problems.append("inner expression too tall")
                    if inner.degree > self.degree:
                        problems.append("inner expression degree too large")
                    problems.extend(inner.check())
        return problems

    def describe(self) -> str:
        if self.height == 0:
            words = ",".join(sorted(self.body)) or "-"
            return "{" + words.replace(",,", ",eps,") + "}"
        parts = []
        for block in self.body:
            segs = "".join(
                f"{word or 'eps'}.({inner.describe()})*" for word, inner in block
            )
            parts.append(segs or "eps")
        return " + ".join(parts) if parts else "empty"


def string_expression_semantics(expr: StringExpression, word: str, memo=None) -> bool:
    """Does the expression's language contain the word?"""
    if memo is None:
        memo = {}
    key = (expr, word)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if expr.height == 0:
        ans = word in expr.body
    else:
        ans = any(_block_match(block, word, memo) for block in expr.body)
    memo[key] = ans
    return ans


def _block_match(block, word: str, memo) -> bool:
    positions = {0}
    for short, inner in block:
        positions = {
            p + len(short) for p in positions if word.startswith(short, p)
        }
        frontier = list(positions)
        while frontier:
            p = frontier.pop()
            for end in range(p + 1, len(word) + 1):
                if end not in positions and string_expression_semantics(
                    inner, word[p:end], memo
                ):
                    positions.add(end)
                    frontier.append(end)
        if not positions:
            return False
    return len(word) in positions


# ---------------------------------------------------------------------------
# The membership oracle.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetLanguage:
    monoid: MonoidPresentation
    elements: frozenset
    height: int
    degree: int


def oracle_caches() -> dict:
    """Shared scratch space; reuse across calls on the same monoid."""
    return {"member": {}, "splits": {}, "setprod": {}, "subsets": {}, "closure": {}}


def _guard(monoid: MonoidPresentation, word: str, height: int, degree: int):
    if monoid.size > 6:
        raise BudgetError(f"oracle monoid cap is 6 elements, got {monoid.size}")
    if len(word) > 10:
        raise BudgetError(f"oracle word cap is 10 letters, got {len(word)}")
    if height > 2:
        raise BudgetError(f"oracle height cap is 2, got {height}")
    if degree > 8:
        raise BudgetError(f"oracle degree cap is 8, got {degree}")


def _subsets_of(monoid: MonoidPresentation, caches) -> list:
    got = caches["subsets"].get(id(monoid))
    if got is None:
        elems = list(monoid.elements())
        got = []
        for size in range(len(elems) + 1):
            for combo in itertools.combinations(elems, size):
                got.append(frozenset(combo))
        caches["subsets"][id(monoid)] = got
        caches["closure"][id(monoid)] = {
            s: monoid.generated_submonoid(s) for s in got
        }
    return got


def _set_times(monoid, left: frozenset, right: frozenset, caches) -> frozenset:
    key = (left, right)
    prod = caches["setprod"].get(key)
    if prod is None:
        prod = frozenset(
            monoid.product(x, y) for x in left for y in right
        )
        caches["setprod"][key] = prod
    return prod


def _member(monoid, target: frozenset, word: str, degree: int, height: int, caches) -> bool:
    key = (word, target, degree, height)
    hit = caches["member"].get(key)
    if hit is not None:
        return hit
    if height == 0:
        ans = len(word) <= degree and monoid.image_of_word(word) in target
    else:
        ans = _chain_search(monoid, target, word, degree, height, caches)
    caches["member"][key] = ans
    return ans


def _splits(monoid, piece_target: frozenset, word: str, degree: int, height: int, caches) -> bool:
    """Does the word split into pieces, each in the subset language of
    piece_target at the given height and degree?  Zero pieces cover the
    empty word."""
    key = (word, piece_target, degree, height)
    hit = caches["splits"].get(key)
    if hit is not None:
        return hit
    # every piece image lands in the target, so the whole word's image
    # must lie in the generated submonoid
    if monoid.image_of_word(word) not in caches["closure"][id(monoid)][piece_target]:
        caches["splits"][key] = False
        return False
    reach = {0}
    for pos in range(len(word)):
        if pos not in reach:
            continue
        for end in range(pos + 1, len(word) + 1):
            if end not in reach and _member(
                monoid, piece_target, word[pos:end], degree, height, caches
            ):
                reach.add(end)
    ans = len(word) in reach
    caches["splits"][key] = ans
    return ans


def _chain_search(monoid, target, word, degree, height, caches) -> bool:
    subsets = _subsets_of(monoid, caches)
    closure = caches["closure"][id(monoid)]
    unit = frozenset({monoid.identity})
    n = len(word)
    # image of each suffix; any completion of a partial chain multiplies
    # the running product set by at least the remaining suffix image, so
    # product . suffix staying inside the target is a necessary condition
    # (and at the end of the word it is the success condition itself)
    suffix_image = [monoid.identity] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_image[i] = monoid.product(
            monoid.letter_image[word[i]], suffix_image[i + 1]
        )
    visited = set()

    def go(pos: int, used: int, product: frozenset) -> bool:
        tail = suffix_image[pos]
        for p in product:
            if monoid.product(p, tail) not in target:
                return False
        if pos == n:
            return True
        if used == degree:
            return False
        state = (pos, used, product)
        if state in visited:
            return False
        visited.add(state)
        for j_end in range(pos, min(pos + degree, len(word)) + 1):
            after_short = _set_times(
                monoid,
                product,
                frozenset({monoid.image_of_word(word[pos:j_end])}),
                caches,
            )
            for loop_set in subsets:
                after_loop = _set_times(monoid, after_short, closure[loop_set], caches)
                for v_end in range(j_end, len(word) + 1):
                    if v_end == pos and after_loop == product:
                        continue  # block consumes nothing and changes nothing
                    if v_end > j_end and not _splits(
                        monoid, loop_set, word[j_end:v_end], degree, height - 1, caches
                    ):
                        continue
                    if go(v_end, used + 1, after_loop):
                        return True
        return False

    return go(0, 0, unit)


def subset_language_member_oracle(sub: SubsetLanguage, word: str, caches=None) -> bool:
    """Brute-force membership in the subset language, straight from the
    factorization condition.  Deliberately independent of the automaton
    construction."""
    _guard(sub.monoid, word, sub.height, sub.degree)
    if caches is None:
        caches = oracle_caches()
    return _member(sub.monoid, sub.elements, word, sub.degree, sub.height, caches)


def minimal_expression_degree(
    monoid: MonoidPresentation,
    elements: frozenset,
    word: str,
    height: int,
    caches=None,
):
    """Least degree whose subset language contains the word, or None.

    Scanning degrees up to the word's length is complete: when any
    covering expression exists, the word-as-one-block chain gives one of
    degree at most len(word) (degree 0 for the empty word).
    """
    _guard(monoid, word, height, min(len(word), 8))
    if caches is None:
        caches = oracle_caches()
    for degree in range(len(word) + 1):
        if _member(monoid, elements, word, degree, height, caches):
            return degree
    return None


# ---------------------------------------------------------------------------
# Certificate reconstruction at tiny scale.
# ---------------------------------------------------------------------------


def _short_words(alphabet, max_len: int):
    for n in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            yield "".join(tup)


def _expr_of_subset(monoid, target, height, degree, alphabet, memo) -> StringExpression:
    key = (target, height, degree)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if height == 0:
        body = frozenset(
            w
            for w in _short_words(alphabet, degree)
            if monoid.image_of_word(w) in target
        )
        expr = StringExpression(0, degree, body)
    else:
        caches = oracle_caches()
        subsets = _subsets_of(monoid, caches)
        closure = caches["closure"][id(monoid)]
        segments = [
            (w, s) for w in _short_words(alphabet, degree) for s in subsets
        ]
        blocks = set()
        for count in range(1, degree + 1):
            for chain in itertools.product(segments, repeat=count):
                product = frozenset({monoid.identity})
                for short, loop_set in chain:
                    product = _set_times(
                        monoid,
                        product,
                        frozenset({monoid.image_of_word(short)}),
                        caches,
                    )
                    product = _set_times(monoid, product, closure[loop_set], caches)
                if product <= target:
                    blocks.add(
                        tuple(
                            (short, _expr_of_subset(
                                monoid, loop_set, height - 1, degree, alphabet, memo
                            ))
                            for short, loop_set in chain
                        )
                    )
        expr = StringExpression(height, degree, tuple(sorted(blocks, key=repr)))
    memo[key] = expr
    return expr


def string_expression_reconstruct(
    lang: Dfa, height: int, degree: int, check_len: int = 5
):
    """Expression of the given height and degree defining the language,
    or None when none exists.

    Built as the union of every degree-bounded block chain whose product
    stays inside the accepting subset; containment in the language holds
    by construction, and the reverse inclusion is checked on all words up
    to check_len (the small-scale certificate contract).
    """
    monoid = transition_monoid(lang)
    if height == 0:
        if degree > 6 or monoid.size > 8:
            raise BudgetError("height-0 reconstruction caps: degree 6, monoid 8")
    else:
        if height > 2 or degree > 2 or monoid.size > 4:
            raise BudgetError(
                "reconstruction caps at height >= 1: height 2, degree 2, monoid 4"
            )
    expr = _expr_of_subset(
        monoid, monoid.accepting, height, degree, lang.alphabet, {}
    )
    memo = {}
    for w in _short_words(lang.alphabet, check_len):
        covered = string_expression_semantics(expr, w, memo)
        inside = lang.accepts(w)
        if covered and not inside:
            raise RuntimeError(
                f"reconstruction covered {w!r} outside the language"
            )
        if inside and not covered:
            return None
    return expr
