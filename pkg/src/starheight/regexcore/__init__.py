"""Regular-expression front end: syntax trees, automata, and recognizing monoids.

Everything downstream consumes a language through the pair (minimal DFA,
transition monoid), which this subpackage produces from either a regex or
a DFA given directly.
"""

from starheight.regexcore.syntax import (
    Concat,
    Empty,
    Epsilon,
    Letter,
    Regex,
    RegexParseError,
    Star,
    Union,
    expression_star_height,
    parse_regex,
    regex_matches,
    regex_to_string,
)
from starheight.regexcore.automata import (
    Dfa,
    Nfa,
    cycle_rank,
    determinize_minimize,
    regex_to_nfa,
)
from starheight.regexcore.monoid import MonoidPresentation, transition_monoid

__all__ = [
    "Regex",
    "Empty",
    "Epsilon",
    "Letter",
    "Union",
    "Concat",
    "Star",
    "RegexParseError",
    "parse_regex",
    "regex_to_string",
    "expression_star_height",
    "regex_matches",
    "Nfa",
    "Dfa",
    "regex_to_nfa",
    "determinize_minimize",
    "cycle_rank",
    "MonoidPresentation",
    "transition_monoid",
]
