"""Star height via cost automata: normal-form expressions and the
height-bounded machine whose value is the minimal expression degree."""

from .expressions import (
    StringExpression,
    SubsetLanguage,
    minimal_expression_degree,
    string_expression_reconstruct,
    string_expression_semantics,
    subset_language_member_oracle,
)
from .height_automaton import (
    build_height_automaton,
    is_star_height_at_most,
    star_height,
)

__all__ = [
    "StringExpression",
    "SubsetLanguage",
    "minimal_expression_degree",
    "string_expression_reconstruct",
    "string_expression_semantics",
    "subset_language_member_oracle",
    "build_height_automaton",
    "is_star_height_at_most",
    "star_height",
]
