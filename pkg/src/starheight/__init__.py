"""Star height of regular languages, decided through limitedness games.

The pipeline runs: regular language -> cost automaton whose values track
expression degree -> limitedness game -> parity game with a finite-memory
winning strategy.  Each stage is importable on its own; the names below
cover the common entry points end to end.
"""

from starheight.costautomaton import CostAutomaton, evaluate, value_profile
from starheight.game.limitedness import solve_limitedness
from starheight.reduction.height_automaton import star_height

__version__ = "0.1.0"

__all__ = [
    "CostAutomaton",
    "evaluate",
    "value_profile",
    "solve_limitedness",
    "star_height",
    "__version__",
]
