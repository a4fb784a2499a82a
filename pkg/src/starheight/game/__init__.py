from .strategy import FiniteMemoryStrategy

__all__ = ["FiniteMemoryStrategy"]
