"""
Model finders for causal theories.

Provides the brute-force reference finder and the pruning finder used by
default, behind the ModelFinder interface.
"""

from solvers.base import ModelFinder


def get_model_finder(name: str) -> ModelFinder:
    """
    Factory function to create the named model finder.

    Args:
        name: One of 'pruned', 'bruteforce'

    Returns:
        A ModelFinder instance

    Raises:
        ValueError: If the name is unknown
    """
    if name == "pruned":
        from solvers.pruned import PrunedModelFinder
        return PrunedModelFinder()

    elif name == "bruteforce":
        from solvers.bruteforce import BruteForceModelFinder
        return BruteForceModelFinder()

    else:
        raise ValueError(f"Unknown model finder: {name}")


__all__ = ["ModelFinder", "get_model_finder"]
