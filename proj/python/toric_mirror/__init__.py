"""Mirror potentials and lifted Seidel elements of semi-positive toric manifolds.

Series are returned as dicts mapping exponent tuples to ``fractions.Fraction``.
Ray indices are 1-based, as on the command line.
"""

from ._core import GateError, Manifold, OutOfModel, builtin_names, run_cli

__all__ = ["GateError", "Manifold", "OutOfModel", "builtin_names", "run_cli", "load"]


def load(source):
    """Load a built-in fan by name or a fan file by path."""
    return Manifold.load(str(source))
