"""molspace: molecular spaces (graphs as digital models of continuous spaces)."""

from .core import MolecularSpace, Subspace

__all__ = ["MolecularSpace", "Subspace"]
__version__ = "0.1.0"
