"""Left-orderings of concrete groups as exact sign oracles, with the
automorphism and commensuration actions on their ordering spaces."""

__version__ = "0.1.0"
