"""Nearly holomorphic Drinfeld modular forms and their t-expansions."""

__version__ = "0.1.0"
