"""Kato-Nakayama realizations of degenerations: combinatorial engine."""

__version__ = "0.1.0"
