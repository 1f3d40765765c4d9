"""Exact time-of-arrival series engines and their quantum-classical comparison."""

__version__ = "0.1.0"
