"""Exact TKK / Jordan algebra toolkit."""

__version__ = "0.1.0"
