"""Exact inter-core timing bounds with timed automata"""

__version__ = "0.1.0"
