"""Clock zones"""

from src.zones.dbm import INF, Atom, BoundEntry, Dbm, canonicalize

__all__ = ["INF", "Atom", "BoundEntry", "Dbm", "canonicalize"]
