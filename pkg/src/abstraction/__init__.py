"""Exact production intervals and the abstraction automata generated from them"""

from src.abstraction.events import EventSpec, validate_event_spec
from src.abstraction.reference import build_ref_ta

__all__ = ["EventSpec", "build_ref_ta", "validate_event_spec"]
