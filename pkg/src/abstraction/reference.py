"""
Reference automaton bounding an exploration at one hyperperiod
"""

from src.automata.model import Location, Network, TimedAutomaton, clock_le
from src.errors import UsageError

REF_ID = "Ref"
REF_CLOCK = f"{REF_ID}.x"
REF_LOCATION = "hper"


def build_ref_ta(hp: int) -> TimedAutomaton:
    """One location with invariant x <= hp and no edges: time stops at hp"""
    if hp <= 0:
        raise UsageError(f"hyperperiod must be positive, got {hp}")
    return TimedAutomaton(
        id=REF_ID,
        clocks=["x"],
        locations=[Location(id=REF_LOCATION, invariant=[clock_le("x", hp)], initial=True)],
    )


def with_reference(n: Network, hp: int) -> Network:
    """n composed with Ref(hp), unless it already carries one"""
    if any(a.id == REF_ID for a in n.automata):
        return n
    return n.model_copy(update={"automata": [*n.automata, build_ref_ta(hp)]})
