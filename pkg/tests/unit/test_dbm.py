"""
Test cases for difference bound matrices
"""

import random

import numpy as np
import pytest

from src.errors import InputError
from src.zones.dbm import INF, Atom, Dbm, add_bounds, canonicalize, decode, encode, negate


def test_encoding_orders_bounds_by_tightness():
    """Test that (v,<) is tighter than (v,<=) and both tighter than (v+1,<)"""
    assert encode(3, strict=True) < encode(3) < encode(4, strict=True)
    assert decode(encode(-2, strict=True)).strict
    assert decode(encode(5)).value == 5
    assert decode(INF).infinite


def test_bound_addition_keeps_strictness():
    """Test that a strict summand makes the sum strict"""
    assert decode(add_bounds(encode(2), encode(3))).value == 5
    assert not decode(add_bounds(encode(2), encode(3))).strict
    assert decode(add_bounds(encode(2, strict=True), encode(3))).strict
    assert add_bounds(INF, encode(1)) == INF


def test_negation_complements_a_constraint():
    """Test that not(x <= 3) is 0 - x < -3"""
    atom = Atom.upper(1, 3)
    flipped = atom.negated()
    assert (flipped.i, flipped.j) == (0, 1)
    assert flipped.raw == negate(encode(3))
    assert flipped.holds([4])
    assert not flipped.holds([3])


def test_zero_zone_delay_and_constrain():
    """Test delaying the origin and cutting it with an upper bound"""
    zone = Dbm.zero(2).up()
    low, high = zone.clock_interval(1)
    assert (low.value, high.value) == (0, float("inf"))

    cut = zone.constrain(Atom.upper(1, 5))
    assert cut is not None
    assert cut.clock_interval(2)[1].value == 5  # clocks advance together
    assert cut.contains_point([5, 5])
    assert not cut.contains_point([5, 4])


def test_empty_intersection_returns_none():
    """Test that contradictory constraints empty the zone"""
    zone = Dbm.zero(1).up().constrain(Atom.lower(1, 4))
    assert zone is not None
    assert zone.constrain(Atom.upper(1, 3)) is None
    assert Dbm.from_constraints(1, [Atom.lower(1, 2), Atom.upper(1, 2, strict=True)]) is None


def test_reset_preserves_other_clocks():
    """Test that resetting one clock keeps the difference of the others"""
    zone = Dbm.zero(2).up().constrain(Atom.lower(1, 3)).constrain(Atom.upper(1, 3))
    reset = zone.reset(2)
    assert reset.contains_point([3, 0])
    assert not reset.contains_point([3, 1])
    assert reset.up().contains_point([5, 2])


def test_inclusion_is_pointwise():
    """Test inclusion between a zone and a smaller one"""
    outer = Dbm.from_constraints(1, [Atom.upper(1, 10)])
    inner = Dbm.from_constraints(1, [Atom.lower(1, 2), Atom.upper(1, 4)])
    assert outer.includes(inner)
    assert not inner.includes(outer)
    with pytest.raises(InputError):
        outer.includes(Dbm.zero(2))


def test_extrapolation_widens_beyond_max_constant():
    """Test that values above the max constant become unbounded"""
    zone = Dbm.from_constraints(1, [Atom.lower(1, 20), Atom.upper(1, 30)])
    widened = zone.extrapolate(np.array([0, 10]))
    low, high = widened.clock_interval(1)
    assert high.infinite
    assert low.value == 10 and low.strict
    assert widened.includes(zone)


def test_canonical_form_is_closed():
    """Test that implied diagonal bounds are tightened"""
    zone = Dbm.from_constraints(2, [Atom.upper(1, 3), Atom.lower(2, 5)])
    # x1 - x2 <= 3 - 5
    assert zone.entry(1, 2).value == -2
    assert zone == Dbm.from_constraints(2, [Atom.lower(2, 5), Atom.upper(1, 3)])
    assert hash(zone) == hash(Dbm.from_constraints(2, [Atom.lower(2, 5), Atom.upper(1, 3)]))


def test_unknown_clock_index_is_rejected():
    with pytest.raises(InputError):
        Dbm.zero(1).constrain(Atom.upper(3, 1))


CLOCKS = 2
# sample points on half units; existential witnesses need the finer quarter grid
POINTS = [(a / 2, b / 2) for a in range(13) for b in range(13)]
WITNESSES = [v / 4 for v in range(49)]
# quarter units reach every region of two clocks with constants up to 4
FINE = [(a / 4, b / 4) for a in range(37) for b in range(37)]


def _random_atom(rng: random.Random) -> Atom:
    i, j = rng.sample(range(CLOCKS + 1), 2)
    if j == 0:
        value = rng.randint(0, 4)
    elif i == 0:
        value = -rng.randint(0, 4)
    else:
        value = rng.randint(-4, 4)
    return Atom(i, j, encode(value, strict=rng.random() < 0.5))


def _random_zone(rng: random.Random) -> Dbm:
    while True:
        zone = Dbm.from_constraints(CLOCKS, [_random_atom(rng) for _ in range(rng.randint(1, 3))])
        if zone is not None:
            return zone


def _satisfies(atoms):
    return lambda p: all(v >= 0 for v in p) and all(atom.holds(p) for atom in atoms)


def _delayed(member):
    return lambda p: any(member(tuple(v - d for v in p)) for d in WITNESSES if d <= min(p))


def _reset(member, x: int):
    def inside(p):
        if p[x - 1] != 0:
            return False
        return any(member(tuple(w if k == x - 1 else v for k, v in enumerate(p))) for w in WITNESSES)

    return inside


@pytest.mark.parametrize("seed", range(60))
def test_operations_match_point_enumeration(seed):
    """Test constrain, delay and reset against membership computed point by point"""
    rng = random.Random(seed)
    atoms = [_random_atom(rng) for _ in range(rng.randint(1, 3))]
    zone = Dbm.from_constraints(CLOCKS, atoms)
    member = _satisfies(atoms)

    op = rng.choice(["up", "reset1", "reset2"])
    if op == "up":
        zone = zone.up() if zone is not None else None
        member = _delayed(member)
    else:
        x = int(op[-1])
        zone = zone.reset(x) if zone is not None else None
        member = _reset(member, x)

    last = _random_atom(rng)
    zone = zone.constrain(last) if zone is not None else None

    for p in POINTS:
        expected = member(p) and last.holds(p)
        assert (zone is not None and zone.contains_point(p)) == expected, (seed, op, p)


@pytest.mark.parametrize("seed", range(40))
def test_canonical_form_is_idempotent(seed):
    rng = random.Random(seed)
    zone = _random_zone(rng)
    if rng.random() < 0.5:
        zone = zone.up()
    again = canonicalize(zone.matrix)
    assert again == zone
    assert canonicalize(again.matrix) == again


@pytest.mark.parametrize("seed", range(40))
def test_inclusion_agrees_with_grid_points(seed):
    """Test includes against containment of every quarter-unit point"""
    rng = random.Random(seed)
    first, second = _random_zone(rng), _random_zone(rng)
    if rng.random() < 0.3:
        second = first.constrain(_random_atom(rng)) or second
    inside = all(first.contains_point(p) for p in FINE if second.contains_point(p))
    assert first.includes(second) == inside, seed
