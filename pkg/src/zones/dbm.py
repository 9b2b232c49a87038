"""
Difference bound matrices

A zone over clocks x_1..x_n is stored as an (n+1)x(n+1) int64 matrix of
encoded bounds on x_i - x_j, index 0 being the constant zero clock. A bound
(v, <=) is encoded as 2v+1 and (v, <) as 2v, so the integer order of the
encoding is the tightness order of the bounds. Every ``Dbm`` value is kept
canonical and nonempty; operations that can empty a zone return ``None``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from src.errors import InputError

INF = np.int64(1 << 61)
LE_ZERO = 1
LT_ZERO = 0
# max constant used for clocks that extrapolation must leave alone
UNBOUNDED = 1 << 40


@dataclass(frozen=True)
class BoundEntry:
    value: int | float
    strict: bool = False

    @property
    def infinite(self) -> bool:
        return self.value == float("inf")

    def __str__(self) -> str:
        if self.infinite:
            return "<inf"
        return f"{'<' if self.strict else '<='}{self.value}"


def encode(value: int, strict: bool = False) -> int:
    return 2 * int(value) + (0 if strict else 1)


def decode(raw: int) -> BoundEntry:
    if raw >= INF:
        return BoundEntry(float("inf"), True)
    return BoundEntry(int(raw) >> 1, (int(raw) & 1) == 0)


def negate(raw: int) -> int:
    """Complement of x_i - x_j ≺ v as a bound on x_j - x_i"""
    # not (d <= v) is d > v, i.e. -d < -v; not (d < v) is -d <= -v
    value, nonstrict = int(raw) >> 1, int(raw) & 1
    return encode(-value, strict=bool(nonstrict))


def add_bounds(a: np.ndarray | int, b: np.ndarray | int) -> np.ndarray:
    """Min-plus addition of encoded bounds, saturating at INF"""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    total = a + b - ((a | b) & 1)
    return np.where((a >= INF) | (b >= INF), INF, total)


class Atom(NamedTuple):
    """Encoded constraint x_i - x_j ≺ v"""

    i: int
    j: int
    raw: int

    @classmethod
    def upper(cls, x: int, value: int, strict: bool = False) -> Atom:
        return cls(x, 0, encode(value, strict))

    @classmethod
    def lower(cls, x: int, value: int, strict: bool = False) -> Atom:
        return cls(0, x, encode(-value, strict))

    def negated(self) -> Atom:
        return Atom(self.j, self.i, negate(self.raw))

    def holds(self, values: Sequence[float]) -> bool:
        vi = 0 if self.i == 0 else values[self.i - 1]
        vj = 0 if self.j == 0 else values[self.j - 1]
        bound = decode(self.raw)
        if bound.infinite:
            return True
        diff = vi - vj
        return diff < bound.value or (not bound.strict and diff == bound.value)


def _close(m: np.ndarray) -> np.ndarray:
    for k in range(m.shape[0]):
        m = np.minimum(m, add_bounds(m[:, k, None], m[None, k, :]))
    return m


def _is_empty(m: np.ndarray) -> bool:
    return bool(np.any(np.diagonal(m) < LE_ZERO))


def canonicalize(matrix: np.ndarray) -> Dbm | None:
    """All-pairs shortest path closure; None when the zone is empty"""
    closed = _close(np.array(matrix, dtype=np.int64, copy=True))
    if _is_empty(closed):
        return None
    np.fill_diagonal(closed, LE_ZERO)
    return Dbm(closed)


class Dbm:
    __slots__ = ("_m", "_key")

    def __init__(self, matrix: np.ndarray):
        self._m = matrix
        self._m.setflags(write=False)
        self._key: bytes | None = None

    # construction

    @classmethod
    def zero(cls, clocks: int) -> Dbm:
        """All clocks equal to zero"""
        return cls(np.full((clocks + 1, clocks + 1), LE_ZERO, dtype=np.int64))

    @classmethod
    def unconstrained(cls, clocks: int) -> Dbm:
        """All non-negative valuations"""
        m = np.full((clocks + 1, clocks + 1), INF, dtype=np.int64)
        m[0, :] = LE_ZERO
        np.fill_diagonal(m, LE_ZERO)
        return cls(m)

    @classmethod
    def from_constraints(cls, clocks: int, atoms: Iterable[Atom]) -> Dbm | None:
        m = np.array(cls.unconstrained(clocks)._m)
        for atom in atoms:
            m[atom.i, atom.j] = min(m[atom.i, atom.j], atom.raw)
        return canonicalize(m)

    # inspection

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    @property
    def clocks(self) -> int:
        return self.dim - 1

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    def raw(self, i: int, j: int) -> int:
        return int(self._m[i, j])

    def entry(self, i: int, j: int) -> BoundEntry:
        return decode(self._m[i, j])

    def key(self) -> bytes:
        if self._key is None:
            self._key = self._m.tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Dbm) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        parts = []
        for x in range(1, self.dim):
            low, high = self.clock_interval(x)
            parts.append(f"x{x}:[{low.value},{high.value}]")
        return f"Dbm({', '.join(parts)})"

    def _check(self, x: int) -> None:
        if not 0 <= x < self.dim:
            raise InputError(f"unknown clock index {x}", dim=self.dim)

    # operations

    def constrain(self, atom: Atom) -> Dbm | None:
        """Canonical intersection with one atomic constraint"""
        i, j, raw = atom
        self._check(i)
        self._check(j)
        m = self._m
        if raw >= m[i, j]:
            return self
        if add_bounds(raw, m[j, i]) < LE_ZERO:
            return None
        out = np.array(m)
        out[i, j] = raw
        for k in (i, j):
            out = np.minimum(out, add_bounds(out[:, k, None], out[None, k, :]))
        return Dbm(out)

    def constrain_all(self, atoms: Iterable[Atom]) -> Dbm | None:
        zone: Dbm | None = self
        for atom in atoms:
            zone = zone.constrain(atom)
            if zone is None:
                return None
        return zone

    def up(self) -> Dbm:
        """Delay closure: drop every upper bound"""
        out = np.array(self._m)
        out[1:, 0] = INF
        return Dbm(out)

    def reset(self, x: int) -> Dbm:
        self._check(x)
        if x == 0:
            return self
        out = np.array(self._m)
        out[x, :] = self._m[0, :]
        out[:, x] = self._m[:, 0]
        out[x, x] = LE_ZERO
        return Dbm(out)

    def includes(self, other: Dbm) -> bool:
        if self.dim != other.dim:
            raise InputError("dimension mismatch", left=self.dim, right=other.dim)
        return bool(np.all(self._m >= other._m))

    def intersects(self, atoms: Iterable[Atom]) -> bool:
        return self.constrain_all(atoms) is not None

    def clock_interval(self, x: int) -> tuple[BoundEntry, BoundEntry]:
        """Projection of the zone on clock x as (lower, upper)"""
        self._check(x)
        low = decode(self._m[0, x])
        return BoundEntry(-low.value, low.strict), decode(self._m[x, 0])

    def extrapolate(self, max_constants: np.ndarray) -> Dbm:
        """Max-constant widening; max_constants[0] must be 0"""
        m = self._m
        ceiling = np.asarray(max_constants, dtype=np.int64)
        values = m >> 1
        finite = m < INF
        drop = finite & (values > ceiling[:, None])
        widen = finite & ~drop & (values < -ceiling[None, :])
        if not (drop.any() or widen.any()):
            return self
        out = np.where(drop, INF, m)
        out = np.where(widen, np.broadcast_to(2 * -ceiling[None, :], m.shape), out)
        closed = canonicalize(out)
        assert closed is not None
        return closed

    def contains_point(self, values: Sequence[float]) -> bool:
        point = np.concatenate(([0.0], np.asarray(values, dtype=float)))
        diff = point[:, None] - point[None, :]
        bound = (self._m >> 1).astype(float)
        strict = (self._m & 1) == 0
        ok = (self._m >= INF) | (diff < bound) | (~strict & (diff == bound))
        return bool(ok.all())
