"""
Unions of closed integer intervals
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from src.errors import ModelClassError
from src.zones.dbm import BoundEntry


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, disjoint, non-adjacent closed intervals"""

    intervals: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "IntervalSet":
        return cls.merge(pairs)

    @classmethod
    def merge(cls, pairs: Iterable[tuple[int, int]]) -> "IntervalSet":
        """Union of closed intervals; touching intervals are fused"""
        merged: list[list[int]] = []
        for low, high in sorted(pairs):
            if low > high:
                continue
            if merged and low <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], high)
            else:
                merged.append([low, high])
        return cls(tuple((low, high) for low, high in merged))

    @classmethod
    def from_projections(cls, projections: Iterable[tuple[BoundEntry, BoundEntry]]) -> "IntervalSet":
        """Merge zone projections, then demand closed integer endpoints"""
        spans = sorted(
            ((low.value, low.strict, high.value, high.strict) for low, high in projections),
            key=lambda s: (s[0], s[1]),
        )
        merged: list[list] = []
        for low, low_strict, high, high_strict in spans:
            if merged:
                last = merged[-1]
                touches = low < last[2] or (low == last[2] and not (low_strict and last[3]))
                if touches:
                    if high > last[2] or (high == last[2] and not high_strict):
                        last[2], last[3] = high, high_strict
                    continue
            merged.append([low, low_strict, high, high_strict])
        for low, low_strict, high, high_strict in merged:
            if low_strict or high_strict:
                left = "(" if low_strict else "["
                right = ")" if high_strict else "]"
                raise ModelClassError(
                    f"interval {left}{low},{high}{right} has a strict endpoint; only closed models are supported"
                )
        return cls(tuple((int(m[0]), int(m[2])) for m in merged))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __str__(self) -> str:
        return "{" + ",".join(f"[{a},{b}]" for a, b in self.intervals) + "}"

    @property
    def min(self) -> int:
        return self.intervals[0][0]

    @property
    def max(self) -> int:
        return self.intervals[-1][1]

    def clip(self, low: int, high: int) -> "IntervalSet":
        """Intersection with [low, high]"""
        return IntervalSet(
            tuple((max(a, low), min(b, high)) for a, b in self.intervals if a <= high and b >= low)
        )

    def hull(self) -> "IntervalSet":
        return IntervalSet(((self.min, self.max),)) if self.intervals else self

    def shift(self, delta: int) -> "IntervalSet":
        return IntervalSet(tuple((a + delta, b + delta) for a, b in self.intervals))

    def integer_points(self) -> set[int]:
        return {t for a, b in self.intervals for t in range(a, b + 1)}

    @classmethod
    def from_points(cls, points: Iterable[int]) -> "IntervalSet":
        """Maximal runs of consecutive integers"""
        runs: list[list[int]] = []
        for t in sorted(set(points)):
            if runs and t == runs[-1][1] + 1:
                runs[-1][1] = t
            else:
                runs.append([t, t])
        return cls(tuple((a, b) for a, b in runs))

    def to_json(self) -> list[list[int]]:
        return [[a, b] for a, b in self.intervals]
