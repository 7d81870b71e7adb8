"""Integer intervals and genus-bound fragments shared by the invariant engines."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Interval:
    """Closed integer interval [lo, hi]; hi = None means no finite upper bound."""

    lo: int
    hi: int | None = None

    def __post_init__(self):
        if self.hi is not None and self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def meet(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        if self.hi is None:
            hi = other.hi
        elif other.hi is None:
            hi = self.hi
        else:
            hi = min(self.hi, other.hi)
        return Interval(lo, hi)

    @property
    def is_point(self) -> bool:
        return self.hi == self.lo

    def __contains__(self, value: int) -> bool:
        return value >= self.lo and (self.hi is None or value <= self.hi)

    def to_json(self):
        return [self.lo, self.hi]

    @classmethod
    def from_json(cls, obj) -> "Interval":
        if isinstance(obj, int):
            return cls(obj, obj)
        lo, hi = obj
        return cls(int(lo), None if hi is None else int(hi))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]" if self.hi is not None else f"[{self.lo}, inf)"


_GENUS_FLOOR = {"g4": 0, "g3": 0, "gamma4": 1, "gamma3": 1}


@dataclass(frozen=True)
class GenusBounds:
    """Interval bounds for the orientable/non-orientable 3- and 4-genus.

    Any field may be None (no information).  Non-orientable genera start at
    1: every knot bounds some non-orientable surface with b_1 >= 1, and
    sliceness is tracked separately in the verdict rather than as gamma4 = 0.
    """

    g4: Interval | None = None
    gamma4: Interval | None = None
    g3: Interval | None = None
    gamma3: Interval | None = None

    def __post_init__(self):
        for field, floor in _GENUS_FLOOR.items():
            iv = getattr(self, field)
            if iv is not None and iv.lo < floor:
                raise ValueError(f"{field} lower bound {iv.lo} below its floor {floor}")

    def to_json(self):
        return {
            "g4": self.g4.to_json() if self.g4 else None,
            "gamma4": self.gamma4.to_json() if self.gamma4 else None,
            "g3": self.g3.to_json() if self.g3 else None,
            "gamma3": self.gamma3.to_json() if self.gamma3 else None,
        }

    @classmethod
    def from_json(cls, obj) -> "GenusBounds":
        def iv(key):
            v = obj.get(key)
            return Interval.from_json(v) if v is not None else None

        return cls(g4=iv("g4"), gamma4=iv("gamma4"), g3=iv("g3"), gamma3=iv("gamma3"))
