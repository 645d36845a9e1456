"""Points, closed disks and the two predicates everything else is built on.

All decisions compare squared quantities, so no square root ever enters a
yes/no answer. Tangent disks intersect; boundary points belong to the disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DuplicateIdError, InputError, KindMismatchError

KINDS = ("general", "unit", "delta")
UNIT_RADIUS = 0.5


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InputError(f"non-finite coordinate in Point({self.x}, {self.y})")


@dataclass(frozen=True)
class Disk:
    id: int
    center: Point
    radius: float

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 0:
            raise InputError(f"disk id must be a non-negative integer, got {self.id!r}")
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InputError(f"disk {self.id}: radius must be positive and finite")

    @classmethod
    def at(cls, id: int, x: float, y: float, r: float) -> "Disk":
        return cls(id, Point(float(x), float(y)), float(r))

    @property
    def x(self) -> float:
        return self.center.x

    @property
    def y(self) -> float:
        return self.center.y


def disks_intersect(a: Disk, b: Disk) -> bool:
    dx = a.center.x - b.center.x
    dy = a.center.y - b.center.y
    s = a.radius + b.radius
    return dx * dx + dy * dy <= s * s


def point_in_disk(p: Point, d: Disk) -> bool:
    dx = p.x - d.center.x
    dy = p.y - d.center.y
    return dx * dx + dy * dy <= d.radius * d.radius


def disk_contains_disk(outer: Disk, inner: Disk) -> bool:
    """True iff ``inner`` lies inside ``outer`` (closed sets)."""
    gap = outer.radius - inner.radius
    if gap < 0:
        return False
    dx = outer.center.x - inner.center.x
    dy = outer.center.y - inner.center.y
    return dx * dx + dy * dy <= gap * gap


def median_coordinate(values: Sequence[float]) -> float:
    """Lower median: element ``ceil(n/2) - 1`` of the sorted values."""
    if len(values) == 0:
        raise InputError("median of an empty list")
    ordered = sorted(values)
    return ordered[(len(ordered) + 1) // 2 - 1]


@dataclass(frozen=True)
class DiskInstance:
    disks: tuple[Disk, ...]
    kind: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "disks", tuple(self.disks))
        if self.kind not in KINDS:
            raise InputError(f"unknown instance kind {self.kind!r}")
        seen = set()
        for d in self.disks:
            if d.id in seen:
                raise DuplicateIdError(f"duplicate disk id {d.id}")
            seen.add(d.id)
        if self.kind == "unit":
            for d in self.disks:
                if d.radius != UNIT_RADIUS:
                    raise KindMismatchError(
                        f"unit instance: disk {d.id} has radius {d.radius!r}, expected 0.5"
                    )
        elif self.kind == "delta":
            from .delta import delta_violation

            for d in self.disks:
                reason = delta_violation(d)
                if reason:
                    raise KindMismatchError(f"delta instance: disk {d.id} {reason}")

    def __len__(self) -> int:
        return len(self.disks)

    def __iter__(self):
        return iter(self.disks)

    @property
    def n(self) -> int:
        return len(self.disks)

    @cached_property
    def by_id(self) -> dict[int, Disk]:
        return {d.id: d for d in self.disks}

    @classmethod
    def from_tuples(cls, rows: Iterable[tuple[float, float, float]], kind: str = "general"):
        """Build an instance from ``(x, y, r)`` rows with ids ``0..n-1``."""
        return cls(tuple(Disk.at(i, x, y, r) for i, (x, y, r) in enumerate(rows)), kind)


def require_kind(instance: DiskInstance, kind: str) -> None:
    if instance.kind != kind:
        raise KindMismatchError(f"expected a {kind} instance, got kind {instance.kind!r}")
