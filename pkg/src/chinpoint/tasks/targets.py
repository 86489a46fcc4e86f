"""Target layouts for the 2D pointing task and the 3D reach task."""

from __future__ import annotations

import math
from dataclasses import dataclass

SCREEN_SIZE = 800.0

ANGLES_DEG = (0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0)
WIDTHS_PX = (30.0, 61.0)
DISTANCES_PX = (122.0, 244.0, 300.0)

CUBE_SIDE = 1.0
TARGET_RADIUS_M = 0.05
START_CENTER = (0.5, 0.5, 0.5)
RING_RADIUS_M = 0.3
RING_HEIGHTS = (0.35, 0.65)
POLAR_HEIGHTS = (0.2, 0.8)


@dataclass(frozen=True)
class TargetSpec2D:
    """One selectable disk; the center disk has distance 0."""

    angle_deg: float
    width: float
    distance: float
    is_center: bool = False

    def position(self, screen_size: float = SCREEN_SIZE) -> tuple[float, float]:
        cx = cy = screen_size / 2.0
        if self.is_center:
            return (cx, cy)
        theta = math.radians(self.angle_deg)
        return (cx + self.distance * math.cos(theta),
                cy + self.distance * math.sin(theta))


def generate_target_set_2d() -> list[TargetSpec2D]:
    """All 50 selectable targets: 8x2x3 peripheral plus center per width."""
    targets = [TargetSpec2D(angle, width, distance)
               for width in WIDTHS_PX
               for distance in DISTANCES_PX
               for angle in ANGLES_DEG]
    targets.extend(TargetSpec2D(0.0, width, 0.0, is_center=True)
                   for width in WIDTHS_PX)
    return targets


def peripheral_targets_2d() -> list[TargetSpec2D]:
    """The 48 peripheral disks in generation order."""
    return [t for t in generate_target_set_2d() if not t.is_center]


@dataclass(frozen=True)
class TargetSpec3D:
    """One spherical target inside the unit cube."""

    center: tuple[float, float, float]
    radius: float = TARGET_RADIUS_M

    def contains(self, point: tuple[float, float, float]) -> bool:
        dx = point[0] - self.center[0]
        dy = point[1] - self.center[1]
        dz = point[2] - self.center[2]
        # Strict interior: the boundary itself does not count.
        return dx * dx + dy * dy + dz * dz < self.radius * self.radius


def generate_target_set_3d() -> list[TargetSpec3D]:
    """18 spheres: two rings of 8 plus one target above and one below."""
    targets = []
    for z in RING_HEIGHTS:
        for angle in ANGLES_DEG:
            theta = math.radians(angle)
            targets.append(TargetSpec3D((0.5 + RING_RADIUS_M * math.cos(theta),
                                         0.5 + RING_RADIUS_M * math.sin(theta),
                                         z)))
    for z in POLAR_HEIGHTS:
        targets.append(TargetSpec3D((0.5, 0.5, z)))
    return targets


def start_sphere_3d() -> TargetSpec3D:
    return TargetSpec3D(START_CENTER)
