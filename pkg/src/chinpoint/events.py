"""Control events emitted by the translator and consumed by the tasks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union


class Mode(str, Enum):
    POINTING = "pointing"
    ARM3D = "arm3d"
    RELEASED = "released"


@dataclass(frozen=True)
class PointerDelta:
    t_ms: float
    dx: float
    dy: float


@dataclass(frozen=True)
class ClickPress:
    t_ms: float


@dataclass(frozen=True)
class ClickRelease:
    t_ms: float


@dataclass(frozen=True)
class ZDelta:
    t_ms: float
    dz: float


@dataclass(frozen=True)
class ModeToggle:
    t_ms: float


ControlEvent = Union[PointerDelta, ClickPress, ClickRelease, ZDelta, ModeToggle]

_TYPE_TAGS = {
    PointerDelta: "pointer",
    ClickPress: "press",
    ClickRelease: "release",
    ZDelta: "z",
    ModeToggle: "toggle",
}
_TAG_TYPES = {tag: cls for cls, tag in _TYPE_TAGS.items()}


def event_to_dict(event: ControlEvent) -> dict:
    d = {"type": _TYPE_TAGS[type(event)], "t_ms": event.t_ms}
    if isinstance(event, PointerDelta):
        d["dx"] = event.dx
        d["dy"] = event.dy
    elif isinstance(event, ZDelta):
        d["dz"] = event.dz
    return d


def event_from_dict(d: dict) -> ControlEvent:
    try:
        cls = _TAG_TYPES[d["type"]]
    except KeyError:
        raise ValueError(f"unknown event type {d.get('type')!r}")
    if cls is PointerDelta:
        return PointerDelta(d["t_ms"], d["dx"], d["dy"])
    if cls is ZDelta:
        return ZDelta(d["t_ms"], d["dz"])
    return cls(d["t_ms"])
