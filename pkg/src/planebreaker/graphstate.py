"""Axis manipulation state machine.

Holds the current input domain, height limits, and sampling resolution of
one live graph, plus the defaults they reset to. Every transition is a
pure function old state -> new state; the relay serializes transitions per
session, so values can be shared freely across threads.

Pan moves the domain by 10% of the current span per step; zoom multiplies
the targeted spans by 1.25 per click (inverted for zooming in), clamped so
spans stay within [1e-3, 1e6].
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

from .expr import Expression, free_variables
from .mesh import (
    DEFAULT_DOMAIN,
    DEFAULT_RESOLUTION,
    DEFAULT_Z_LIMITS,
    SPAN_MAX,
    SPAN_MIN,
    Domain,
    Resolution,
    ZLimits,
)

PAN_STEP_FRACTION = 0.1
ZOOM_FACTOR = 1.25
STEP_LIMIT = 100


class ZoomDirection(Enum):
    IN = "in"
    OUT = "out"


class AxisTarget(Enum):
    INPUT_DOMAIN = "input_domain"
    Z_AXIS = "z_axis"


@dataclass(frozen=True)
class Pan:
    dx_steps: int
    dy_steps: int


@dataclass(frozen=True)
class Zoom:
    direction: ZoomDirection
    target: AxisTarget


@dataclass(frozen=True)
class Reset:
    pass


ViewCommand = Union[Pan, Zoom, Reset]


class CommandError(ValueError):
    """Raised for malformed or out-of-bound view commands."""


@dataclass(frozen=True)
class GraphDefaults:
    domain: Domain
    z_limits: ZLimits
    resolution: Resolution


@dataclass(frozen=True)
class GraphState:
    domain: Domain
    z_limits: ZLimits
    resolution: Resolution
    defaults: GraphDefaults
    equation: Optional[Expression] = None

    @classmethod
    def initial(
        cls,
        domain: Domain = DEFAULT_DOMAIN,
        z_limits: ZLimits = DEFAULT_Z_LIMITS,
        resolution: Resolution = DEFAULT_RESOLUTION,
    ) -> "GraphState":
        return cls(
            domain=domain,
            z_limits=z_limits,
            resolution=resolution,
            defaults=GraphDefaults(domain, z_limits, resolution),
        )


def pan(state: GraphState, dx_steps: int, dy_steps: int) -> GraphState:
    """Translate the domain by 10% of each span per step; spans unchanged."""
    d = state.domain
    dx = dx_steps * PAN_STEP_FRACTION * d.x_span
    dy = dy_steps * PAN_STEP_FRACTION * d.y_span
    moved = Domain(d.x_min + dx, d.x_max + dx, d.y_min + dy, d.y_max + dy)
    return replace(state, domain=moved)


def _scaled(lo: float, hi: float, factor: float) -> tuple[float, float]:
    mid = (lo + hi) / 2.0
    span = (hi - lo) * factor
    span = min(max(span, SPAN_MIN), SPAN_MAX)
    half = span / 2.0
    return mid - half, mid + half


def zoom(state: GraphState, direction: ZoomDirection, target: AxisTarget) -> GraphState:
    """Scale the targeted axis spans about their midpoints."""
    factor = 1.0 / ZOOM_FACTOR if direction is ZoomDirection.IN else ZOOM_FACTOR
    if target is AxisTarget.INPUT_DOMAIN:
        d = state.domain
        x_lo, x_hi = _scaled(d.x_min, d.x_max, factor)
        y_lo, y_hi = _scaled(d.y_min, d.y_max, factor)
        return replace(state, domain=Domain(x_lo, x_hi, y_lo, y_hi))
    z_lo, z_hi = _scaled(state.z_limits.z_min, state.z_limits.z_max, factor)
    return replace(state, z_limits=ZLimits(z_lo, z_hi))


def reset(state: GraphState) -> GraphState:
    """Restore domain, height limits, and resolution to the session defaults."""
    d = state.defaults
    return replace(state, domain=d.domain, z_limits=d.z_limits, resolution=d.resolution)


def set_equation(state: GraphState, expr: Expression) -> GraphState:
    """Swap the plotted equation; the axis frame persists across edits."""
    extra = free_variables(expr) - {"x", "y"}
    if extra:  # parse() already guarantees this; defense in depth
        raise ValueError(f"equation uses unsupported variables: {sorted(extra)}")
    return replace(state, equation=expr)


def apply_command(state: GraphState, command: ViewCommand) -> GraphState:
    """Dispatch a view command; raises CommandError on out-of-bound steps."""
    if isinstance(command, Pan):
        for steps in (command.dx_steps, command.dy_steps):
            if not isinstance(steps, int) or isinstance(steps, bool):
                raise CommandError("pan steps must be integers")
            if not -STEP_LIMIT <= steps <= STEP_LIMIT:
                raise CommandError(f"pan steps must be within [-{STEP_LIMIT}, {STEP_LIMIT}]")
        return pan(state, command.dx_steps, command.dy_steps)
    if isinstance(command, Zoom):
        return zoom(state, command.direction, command.target)
    if isinstance(command, Reset):
        return reset(state)
    raise CommandError(f"unknown command {command!r}")
