"""Heightfield sampling and surface mesh construction.

The pipeline: sample a parsed expression on a regular grid over a
rectangular domain, estimate normals by central differences, color each
vertex by its relative height through a colormap, and emit two triangles
per grid cell, dropping any triangle that touches an undefined or
out-of-range sample. The result is ready for rendering or OBJ export.

Heights are stored in a float64 grid with NaN marking undefined samples;
the evaluator never returns NaN for a defined value, so the encoding is
unambiguous.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .expr import Expression, canonical_text, compile_expression

SPAN_MIN = 1e-3
SPAN_MAX = 1e6

DEFAULT_SEGMENTS = 128
TICKS_PER_AXIS = 5


@dataclass(frozen=True)
class Domain:
    """Rectangular (x, y) region the function is sampled over."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if not self.y_min < self.y_max:
            raise ValueError("y_min must be < y_max")

    @property
    def x_span(self) -> float:
        return self.x_max - self.x_min

    @property
    def y_span(self) -> float:
        return self.y_max - self.y_min


@dataclass(frozen=True)
class ZLimits:
    """Visible height range; samples outside it are clipped."""

    z_min: float
    z_max: float

    def __post_init__(self):
        for name in ("z_min", "z_max"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError("z limits must be finite")
            object.__setattr__(self, name, value)
        if not self.z_min < self.z_max:
            raise ValueError("z_min must be < z_max")

    @property
    def span(self) -> float:
        return self.z_max - self.z_min


@dataclass(frozen=True)
class Resolution:
    """Sampling density: number of grid cells per axis."""

    segments: int

    def __post_init__(self):
        if not isinstance(self.segments, int) or isinstance(self.segments, bool):
            raise ValueError("segments must be an integer")
        if not 1 <= self.segments <= 1024:
            raise ValueError("segments must be in [1, 1024]")


DEFAULT_DOMAIN = Domain(-5.0, 5.0, -5.0, 5.0)
DEFAULT_Z_LIMITS = ZLimits(-5.0, 5.0)
DEFAULT_RESOLUTION = Resolution(DEFAULT_SEGMENTS)


def _axis_coords(lo: float, hi: float, segments: int) -> np.ndarray:
    step = (hi - lo) / segments
    coords = lo + step * np.arange(segments + 1, dtype=np.float64)
    coords[0] = lo
    coords[-1] = hi  # both endpoints exact, no accumulated rounding
    return coords


class HeightField:
    """Grid of sampled heights over a domain.

    ``values[i, j]`` is the height at ``(xs[i], ys[j])``; NaN marks an
    undefined sample. ``nx`` and ``ny`` are both ``segments + 1``.
    """

    def __init__(self, domain: Domain, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError("values must be a square 2-D grid")
        if values.shape[0] < 2:
            raise ValueError("need at least 2 samples per axis")
        self.domain = domain
        self.values = values
        self.nx, self.ny = values.shape
        self.segments = self.nx - 1
        self.xs = _axis_coords(domain.x_min, domain.x_max, self.segments)
        self.ys = _axis_coords(domain.y_min, domain.y_max, self.segments)

    def value_at(self, i: int, j: int) -> Optional[float]:
        v = self.values[i, j]
        return None if math.isnan(v) else float(v)

    @property
    def x_step(self) -> float:
        return self.domain.x_span / self.segments

    @property
    def y_step(self) -> float:
        return self.domain.y_span / self.segments


def sample_grid(expr: Expression, domain: Domain, resolution: Resolution) -> HeightField:
    """Evaluate ``expr`` at every grid point; undefined samples become NaN.

    Grid points are ``x_i = x_min + i * x_span / segments`` (endpoints hit
    exactly), sampled with the same scalar evaluator ``evaluate`` uses.
    """
    segments = resolution.segments
    fn = compile_expression(expr)
    xs = _axis_coords(domain.x_min, domain.x_max, segments).tolist()
    ys = _axis_coords(domain.y_min, domain.y_max, segments).tolist()
    nan = math.nan
    rows = []
    for x in xs:
        rows.append([nan if (v := fn(x, y)) is None else v for y in ys])
    return HeightField(domain, np.array(rows, dtype=np.float64))


def compute_normals(field: HeightField) -> np.ndarray:
    """Per-sample unit normals, shape (nx, ny, 3).

    Partials use central differences where both neighbors are defined,
    one-sided differences at borders and next to undefined samples, and 0
    where no defined neighbor exists. Undefined samples get the
    placeholder normal (0, 0, 1).
    """
    z = field.values
    nx, ny = z.shape
    defined = np.isfinite(z)

    def partial(axis: int, step: float) -> np.ndarray:
        plus = np.full_like(z, np.nan)
        minus = np.full_like(z, np.nan)
        if axis == 0:
            plus[:-1, :] = z[1:, :]
            minus[1:, :] = z[:-1, :]
        else:
            plus[:, :-1] = z[:, 1:]
            minus[:, 1:] = z[:, :-1]
        ok_plus = np.isfinite(plus)
        ok_minus = np.isfinite(minus)
        with np.errstate(invalid="ignore"):
            central = (plus - minus) / (2.0 * step)
            forward = (plus - z) / step
            backward = (z - minus) / step
        out = np.zeros_like(z)
        both = ok_plus & ok_minus
        out = np.where(both, central, out)
        out = np.where(ok_plus & ~ok_minus, forward, out)
        out = np.where(ok_minus & ~ok_plus, backward, out)
        return np.where(defined, out, 0.0)

    dzdx = partial(0, field.x_step)
    dzdy = partial(1, field.y_step)
    normals = np.empty((nx, ny, 3), dtype=np.float64)
    normals[..., 0] = -dzdx + 0.0  # + 0.0 avoids -0.0 components
    normals[..., 1] = -dzdy + 0.0
    normals[..., 2] = 1.0
    lengths = np.sqrt(np.sum(normals * normals, axis=-1, keepdims=True))
    normals /= lengths
    normals[~defined] = (0.0, 0.0, 1.0)
    return normals


# --------------------------------------------------------------------------
# Colormap

@dataclass(frozen=True)
class ColorMap:
    """Piecewise-linear gradient over [0, 1].

    ``stops`` is an ordered tuple of (t, (r, g, b)) with t strictly
    increasing from 0 to 1 and channels in [0, 1].
    """

    stops: tuple[tuple[float, tuple[float, float, float]], ...]

    def __post_init__(self):
        if len(self.stops) < 2:
            raise ValueError("colormap needs at least 2 stops")
        ts = [t for t, _ in self.stops]
        if ts[0] != 0.0 or ts[-1] != 1.0:
            raise ValueError("colormap must start at t=0 and end at t=1")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("colormap stops must be strictly increasing")
        for _, rgb in self.stops:
            if len(rgb) != 3 or any(not 0.0 <= c <= 1.0 for c in rgb):
                raise ValueError("colors must be three channels in [0, 1]")


DEFAULT_COLORMAP = ColorMap((
    (0.00, (0.267004, 0.004874, 0.329415)),
    (0.25, (0.229739, 0.322361, 0.545706)),
    (0.50, (0.127568, 0.566949, 0.550556)),
    (0.75, (0.369214, 0.788888, 0.382914)),
    (1.00, (0.993248, 0.906157, 0.143936)),
))


def map_color(cmap: ColorMap, t: float) -> tuple[float, float, float]:
    """Color at ``t``, clamped to [0, 1] and interpolated between stops."""
    stops = cmap.stops
    if t <= stops[0][0]:
        return stops[0][1]
    if t >= stops[-1][0]:
        return stops[-1][1]
    ts = [s[0] for s in stops]
    hi = bisect_right(ts, t)
    t0, c0 = stops[hi - 1]
    t1, c1 = stops[hi]
    w = (t - t0) / (t1 - t0)
    return tuple(a + (b - a) * w for a, b in zip(c0, c1))


def _map_colors(cmap: ColorMap, ts: np.ndarray) -> np.ndarray:
    ts = np.clip(ts, 0.0, 1.0)
    knots = np.array([t for t, _ in cmap.stops])
    channels = np.array([rgb for _, rgb in cmap.stops])
    out = np.empty((len(ts), 3), dtype=np.float64)
    for c in range(3):
        out[:, c] = np.interp(ts, knots, channels[:, c])
    return out


def load_colormap(text: str) -> ColorMap:
    """Parse a colormap config: one ``t r g b`` row per stop.

    Blank lines and lines starting with ``#`` are ignored.
    """
    stops = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 't r g b', got {line!r}")
        t, r, g, b = (float(p) for p in parts)
        stops.append((t, (r, g, b)))
    return ColorMap(tuple(stops))


def format_colormap(cmap: ColorMap) -> str:
    lines = [f"{t:g} {r:g} {g:g} {b:g}" for t, (r, g, b) in cmap.stops]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Axes

@dataclass(frozen=True)
class Tick:
    value: float
    label: str


@dataclass(frozen=True)
class Axis:
    min: float
    max: float
    ticks: tuple[Tick, ...]


@dataclass(frozen=True)
class AxisMetadata:
    x: Axis
    y: Axis
    z: Axis


def _tick_label(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    if text in ("-0", ""):
        return "0"
    return text


def _make_axis(lo: float, hi: float) -> Axis:
    span = hi - lo
    values = [lo + k * span / (TICKS_PER_AXIS - 1) for k in range(TICKS_PER_AXIS)]
    values[0] = lo
    values[-1] = hi
    return Axis(lo, hi, tuple(Tick(v, _tick_label(v)) for v in values))


def build_axes(domain: Domain, z_limits: ZLimits) -> AxisMetadata:
    """Five evenly spaced ticks per axis, endpoints included."""
    return AxisMetadata(
        x=_make_axis(domain.x_min, domain.x_max),
        y=_make_axis(domain.y_min, domain.y_max),
        z=_make_axis(z_limits.z_min, z_limits.z_max),
    )


# --------------------------------------------------------------------------
# Mesh

@dataclass(eq=False)
class SurfaceMesh:
    """Triangle mesh of the visible (defined, in-range) part of a surface.

    ``positions``/``normals``/``colors`` are (N, 3) float arrays over the
    same vertex order; ``indices`` is (T, 3) with counter-clockwise winding
    seen from +z. An empty mesh (zero triangles) means no surface lies in
    the current height range; that is a displayable state, not an error.
    """

    positions: np.ndarray
    normals: np.ndarray
    colors: np.ndarray
    indices: np.ndarray
    axes: AxisMetadata
    label: str

    @property
    def vertex_count(self) -> int:
        return len(self.positions)

    @property
    def triangle_count(self) -> int:
        return len(self.indices)

    @property
    def is_empty(self) -> bool:
        return len(self.indices) == 0


def build_mesh(
    expr: Expression,
    field: HeightField,
    z_limits: ZLimits,
    cmap: ColorMap = DEFAULT_COLORMAP,
) -> SurfaceMesh:
    """Build the clipped, colored, reindexed mesh for a sampled field.

    A vertex is emitted iff its sample is defined and within the height
    range; each grid cell contributes the two triangles split along its
    (i, j) -> (i+1, j+1) diagonal, and a triangle survives only if all
    three of its vertices were emitted.
    """
    z = field.values
    nx, ny = z.shape
    with np.errstate(invalid="ignore"):
        emitted = np.isfinite(z) & (z >= z_limits.z_min) & (z <= z_limits.z_max)

    index_of = np.full((nx, ny), -1, dtype=np.int64)
    index_of[emitted] = np.arange(int(emitted.sum()))

    xg, yg = np.meshgrid(field.xs, field.ys, indexing="ij")
    positions = np.column_stack((xg[emitted], yg[emitted], z[emitted]))

    normals = compute_normals(field)[emitted]

    t = (z[emitted] - z_limits.z_min) / z_limits.span
    colors = _map_colors(cmap, t)

    # corner indices per cell: a=(i,j) b=(i+1,j) c=(i+1,j+1) d=(i,j+1)
    a = index_of[:-1, :-1]
    b = index_of[1:, :-1]
    c = index_of[1:, 1:]
    d = index_of[:-1, 1:]
    tris = np.stack(
        (
            np.stack((a, b, c), axis=-1),
            np.stack((a, c, d), axis=-1),
        ),
        axis=-2,
    ).reshape(-1, 3)
    indices = tris[(tris >= 0).all(axis=1)].astype(np.int32)

    return SurfaceMesh(
        positions=positions,
        normals=normals,
        colors=colors,
        indices=indices,
        axes=build_axes(field.domain, z_limits),
        label=canonical_text(expr),
    )


def export_obj(mesh: SurfaceMesh) -> str:
    """Wavefront OBJ text with the vertex-color extension.

    ``v x y z r g b`` and ``vn`` lines with 6 fractional digits, faces as
    1-based ``f i//i j//j k//k``, and a comment header carrying the label.
    """
    lines = [
        f"# {mesh.label}",
        f"# vertices: {mesh.vertex_count} triangles: {mesh.triangle_count}",
    ]
    for (x, y, z), (r, g, b) in zip(mesh.positions, mesh.colors):
        lines.append(f"v {x:.6f} {y:.6f} {z:.6f} {r:.6f} {g:.6f} {b:.6f}")
    for nx_, ny_, nz_ in mesh.normals:
        lines.append(f"vn {nx_:.6f} {ny_:.6f} {nz_:.6f}")
    for i, j, k in mesh.indices:
        lines.append(f"f {i + 1}//{i + 1} {j + 1}//{j + 1} {k + 1}//{k + 1}")
    return "\n".join(lines) + "\n"
