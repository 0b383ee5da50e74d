"""Server-authoritative 3D surface plotting.

Parse ``z = f(x, y)`` equations, sample them into heightfields, build
colored and clipped triangle meshes, steer the axes through a small state
machine, and relay everything live to viewers over WebSockets while a
wizard injects equation transcriptions.
"""

from .expr import (
    Binary,
    Call,
    Constant,
    Expression,
    ExpressionError,
    LexError,
    Literal,
    ParseError,
    Unary,
    Variable,
    canonical_text,
    evaluate,
    free_variables,
    parse,
    tokenize,
)
from .graphstate import (
    AxisTarget,
    GraphState,
    Pan,
    Reset,
    ViewCommand,
    Zoom,
    ZoomDirection,
    apply_command,
    pan,
    reset,
    set_equation,
    zoom,
)
from .mesh import (
    DEFAULT_COLORMAP,
    ColorMap,
    Domain,
    HeightField,
    Resolution,
    SurfaceMesh,
    ZLimits,
    build_axes,
    build_mesh,
    compute_normals,
    export_obj,
    map_color,
    sample_grid,
)

__version__ = "0.1.0"
