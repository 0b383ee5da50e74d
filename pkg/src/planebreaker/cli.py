"""Command-line entry point: one-shot plotting, point evaluation, serving.

Exit codes: 0 success, 2 parse error, 3 empty mesh (nothing within the
height range), 4 output I/O failure, 5 server bind failure.
"""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path

import click

from .expr import ExpressionError, canonical_text, evaluate, parse
from .mesh import (
    DEFAULT_COLORMAP,
    DEFAULT_SEGMENTS,
    Domain,
    Resolution,
    ZLimits,
    build_mesh,
    export_obj,
    load_colormap,
    sample_grid,
)

DEFAULT_ADDR = "127.0.0.1:8080"
ADDR_ENV_VAR = "PLANE_BREAKER_ADDR"


def _parse_or_exit(source: str):
    try:
        return parse(source)
    except ExpressionError as exc:
        click.echo(f"error: {exc.reason} at position {exc.position}", err=True)
        click.echo(f"  {source}", err=True)
        click.echo("  " + " " * exc.position + "^", err=True)
        sys.exit(2)


def _load_colormap_or_exit(path: str | None):
    if path is None:
        return DEFAULT_COLORMAP
    try:
        return load_colormap(Path(path).read_text())
    except OSError as exc:
        click.echo(f"error: cannot read colormap {path}: {exc}", err=True)
        sys.exit(4)
    except ValueError as exc:
        click.echo(f"error: bad colormap {path}: {exc}", err=True)
        sys.exit(4)


@click.group()
def main():
    """Plot z = f(x, y) surfaces and serve them to live viewers."""


@main.command()
@click.argument("expression")
@click.option("-o", "--output", "output_path", required=True, help="OBJ file to write.")
@click.option("--xmin", type=float, default=-5.0, show_default=True)
@click.option("--xmax", type=float, default=5.0, show_default=True)
@click.option("--ymin", type=float, default=-5.0, show_default=True)
@click.option("--ymax", type=float, default=5.0, show_default=True)
@click.option("--zmin", type=float, default=-5.0, show_default=True)
@click.option("--zmax", type=float, default=5.0, show_default=True)
@click.option("--segments", type=int, default=DEFAULT_SEGMENTS, show_default=True,
              help="Grid cells per axis (1-1024).")
@click.option("--colormap", "colormap_path", default=None,
              help="Colormap config file ('t r g b' rows); defaults to the built-in gradient.")
def plot(expression, output_path, xmin, xmax, ymin, ymax, zmin, zmax, segments, colormap_path):
    """Sample EXPRESSION over a domain and write a colored OBJ mesh."""
    expr = _parse_or_exit(expression)
    cmap = _load_colormap_or_exit(colormap_path)
    try:
        domain = Domain(xmin, xmax, ymin, ymax)
        z_limits = ZLimits(zmin, zmax)
        resolution = Resolution(segments)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    field = sample_grid(expr, domain, resolution)
    mesh = build_mesh(expr, field, z_limits, cmap)
    if mesh.is_empty:
        click.echo("error: no surface within the height range (empty mesh)", err=True)
        sys.exit(3)
    try:
        Path(output_path).write_text(export_obj(mesh))
    except OSError as exc:
        click.echo(f"error: cannot write {output_path}: {exc}", err=True)
        sys.exit(4)
    click.echo(mesh.label)
    click.echo(f"{mesh.vertex_count} vertices, {mesh.triangle_count} triangles -> {output_path}")


def _parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise click.BadParameter("expected 'x,y'", param_hint="--at")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise click.BadParameter("expected two numbers 'x,y'", param_hint="--at")


@main.command("eval")
@click.argument("expression")
@click.option("--at", "point", required=True, help="Evaluation point as 'x,y'.")
def eval_command(expression, point):
    """Evaluate EXPRESSION at one point."""
    x, y = _parse_point(point)
    expr = _parse_or_exit(expression)
    value = evaluate(expr, x, y)
    click.echo("undefined" if value is None else f"{value:.6f}")


@main.command()
@click.option("--addr", default=None,
              help=f"host:port to listen on [default: ${ADDR_ENV_VAR} or {DEFAULT_ADDR}].")
@click.option("--static-dir", default=None,
              help="Directory with the viewer UI bundle to serve at /.")
def serve(addr, static_dir):
    """Run the relay server (WebSocket endpoint at /ws)."""
    from .relay.server import run_server

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    addr = addr or os.environ.get(ADDR_ENV_VAR) or DEFAULT_ADDR
    host, sep, port_text = addr.rpartition(":")
    if not sep or not port_text.isdigit():
        raise click.UsageError(f"--addr must be host:port, got {addr!r}")
    sys.exit(run_server(host, int(port_text), static_dir))


if __name__ == "__main__":
    main()
