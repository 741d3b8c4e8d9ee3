"""CSV readers and writers for grids and matrices.

Grid files carry a header ``x,value`` (density) or ``x,re,im`` (wave
function); the ``x`` column lists cell midpoints on a uniform grid. Matrix
files hold one row per line with entries such as ``0.5`` or ``0.5+0.5j``.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

from .core import GriddedDensity, GriddedWaveFunction
from .errors import IturError, ParseError
from .matgeo import TransformMatrix

SPACING_TOL = 1e-6


def _read_rows(source) -> list[list[str]]:
    text = Path(source).read_text() if not hasattr(source, "read") else source.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty file")
    return [[c.strip() for c in r] for r in rows]


def _floats(rows, ncol: int, start: int = 1) -> np.ndarray:
    try:
        data = np.array([[float(c) for c in r] for r in rows[start:]], dtype=float)
    except ValueError as exc:
        raise ParseError(f"non-numeric entry: {exc}") from None
    if data.ndim != 2 or data.shape[1] != ncol or data.shape[0] < 1:
        raise ParseError(f"expected {ncol} columns of data")
    return data


def _grid_from_x(x: np.ndarray) -> tuple[float, float]:
    if x.size < 2:
        raise ParseError("a grid needs at least two points")
    steps = np.diff(x)
    l = (x[-1] - x[0]) / (x.size - 1)
    if not l > 0 or np.max(np.abs(steps - l)) > SPACING_TOL * l:
        raise ParseError("grid spacing is not uniform")
    return x[0] - 0.5 * l, x[-1] + 0.5 * l


def read_density(source, **kw) -> GriddedDensity:
    rows = _read_rows(source)
    if [h.lower() for h in rows[0]] != ["x", "value"]:
        raise ParseError(f"density files need the header 'x,value', got {','.join(rows[0])!r}")
    data = _floats(rows, 2)
    lo, hi = _grid_from_x(data[:, 0])
    try:
        return GriddedDensity(lo, hi, data[:, 1], **kw)
    except IturError as exc:
        raise ParseError(str(exc)) from exc


def read_wavefunction(source, hbar: float = 1.0, **kw) -> GriddedWaveFunction:
    rows = _read_rows(source)
    if [h.lower() for h in rows[0]] != ["x", "re", "im"]:
        raise ParseError(f"wave function files need the header 'x,re,im', got {','.join(rows[0])!r}")
    data = _floats(rows, 3)
    lo, hi = _grid_from_x(data[:, 0])
    try:
        return GriddedWaveFunction(lo, hi, data[:, 1] + 1j * data[:, 2], hbar, **kw)
    except IturError as exc:
        raise ParseError(str(exc)) from exc


def read_grid(source, hbar: float = 1.0):
    """Density or wave function, chosen by the header."""
    rows = _read_rows(source)
    header = [h.lower() for h in rows[0]]
    text = "\n".join(",".join(r) for r in rows)
    if header == ["x", "value"]:
        return read_density(io.StringIO(text))
    if header == ["x", "re", "im"]:
        return read_wavefunction(io.StringIO(text), hbar)
    raise ParseError(f"unknown grid header {','.join(rows[0])!r}")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_density(F: GriddedDensity, target) -> None:
    lines = ["x,value", *(f"{_fmt(x)},{_fmt(v)}" for x, v in zip(F.x, F.values))]
    Path(target).write_text("\n".join(lines) + "\n")


def write_wavefunction(psi: GriddedWaveFunction, target) -> None:
    lines = ["x,re,im", *(f"{_fmt(x)},{_fmt(a.real)},{_fmt(a.imag)}" for x, a in zip(psi.x, psi.amplitudes))]
    Path(target).write_text("\n".join(lines) + "\n")


def parse_entry(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    if not t:
        raise ParseError("empty matrix entry")
    try:
        return complex(t)
    except ValueError:
        raise ParseError(f"cannot parse matrix entry {text!r}") from None


def read_matrix(source) -> TransformMatrix:
    rows = _read_rows(source)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("ragged matrix rows")
    vals = np.array([[parse_entry(c) for c in r] for r in rows])
    if not np.all(np.isfinite(vals)):
        raise ParseError("matrix entries must be finite")
    if np.all(vals.imag == 0):
        vals = vals.real
    return TransformMatrix(vals)


def parse_distribution(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"cannot parse distribution {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise ParseError(f"cannot parse distribution {text!r}")
    return vals
