"""Deterministic test-signal generators and bit-exact file I/O.

Signal CSV: header ``t,re,im``, one sample per row, shortest
round-trip decimal floats, LF line endings.

Time-frequency map: ``<prefix>.csv`` holds the squared magnitudes
(first row the beta axis, first column the xi axis) so it drops
straight into heatmap tools; ``<prefix>.json`` is the sidecar with the
parameter set, scale, grids (serialized as start/step/count, never as
point lists), wavelet, and optionally the full complex values for
lossless round trips.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite as nph

from .numerics import Grid, SampledSignal, TruncationError
from .qpft import ParameterSet
from .qpwpt import TFGrid, TFMap
from .wavelet import WaveletSpec, format_wavelet, parse_wavelet

__all__ = [
    "SignalRecipe",
    "SignalParseError",
    "TFMapFormatError",
    "gaussian",
    "hermite",
    "linear_chirp",
    "quadratic_chirp",
    "rect",
    "tone",
    "parse_recipe",
    "format_recipe",
    "generate",
    "write_signal",
    "read_signal",
    "write_tfmap",
    "read_tfmap",
]

_MAX_HERMITE = 6


class SignalParseError(ValueError):
    """Malformed signal file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class TFMapFormatError(ValueError):
    """Inconsistent or incomplete time-frequency map files."""


@dataclass(frozen=True)
class SignalRecipe:
    """Deterministic generator spec.

    kind: gaussian | hermite | linear_chirp | quadratic_chirp | rect | tone.
    The base waveform has unit L2 norm (in the continuum); ``amplitude``
    scales it and ``center`` translates it.
    """

    kind: str
    sigma: float = 1.0
    order: int = 0
    rate: float = 0.0
    width: float = 1.0
    omega: float = 0.0
    amplitude: complex = 1.0 + 0.0j
    center: float = 0.0

    def __post_init__(self):
        kinds = ("gaussian", "hermite", "linear_chirp", "quadratic_chirp",
                 "rect", "tone")
        if self.kind not in kinds:
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.kind != "rect" and not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.kind == "rect" and not self.width > 0:
            raise ValueError(f"width must be > 0, got {self.width}")
        if self.kind == "hermite" and not 0 <= self.order <= _MAX_HERMITE:
            raise ValueError(f"hermite order must be in 0..{_MAX_HERMITE}")


def gaussian(sigma: float = 1.0, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("gaussian", sigma=sigma, amplitude=amplitude, center=center)


def hermite(n: int, sigma: float = 1.0, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("hermite", sigma=sigma, order=n, amplitude=amplitude, center=center)


def linear_chirp(rate: float, sigma: float = 1.0, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("linear_chirp", sigma=sigma, rate=rate, amplitude=amplitude, center=center)


def quadratic_chirp(rate: float, sigma: float = 1.0, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("quadratic_chirp", sigma=sigma, rate=rate, amplitude=amplitude, center=center)


def rect(width: float, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("rect", width=width, amplitude=amplitude, center=center)


def tone(omega: float, sigma: float = 1.0, amplitude: complex = 1.0, center: float = 0.0) -> SignalRecipe:
    return SignalRecipe("tone", sigma=sigma, omega=omega, amplitude=amplitude, center=center)


def parse_recipe(text: str) -> SignalRecipe:
    """Parse the CLI form kind:p1[,p2], e.g. gaussian:1, hermite:2,1,
    linear_chirp:3,2, rect:2, tone:4,1."""
    name, _, argstr = text.partition(":")
    args = [float(x) for x in argstr.split(",")] if argstr else []
    try:
        if name == "gaussian":
            return gaussian(*(args or [1.0]))
        if name == "hermite":
            if not args:
                raise ValueError("hermite needs hermite:n[,sigma]")
            order = int(args[0])
            if args[0] != order:
                raise ValueError("hermite order must be an integer")
            return hermite(order, *args[1:])
        if name == "linear_chirp":
            return linear_chirp(*args)
        if name == "quadratic_chirp":
            return quadratic_chirp(*args)
        if name == "rect":
            return rect(*args)
        if name == "tone":
            return tone(*args)
    except TypeError as exc:
        raise ValueError(f"bad parameters for signal {name!r}: {argstr}") from exc
    raise ValueError(f"unknown signal kind {name!r}")


def format_recipe(recipe: SignalRecipe) -> str:
    if recipe.kind == "gaussian":
        return f"gaussian:{recipe.sigma:g}"
    if recipe.kind == "hermite":
        return f"hermite:{recipe.order},{recipe.sigma:g}"
    if recipe.kind in ("linear_chirp", "quadratic_chirp"):
        return f"{recipe.kind}:{recipe.rate:g},{recipe.sigma:g}"
    if recipe.kind == "rect":
        return f"rect:{recipe.width:g}"
    return f"tone:{recipe.omega:g},{recipe.sigma:g}"


def _hermite_fn(n: int, x: np.ndarray) -> np.ndarray:
    coeff = np.zeros(n + 1)
    coeff[n] = 1.0
    norm = (2.0 ** n * math.factorial(n) * math.sqrt(math.pi)) ** -0.5
    return norm * nph.hermval(x, coeff) * np.exp(-0.5 * x * x)


def generate(recipe: SignalRecipe, grid: Grid) -> SampledSignal:
    """Sample the recipe on the grid; deterministic, unit-norm base.

    Raises TruncationError when the waveform's magnitude at a grid edge
    exceeds 1e-6 of its peak (the grid does not cover the support).
    """
    u = grid.points - recipe.center
    s = recipe.sigma
    if recipe.kind == "gaussian":
        vals = (math.pi * s * s) ** -0.25 * np.exp(-u * u / (2.0 * s * s))
    elif recipe.kind == "hermite":
        vals = s ** -0.5 * _hermite_fn(recipe.order, u / s)
    elif recipe.kind == "linear_chirp":
        vals = (math.pi * s * s) ** -0.25 * np.exp(
            -u * u / (2.0 * s * s) + 1j * recipe.rate * u * u
        )
    elif recipe.kind == "quadratic_chirp":
        vals = (math.pi * s * s) ** -0.25 * np.exp(
            -u * u / (2.0 * s * s) + 1j * recipe.rate * u * u * u
        )
    elif recipe.kind == "rect":
        vals = np.where(np.abs(u) <= 0.5 * recipe.width,
                        recipe.width ** -0.5, 0.0).astype(np.complex128)
    else:  # tone
        vals = (math.pi * s * s) ** -0.25 * np.exp(
            -u * u / (2.0 * s * s) + 1j * recipe.omega * u
        )
    vals = np.asarray(vals, dtype=np.complex128)
    peak = float(np.max(np.abs(vals)))
    if peak > 0:
        edge = max(abs(vals[0]), abs(vals[-1]))
        if edge > 1e-6 * peak:
            raise TruncationError(
                f"grid [{grid.start}, {grid.end}] truncates the "
                f"{recipe.kind} signal: edge/peak = {edge / peak:.3e}"
            )
    return SampledSignal(grid, complex(recipe.amplitude) * vals)


# --- signal CSV --------------------------------------------------------


def write_signal(f: SampledSignal, path):
    """Write t,re,im rows; floats printed with shortest round-trip repr."""
    t = f.grid.points
    with open(path, "w", newline="\n") as fh:
        fh.write("t,re,im\n")
        for k in range(f.grid.count):
            v = f.values[k]
            fh.write(f"{float(t[k])!r},{float(v.real)!r},{float(v.imag)!r}\n")


def read_signal(path) -> SampledSignal:
    """Read a t,re,im CSV back into a signal.

    Raises SignalParseError (with the line number) for malformed rows,
    a non-uniform time column, or a header-only file.
    """
    with open(path, "r", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != "t,re,im":
        raise SignalParseError("expected header 't,re,im'", line=1)
    ts: list[float] = []
    vals: list[complex] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if raw.strip() == "":
            continue
        parts = raw.split(",")
        if len(parts) != 3:
            raise SignalParseError(
                f"expected 3 columns, got {len(parts)}", line=lineno
            )
        try:
            t, re, im = (float(p) for p in parts)
        except ValueError:
            raise SignalParseError(f"non-numeric field in {raw!r}", line=lineno) from None
        ts.append(t)
        vals.append(complex(re, im))
    if len(ts) < 2:
        raise SignalParseError("file holds no signal (need at least 2 samples)", line=len(lines))
    t_arr = np.asarray(ts)
    step = (t_arr[-1] - t_arr[0]) / (len(ts) - 1)
    if step <= 0:
        raise SignalParseError("time column must be strictly increasing", line=2)
    deviations = np.abs(np.diff(t_arr) - step)
    bad = np.nonzero(deviations > 1e-9 * abs(step))[0]
    if bad.size:
        raise SignalParseError(
            f"non-uniform time step (deviation {deviations[bad[0]]:.3e})",
            line=int(bad[0]) + 3,
        )
    grid = Grid(t_arr[0], step, len(ts))
    return SampledSignal(grid, np.asarray(vals, dtype=np.complex128))


# --- time-frequency map files ------------------------------------------


def _grid_dict(grid: Grid) -> dict:
    return {"start": grid.start, "step": grid.step, "count": grid.count}


def _grid_from_dict(d: dict) -> Grid:
    return Grid(d["start"], d["step"], d["count"])


def write_tfmap(W: TFMap, path_prefix, embed_complex: bool = True):
    """Write <prefix>.csv (|W|^2 matrix with axis row/column) and
    <prefix>.json (parameters; full complex values when embedded)."""
    prefix = str(path_prefix)
    xi = W.tf.xi_grid.points
    beta = W.tf.beta_grid.points
    power = np.abs(W.values) ** 2
    with open(prefix + ".csv", "w", newline="\n") as fh:
        fh.write("," + ",".join(repr(float(b)) for b in beta) + "\n")
        for k in range(xi.shape[0]):
            fh.write(
                repr(float(xi[k]))
                + ","
                + ",".join(repr(float(v)) for v in power[k])
                + "\n"
            )
    sidecar = {
        "schema": 1,
        "mu": {n: getattr(W.mu, n) for n in ("a", "b", "c", "d", "e")},
        "alpha": W.tf.alpha,
        "xi_grid": _grid_dict(W.tf.xi_grid),
        "beta_grid": _grid_dict(W.tf.beta_grid),
        "wavelet": format_wavelet(W.wavelet) if W.wavelet is not None else None,
    }
    if embed_complex:
        sidecar["values_re"] = W.values.real.tolist()
        sidecar["values_im"] = W.values.imag.tolist()
    with open(prefix + ".json", "w", newline="\n") as fh:
        json.dump(sidecar, fh)
        fh.write("\n")


def read_tfmap(path_prefix) -> TFMap:
    """Read a map written by ``write_tfmap``; needs the embedded complex
    values, and cross-checks the magnitude matrix shape."""
    prefix = str(path_prefix)
    with open(prefix + ".json", "r") as fh:
        sidecar = json.load(fh)
    if sidecar.get("schema") != 1:
        raise TFMapFormatError(f"unsupported sidecar schema {sidecar.get('schema')!r}")
    tf = TFGrid(
        _grid_from_dict(sidecar["xi_grid"]),
        _grid_from_dict(sidecar["beta_grid"]),
        sidecar["alpha"],
    )
    mu = ParameterSet(**sidecar["mu"])
    shape = (tf.xi_grid.count, tf.beta_grid.count)

    with open(prefix + ".csv", "r", newline="") as fh:
        rows = [r for r in fh.read().splitlines() if r.strip()]
    ncols = len(rows[0].split(",")) - 1 if rows else 0
    if len(rows) - 1 != shape[0] or ncols != shape[1]:
        raise TFMapFormatError(
            f"matrix shape {(len(rows) - 1, ncols)} does not match sidecar {shape}"
        )

    if "values_re" not in sidecar or "values_im" not in sidecar:
        raise TFMapFormatError("sidecar lacks embedded complex values")
    re = np.asarray(sidecar["values_re"], dtype=np.float64)
    im = np.asarray(sidecar["values_im"], dtype=np.float64)
    if re.shape != shape or im.shape != shape:
        raise TFMapFormatError(
            f"embedded values shape {re.shape} does not match sidecar {shape}"
        )
    wav = sidecar.get("wavelet")
    spec: WaveletSpec | None = parse_wavelet(wav) if wav else None
    return TFMap(tf, mu, re + 1j * im, wavelet=spec)
