"""Mother wavelets and the chirp-modulated, scaled, translated family

    psi[mu, beta, alpha](t) = alpha**-0.5 * psi((t - beta)/alpha)
                              * exp(-i*a*(t^2 - beta^2) - i*d*(t - beta)).

Scale uses the L2-preserving alpha**-0.5 convention so the family keeps
the mother's L2 norm for every (mu, beta, alpha); the L1 variant
(1/alpha) is available behind the ``scaling`` flag for experimentation.
Mother wavelets are L2-normalized in closed form.  Admissibility is not
required anywhere in this toolkit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import Grid, SampledSignal, TruncationError
from .qpft import ParameterSet

__all__ = [
    "WaveletSpec",
    "QPWaveletAtom",
    "gaussian_window",
    "mexican_hat",
    "morlet",
    "parse_wavelet",
    "format_wavelet",
    "mother_function",
    "mother",
    "qp_atom",
]

_KINDS = ("gaussian", "mexican_hat", "morlet")


@dataclass(frozen=True)
class WaveletSpec:
    """Mother wavelet choice; L2-unit normalization is fixed."""

    kind: str
    omega0: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown wavelet kind {self.kind!r}")
        if self.kind == "morlet":
            if self.omega0 is None or self.omega0 <= 0:
                raise ValueError("morlet needs a positive center frequency")
        elif self.omega0 is not None:
            raise ValueError(f"{self.kind} takes no frequency parameter")


def gaussian_window() -> WaveletSpec:
    return WaveletSpec("gaussian")


def mexican_hat() -> WaveletSpec:
    return WaveletSpec("mexican_hat")


def morlet(omega0: float = 5.0) -> WaveletSpec:
    return WaveletSpec("morlet", float(omega0))


def parse_wavelet(text: str) -> WaveletSpec:
    """Parse the CLI/config form: gaussian | mexican_hat | morlet:omega0."""
    name, _, argstr = text.partition(":")
    if name == "morlet":
        return morlet(float(argstr)) if argstr else morlet()
    if argstr:
        raise ValueError(f"wavelet {name!r} takes no parameter")
    if name in ("gaussian", "mexican_hat"):
        return WaveletSpec(name)
    raise ValueError(f"unknown wavelet {name!r}")


def format_wavelet(spec: WaveletSpec) -> str:
    if spec.kind == "morlet":
        return f"morlet:{spec.omega0}"
    return spec.kind


@dataclass(frozen=True)
class QPWaveletAtom:
    """Index (mu, beta, alpha) of one family member; alpha > 0."""

    mu: ParameterSet
    beta: float
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"scale alpha must be > 0, got {self.alpha}")


def mother_function(spec: WaveletSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Unit-L2-norm mother wavelet as a callable over time arrays."""
    if spec.kind == "gaussian":
        c = math.pi ** -0.25
        return lambda t: (c * np.exp(-0.5 * np.square(t))).astype(np.complex128)
    if spec.kind == "mexican_hat":
        c = 2.0 / math.sqrt(3.0) * math.pi ** -0.25
        return lambda t: (
            c * (1.0 - np.square(t)) * np.exp(-0.5 * np.square(t))
        ).astype(np.complex128)
    # morlet with the zero-mean correction kappa; closed-form norm
    w0 = spec.omega0
    kappa = math.exp(-0.5 * w0 * w0)
    norm_sq = math.sqrt(math.pi) * (
        1.0 + kappa * kappa - 2.0 * kappa * math.exp(-0.25 * w0 * w0)
    )
    c = norm_sq ** -0.5
    return lambda t: c * (np.exp(1j * w0 * t) - kappa) * np.exp(-0.5 * np.square(t))


def mother(spec: WaveletSpec, grid: Grid) -> SampledSignal:
    """Sample the mother wavelet; the grid must cover its support.

    Raises TruncationError when either edge sample exceeds 1e-6 of the
    peak magnitude.
    """
    vals = mother_function(spec)(grid.points)
    peak = float(np.max(np.abs(vals)))
    edge = max(abs(vals[0]), abs(vals[-1]))
    if edge > 1e-6 * peak:
        raise TruncationError(
            f"grid [{grid.start}, {grid.end}] truncates the {spec.kind} wavelet: "
            f"edge/peak = {edge / peak:.3e} > 1e-06"
        )
    return SampledSignal(grid, vals)


def qp_atom(
    spec: WaveletSpec,
    atom: QPWaveletAtom,
    t_grid: Grid,
    scaling: str = "l2",
) -> SampledSignal:
    """Samples of the scaled, translated, chirp-modulated wavelet.

    ``scaling="l2"`` applies alpha**-0.5 (norm-preserving, the default);
    ``scaling="l1"`` applies 1/alpha.
    """
    if scaling == "l2":
        amp = atom.alpha ** -0.5
    elif scaling == "l1":
        amp = 1.0 / atom.alpha
    else:
        raise ValueError(f"scaling must be 'l2' or 'l1', got {scaling!r}")
    t = t_grid.points
    mu = atom.mu
    base = mother_function(spec)((t - atom.beta) / atom.alpha)
    chirp = np.exp(
        -1j * mu.a * (t * t - atom.beta * atom.beta)
        - 1j * mu.d * (t - atom.beta)
    )
    return SampledSignal(t_grid, amp * base * chirp)
