"""Uniform grids, complex trapezoid quadrature, norms and inner products.

Everything downstream (transforms, time-frequency maps, inequality
verifiers) integrates with the composite trapezoid rule on a uniform
grid, so discretization error is consistent across both sides of every
identity checked by the toolkit.  Double integrals over (xi, beta) are
iterated 1-D trapezoid rules.

All functions are pure and operate on immutable inputs; values are safe
to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "SampledSignal",
    "VerificationReport",
    "GridMismatchError",
    "TruncationError",
    "integrate",
    "trapezoid_weights",
    "inner_product",
    "lp_norm",
    "digamma_quarter",
    "relative_deviation",
]

# digamma(1/4) = -euler_gamma - pi/2 - 3*ln(2), precomputed to full
# double precision and frozen here so no special-function dependency is
# needed at runtime.
_DIGAMMA_QUARTER = -4.2274535333762654081


class GridMismatchError(ValueError):
    """Two operands were defined on incompatible grids or lengths."""


class TruncationError(ValueError):
    """A grid is too narrow for the effective support of a signal."""


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D sampling grid: point(k) = start + k*step, 0 <= k < count."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be > 0, got {self.step}")
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "count", int(self.count))

    def point(self, k: int) -> float:
        return self.start + k * self.step

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def span(self) -> float:
        """Length of the sampled interval, (count-1)*step."""
        return self.step * (self.count - 1)

    @property
    def end(self) -> float:
        return self.point(self.count - 1)

    @staticmethod
    def symmetric(half_span: float, count: int) -> "Grid":
        """Grid over [-half_span, half_span] inclusive.

        With an even count no node lands exactly on 0, which keeps
        logarithmic integrands finite by construction.
        """
        if count < 2:
            raise ValueError("count must be >= 2")
        step = 2.0 * half_span / (count - 1)
        return Grid(-half_span, step, count)


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples on a uniform grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.shape[0] != self.grid.count:
            raise GridMismatchError(
                f"expected {self.grid.count} samples, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("signal contains non-finite samples")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        if not isinstance(other, SampledSignal):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def map(self, values: np.ndarray) -> "SampledSignal":
        """New signal on the same grid."""
        return SampledSignal(self.grid, values)


@dataclass(frozen=True)
class VerificationReport:
    """Two sides of an identity or inequality plus the verdict.

    For array-valued identities ``lhs`` and ``rhs`` hold the L2 norms of
    the two sides while ``relative_deviation`` is computed from the full
    arrays.  For inequalities ``relative_deviation`` is the violation
    margin (0 when the inequality holds).
    """

    lhs: complex
    rhs: complex
    relative_deviation: float
    tolerance: float
    passed: bool
    label: str

    def as_dict(self) -> dict:
        def enc(z):
            z = complex(z)
            return z.real if z.imag == 0.0 else {"re": z.real, "im": z.imag}

        return {
            "label": self.label,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "relative_deviation": self.relative_deviation,
            "tolerance": self.tolerance,
            "passed": bool(self.passed),
        }


def trapezoid_weights(grid: Grid) -> np.ndarray:
    """Composite trapezoid weights: step everywhere, step/2 at the ends."""
    w = np.full(grid.count, grid.step)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def integrate(values: np.ndarray, grid: Grid) -> complex:
    """Composite trapezoid approximation of the integral over the grid span.

    Exact for constants and linear integrands; O(step^2) on C^2
    integrands, and far better on smooth signals that decay below
    rounding at the grid edges.
    """
    vals = np.asarray(values)
    if vals.shape != (grid.count,):
        raise GridMismatchError(
            f"values shape {vals.shape} does not match grid count {grid.count}"
        )
    return complex(np.sum(trapezoid_weights(grid) * vals))


def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """<f, g> = integral of f * conj(g); conjugate-symmetric."""
    if f.grid != g.grid:
        raise GridMismatchError("inner_product requires a common grid")
    return integrate(f.values * np.conj(g.values), f.grid)


def lp_norm(f: SampledSignal, p: float = 2.0) -> float:
    """L^p norm (integral of |f|^p) ** (1/p), p >= 1."""
    if p < 1:
        raise ValueError(f"lp_norm requires p >= 1, got {p}")
    val = integrate(np.abs(f.values) ** p, f.grid).real
    # quadrature can leak a tiny negative for the zero signal
    return float(max(val, 0.0)) ** (1.0 / p)


def digamma_quarter() -> float:
    """digamma(1/4), stored as a high-precision constant."""
    return _DIGAMMA_QUARTER


def relative_deviation(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """||lhs - rhs||_2 / max(||lhs||_2, ||rhs||_2), 0 if both vanish."""
    lhs = np.atleast_1d(np.asarray(lhs, dtype=np.complex128))
    rhs = np.atleast_1d(np.asarray(rhs, dtype=np.complex128))
    denom = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(lhs - rhs) / denom)
