"""Uncertainty inequalities for the wave packet transform.

Three families are checked numerically against a transform map W of a
signal f with wavelet psi (unit L2 norm):

* Heisenberg:   int t^2|f|^2 dt * intint xi^2|W|^2 dxi dbeta
                    >= ( ||f||^2 ||psi|| / (2|b|) )^2
* Lieb (p>=2):  intint |W|^p dxi dbeta
                    <= (2/p) * M^p * (||f||_2 ||psi||_2)^p,
                M = (2*pi)**-0.5 * |b|**(1/2 - 1/p)
* logarithmic:  ||psi||^2 int ln|t| |f|^2 dt + intint ln|xi| |W|^2
                    >= (digamma(1/4) - ln pi - ln|b|) ||f||^2 ||psi||^2

The verifiers never clip: measured violations are reported with their
full ratios.  The Lieb bound with the constant above is known to fail
at p = 2 (it contradicts the transform's energy conservation); the
check's job is to surface that, not to hide it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import SampledSignal, digamma_quarter, lp_norm, trapezoid_weights
from .qpft import ParameterSet, parse_preset
from .qpwpt import TFMap, default_mother_grid
from .wavelet import WaveletSpec, mother

__all__ = [
    "UncertaintyResult",
    "MomentTruncationError",
    "heisenberg_rhs",
    "heisenberg_check",
    "lieb_check",
    "log_check",
    "heisenberg_preset_bounds",
    "time_log_moment",
    "xi_log_moment",
]

_SLACK = 1e-9


class MomentTruncationError(ValueError):
    """A second-moment integrand has non-negligible mass at a grid edge."""


@dataclass(frozen=True)
class UncertaintyResult:
    """Both sides of an inequality plus the direction-aware verdict.

    ``ratio`` is lhs/rhs for >=-type inequalities and rhs/lhs for
    <=-type, so ratio >= 1 means the inequality holds with margin.
    """

    lhs: float
    rhs: float
    ratio: float
    inequality_kind: str
    passed: bool

    def as_dict(self) -> dict:
        return {
            "kind": self.inequality_kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "passed": bool(self.passed),
        }


def _psi_norm(spec: WaveletSpec, p: float = 2.0) -> float:
    return lp_norm(mother(spec, default_mother_grid()), p)


def _check_tail(profile: np.ndarray, what: str):
    peak = float(np.max(profile))
    if peak <= 0:
        return
    edge = max(profile[0], profile[-1])
    if edge > 1e-10 * peak:
        raise MomentTruncationError(
            f"{what} has edge/peak = {edge / peak:.3e} > 1e-10; widen the grid"
        )


def _xi_energy_profile(W: TFMap) -> np.ndarray:
    """Marginal over beta of |W|^2, one value per xi node."""
    wbeta = trapezoid_weights(W.tf.beta_grid)
    return np.abs(W.values) ** 2 @ wbeta


def heisenberg_rhs(mu: ParameterSet, f_norm_sq: float = 1.0,
                   psi_norm: float = 1.0) -> float:
    """The Heisenberg lower bound ( ||f||^2 ||psi|| / (2|b|) )^2.

    The preset bounds are this same expression evaluated at the preset
    parameter sets.
    """
    return (f_norm_sq * psi_norm / (2.0 * abs(mu.b))) ** 2


def heisenberg_check(f: SampledSignal, W: TFMap,
                     spec: WaveletSpec) -> UncertaintyResult:
    """Product of time and transform-frequency second moments against the
    1/(2|b|) lower bound."""
    t = f.grid.points
    t_integrand = t * t * np.abs(f.values) ** 2
    _check_tail(t_integrand, "t^2 |f|^2")
    t_moment = float(np.sum(trapezoid_weights(f.grid) * t_integrand))

    xi = W.tf.xi_grid.points
    xi_profile = xi * xi * _xi_energy_profile(W)
    _check_tail(xi_profile, "xi^2 |W|^2")
    xi_moment = float(np.sum(trapezoid_weights(W.tf.xi_grid) * xi_profile))

    lhs = t_moment * xi_moment
    rhs = heisenberg_rhs(W.mu, lp_norm(f, 2.0) ** 2, _psi_norm(spec))
    ratio = lhs / rhs if rhs > 0 else np.inf
    return UncertaintyResult(
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        inequality_kind="heisenberg",
        passed=lhs >= rhs * (1.0 - _SLACK),
    )


def lieb_check(f: SampledSignal, W: TFMap, spec: WaveletSpec,
               p: float) -> UncertaintyResult:
    """intint |W|^p against (2/p) M^p (||f|| ||psi||)^p, for p >= 2.

    The constant is checked exactly as stated.  At p = 2 the stated
    bound is 1/(2*pi) times the conserved energy, so a unit-energy map
    violates it; the result records that violation.
    """
    if p < 2:
        raise ValueError(f"lieb_check requires 2 <= p < inf, got {p}")
    wxi = trapezoid_weights(W.tf.xi_grid)
    wbeta = trapezoid_weights(W.tf.beta_grid)
    lhs = float(wxi @ np.abs(W.values) ** p @ wbeta)
    m_mu = (2.0 * np.pi) ** -0.5 * abs(W.mu.b) ** (0.5 - 1.0 / p)
    rhs = (2.0 / p) * m_mu ** p * (lp_norm(f, 2.0) * _psi_norm(spec)) ** p
    ratio = rhs / lhs if lhs > 0 else np.inf
    return UncertaintyResult(
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        inequality_kind=f"lieb:{p:g}",
        passed=lhs <= rhs * (1.0 + _SLACK),
    )


def _xlnx(x: np.ndarray) -> np.ndarray:
    """x * ln|x| with the limit value 0 at x = 0."""
    out = np.zeros_like(x)
    nz = x != 0.0
    out[nz] = x[nz] * np.log(np.abs(x[nz]))
    return out


def _log_weighted_integral(points: np.ndarray, step: float, y: np.ndarray) -> float:
    """int ln|t| y(t) dt on a uniform grid by product integration.

    The log factor is integrated in closed form against the piecewise
    linear interpolant of y on every cell, so the integrable singularity
    at the origin costs no accuracy: the error is the O(step^2)
    interpolation error of y alone.  A plain trapezoid rule here would
    be first order (ln has unbounded derivatives near 0), and a node at
    t = 0 would be infinite.
    """
    a = points[:-1]
    b = points[1:]
    ya = y[:-1]
    yb = y[1:]
    # antiderivatives: int ln|t| dt = t ln|t| - t,
    #                  int t ln|t| dt = t^2/2 ln|t| - t^2/4
    i1 = (_xlnx(b) - b) - (_xlnx(a) - a)
    i2 = 0.25 * ((_xlnx(b * b) - b * b) - (_xlnx(a * a) - a * a))
    cells = ya * i1 + (yb - ya) / step * (i2 - a * i1)
    return float(np.sum(cells))


def time_log_moment(f: SampledSignal) -> float:
    """int ln|t| |f(t)|^2 dt; the singular cell at the origin is handled
    analytically, and a node exactly at t = 0 carries no log value."""
    return _log_weighted_integral(
        f.grid.points, f.grid.step, np.abs(f.values) ** 2
    )


def xi_log_moment(W: TFMap) -> float:
    """intint ln|xi| |W|^2 dxi dbeta with the same origin handling."""
    return _log_weighted_integral(
        W.tf.xi_grid.points, W.tf.xi_grid.step, _xi_energy_profile(W)
    )


def log_check(f: SampledSignal, W: TFMap, spec: WaveletSpec) -> UncertaintyResult:
    """Logarithmic moments against (digamma(1/4) - ln pi - ln|b|) times
    the squared norms."""
    psi2 = _psi_norm(spec) ** 2
    lhs = psi2 * time_log_moment(f) + xi_log_moment(W)
    rhs = (
        (digamma_quarter() - np.log(np.pi) - np.log(abs(W.mu.b)))
        * lp_norm(f, 2.0) ** 2
        * psi2
    )
    ratio = lhs / rhs if rhs != 0 else np.inf
    return UncertaintyResult(
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        inequality_kind="logarithmic",
        passed=lhs >= rhs - _SLACK * abs(rhs),
    )


def heisenberg_preset_bounds(preset) -> float:
    """Specialized Heisenberg lower bound for a preset, at unit norms.

    Accepts a preset spec string (see ``qpft.parse_preset``) or a
    ParameterSet; evaluates the general bound at the substituted
    parameters, so specialization consistency is exact by construction.
    Linear canonical lct:a,b,c gives (|b|/2)^2, fractional frft:theta
    gives (sin(theta)/2)^2, the classical preset gives 1/4.
    """
    mu = preset if isinstance(preset, ParameterSet) else parse_preset(preset)
    return heisenberg_rhs(mu, 1.0, 1.0)
