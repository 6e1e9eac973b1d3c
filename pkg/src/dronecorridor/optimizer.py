"""Uptilt angle selection: minimize the closed-form outage probability.

The outage curve is V-shaped over the feasible uptilt interval (verified
empirically; it is not globally convex, the rising tail flattens), so a
derivative-free golden-section search is the default. A bisection on the
analytic derivative and an exhaustive fine grid are available as
cross-checks; all three must land on the same minimum value.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .analysis import outage
from .geometry import BeamConfig, CorridorGeometry

DEFAULT_MARGIN = math.radians(0.05)  # keeps cot/csc finite at the interval ends
GOLDEN_TOL = 1e-7          # rad, final bracket width
GRID_STEP = math.radians(0.01)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class OptimizeMethod(Enum):
    GOLDEN_SECTION = "golden"
    DERIVATIVE_BISECTION = "bisect"
    GRID = "grid"


@dataclass(frozen=True)
class OptimizeResult:
    alpha_star: float        # rad
    outage_at_star: float
    iterations: int
    method: OptimizeMethod
    at_boundary: bool = False


def feasible_interval(beta: float, margin: float = DEFAULT_MARGIN) -> tuple[float, float]:
    """Open uptilt interval (margin, pi/2 - beta - margin) for a width-beta beam."""
    if beta <= 0:
        raise ValueError(f"beamwidth must be positive, got {beta}")
    lo = margin
    hi = math.pi / 2 - beta - margin
    if hi <= lo:
        raise ValueError(
            f"no feasible uptilt: beamwidth {math.degrees(beta):.4g} deg leaves "
            f"an empty interval at margin {math.degrees(margin):.4g} deg"
        )
    return lo, hi


def _golden(f, lo: float, hi: float, tol: float) -> tuple[float, int]:
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    iterations = 2
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        iterations += 1
    return 0.5 * (a + b), iterations


def _derivative_bisection(f, g, lo: float, hi: float) -> tuple[float, int, bool]:
    # bracket a -/+ sign change of the derivative on a coarse scan, then bisect
    scan = 256
    step = (hi - lo) / scan
    alphas = [lo + i * step for i in range(scan + 1)]
    derivs = [g(a) for a in alphas]
    bracket = None
    for i in range(scan):
        if derivs[i] < 0.0 < derivs[i + 1]:
            bracket = (alphas[i], alphas[i + 1])
            break
    if bracket is None:
        # monotone (or flat) outage: minimum sits at an interval end
        return (lo if f(lo) <= f(hi) else hi), scan + 1, True
    a, b = bracket
    iterations = scan + 1
    while b - a > 1e-12:
        mid = 0.5 * (a + b)
        if g(mid) < 0.0:
            a = mid
        else:
            b = mid
        iterations += 1
    return 0.5 * (a + b), iterations, False


def _grid(f, lo: float, hi: float, step: float) -> tuple[float, int]:
    n = int((hi - lo) / step)
    best_a, best_f = hi, f(hi)
    count = 1
    for i in range(n + 1):
        a = lo + i * step
        fa = f(a)
        count += 1
        if fa < best_f:
            best_a, best_f = a, fa
    return best_a, count


def optimize_uptilt(geom: CorridorGeometry, beam_template: BeamConfig,
                    method: OptimizeMethod = OptimizeMethod.GOLDEN_SECTION,
                    margin: float = DEFAULT_MARGIN,
                    grid_step: float = GRID_STEP) -> OptimizeResult:
    """Uptilt angle minimizing outage for the template's beamwidth and gain."""
    lo, hi = feasible_interval(beam_template.beta, margin)

    def f(alpha: float) -> float:
        return outage(geom, BeamConfig(alpha, beam_template.beta, beam_template.gain)).probability

    def g(alpha: float) -> float:
        return outage(geom, BeamConfig(alpha, beam_template.beta, beam_template.gain)).derivative_wrt_alpha

    at_boundary = False
    if method is OptimizeMethod.GOLDEN_SECTION:
        alpha_star, iterations = _golden(f, lo, hi, GOLDEN_TOL)
    elif method is OptimizeMethod.DERIVATIVE_BISECTION:
        alpha_star, iterations, at_boundary = _derivative_bisection(f, g, lo, hi)
    elif method is OptimizeMethod.GRID:
        alpha_star, iterations = _grid(f, lo, hi, grid_step)
    else:
        raise ValueError(f"unknown method {method!r}")

    alpha_star = min(max(alpha_star, lo), hi)
    return OptimizeResult(alpha_star=alpha_star, outage_at_star=f(alpha_star),
                          iterations=iterations, method=method,
                          at_boundary=at_boundary)
