"""Closed-form outage probability and average SINR over the corridor.

Outage
------
Under the rectangular beam model and a moderate SINR threshold, a UAV is
in outage exactly when the serving beam misses it (theta1 outside
(alpha, alpha+beta)); covered UAVs clear the threshold whether or not the
neighbor interferes. Averaging the served probability over the uniform
corridor distribution gives a piecewise closed form in alpha. At altitude
h the served elevation interval is

    ( max(alpha, atan(2h/d1)),  alpha+beta )

intersected with the support of theta1, and integrating the theta1
density over it yields, per altitude,

    P_served(h) = max(0, (2h/d1) * (min(cot(alpha), d1/(2h)) - cot(alpha+beta)))

The served interval switches lower limit at h3 = (d1/2)tan(alpha) and
empties above h5 = (d1/2)tan(alpha+beta) (the altitude where the beam's
upper edge leaves the corridor center), so the h-integral splits at those
altitudes and every piece is elementary. The resulting probability and
its alpha-derivative are exact for every feasible beam; on configurations
where the beam's upper edge clears the corridor (h5 >= h2) they reduce to
the familiar three-branch expressions dispatched on h3 vs [h1, h2]:

    branch c12 (h3 <= h1):      Pr_out = ((h1+h2)/d1) cot(alpha+beta)
    branch c34 (h1 < h3 < h2):  two-part integral, see outage_case34
    branch c5  (h3 >= h2):      Pr_out = 1 + ((h1+h2)/d1)(cot(alpha+beta) - cot(alpha))

Average SINR
------------
The mean linear SINR is evaluated per coverage regime with the standard
dominant-term simplifications: in case 1 every covered UAV is also
interfered, so SINR ~ (R2/R1)^2 and noise is dropped; from case 2 on only
the interference-free served region is counted, with a noise-only
denominator (SINR = k*G/(N0*R1^2)). Those per-case means are exact
expectations of the simplified integrands; dropping the interference
region's own contribution makes them lower bounds on the exact mean for
cases 2-5, while neglecting noise makes case 1 an upper bound. Note the
case-1 -> case-2 handoff is discontinuous by construction: the accounting
switches from the interference region to the (initially tiny) clean
region. The exact expectation, by contrast, is continuous in alpha; the
Monte Carlo module evaluates it.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import (
    BeamConfig,
    CaseId,
    CorridorGeometry,
    classify_case,
    crossing_heights,
    gamma_angle,
)
from .link import RadioConfig
from .quadrature import QuadratureError, integrate

__all__ = [
    "OutageBranch", "OutageResult", "AvgSinrResult",
    "outage", "outage_case12", "outage_case34", "outage_case5",
    "avg_sinr", "avg_sinr_case1", "avg_sinr_case2", "avg_sinr_case3",
    "avg_sinr_case4", "avg_sinr_case5",
    "integrate", "QuadratureError",
]


class OutageBranch(Enum):
    """Which of the three outage expressions applies (cases 1-2, 3-4, or 5)."""

    CASE12 = "c12"
    CASE34 = "c34"
    CASE5 = "c5"

    @property
    def label(self) -> str:
        return self.value


@dataclass(frozen=True)
class OutageResult:
    probability: float
    derivative_wrt_alpha: float  # per radian
    branch: OutageBranch


@dataclass(frozen=True)
class AvgSinrResult:
    value: float                      # linear mean SINR
    case: CaseId
    quadrature_error_estimate: float


def _outage_pieces(geom: CorridorGeometry, beam: BeamConfig) -> tuple[float, float]:
    """Exact outage probability and d/dalpha from the piecewise-served integral."""
    d1, h1, h2 = geom.d1, geom.h1, geom.h2
    alpha = beam.alpha
    upper = alpha + beam.beta
    cot_a = 1.0 / math.tan(alpha)
    cot_u = 1.0 / math.tan(upper)
    h3 = 0.5 * d1 * math.tan(alpha)
    h5 = 0.5 * d1 * math.tan(upper)
    # piece split points clipped to the corridor band; h3 < h5 always
    c3 = min(max(h3, h1), h2)
    c5 = min(max(h5, h1), h2)
    span = h2 - h1

    # below h3 the served interval is (alpha, alpha+beta); between h3 and h5
    # it starts at the center angle atan(2h/d1); above h5 it is empty
    served = ((cot_a - cot_u) * (c3 * c3 - h1 * h1) / d1
              + (c5 - c3)
              - cot_u * (c5 * c5 - c3 * c3) / d1)
    prob = 1.0 - served / span
    prob = min(1.0, max(0.0, prob))  # guard float round-off at the extremes

    csc2_u = 1.0 / (math.sin(upper) ** 2)
    csc2_a = 1.0 / (math.sin(alpha) ** 2)
    deriv = -((csc2_u - csc2_a) * (c3 * c3 - h1 * h1)
              + csc2_u * (c5 * c5 - c3 * c3)) / (d1 * span)
    return prob, deriv


def _branch_for(geom: CorridorGeometry, beam: BeamConfig) -> OutageBranch:
    h3 = crossing_heights(geom, beam).h3
    if h3 < geom.h1:
        return OutageBranch.CASE12
    if h3 < geom.h2:
        return OutageBranch.CASE34
    return OutageBranch.CASE5


def outage(geom: CorridorGeometry, beam: BeamConfig) -> OutageResult:
    """Outage probability, its alpha-derivative, and the active branch."""
    prob, deriv = _outage_pieces(geom, beam)
    return OutageResult(probability=prob, derivative_wrt_alpha=deriv,
                        branch=_branch_for(geom, beam))


def outage_case12(geom: CorridorGeometry, beam: BeamConfig) -> float:
    """Outage for cases 1-2 (h3 < h1): ((h1+h2)/d1)*cot(alpha+beta).

    The displayed form assumes the beam's upper edge clears the corridor
    center above h2; when it does not (h5 < h2) the altitudes above h5 are
    fully in outage and the returned value accounts for them.
    """
    if crossing_heights(geom, beam).h3 >= geom.h1:
        raise ValueError("branch c12 requires h3 < h1")
    return _outage_pieces(geom, beam)[0]


def outage_case34(geom: CorridorGeometry, beam: BeamConfig) -> float:
    """Outage for cases 3-4 (h1 <= h3 < h2).

    With full coverage overhead (h5 >= h2) this equals

      1 + ((h1+h2)/d1)cot(a+b) - ((d1^2/4)tan^2(a) - h1^2)/(d1(h2-h1)) cot(a)
        - (h2 - (d1/2)tan(a))/(h2-h1)

    and as in the other branches the empty-served-interval correction
    applies above h5 when the beam tops out inside the corridor.
    """
    h3 = crossing_heights(geom, beam).h3
    if not geom.h1 <= h3 < geom.h2:
        raise ValueError("branch c34 requires h1 <= h3 < h2")
    return _outage_pieces(geom, beam)[0]


def outage_case5(geom: CorridorGeometry, beam: BeamConfig) -> float:
    """Outage for case 5 (h3 >= h2): 1 + ((h1+h2)/d1)(cot(alpha+beta) - cot(alpha))."""
    if crossing_heights(geom, beam).h3 < geom.h2:
        raise ValueError("branch c5 requires h3 >= h2")
    return _outage_pieces(geom, beam)[0]


def _require_case(geom: CorridorGeometry, beam: BeamConfig, expected: CaseId) -> None:
    got = classify_case(geom, beam)
    if got is not expected:
        raise ValueError(f"configuration is {got.label}, not {expected.label}")


def _noise_limited_prefactor(geom: CorridorGeometry, radio: RadioConfig,
                             gain: float) -> float:
    # common factor 2kG/(d1*N0*(h2-h1)) of the clean-region integrals
    return (2.0 * radio.link_constant * gain
            / (geom.d1 * radio.noise_power * (geom.h2 - geom.h1)))


def avg_sinr_case1(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                   rel_tol: float = 1e-8, abs_tol: float = 1e-12) -> AvgSinrResult:
    """Mean SINR in case 1: E[(R2/R1)^2] over the interfered served region.

    Per altitude h the theta1-integral of (R2/R1)^2 against the theta1
    density has the elementary antiderivative used below (write
    (R2/R1)^2 csc^2(theta1) as c^2 + csc^2 - 2c*cot with c = d1/h); the
    remaining h-integral is done adaptively. Altitudes whose served
    interval is empty (above h5) contribute nothing. Independent of
    transmit power: the ratio is interference-limited.
    """
    _require_case(geom, beam, CaseId.CASE1)
    d1, h1, h2 = geom.d1, geom.h1, geom.h2
    upper_angle = beam.alpha + beam.beta
    h5 = 0.5 * d1 * math.tan(upper_angle)
    top = min(h2, h5)
    if top <= h1:
        return AvgSinrResult(value=0.0, case=CaseId.CASE1, quadrature_error_estimate=0.0)

    log_sin_u = math.log(math.sin(upper_angle))
    cot_u = 1.0 / math.tan(upper_angle)

    def height_term(h: float) -> float:
        lo = math.atan(2.0 * h / d1)
        if lo >= upper_angle:
            return 0.0
        c = d1 / h
        return (2.0 * h / d1) * (c * c * (upper_angle - lo)
                                 - 2.0 * c * (log_sin_u - math.log(math.sin(lo)))
                                 - (cot_u - 0.5 * c))

    value, err = integrate(height_term, h1, top, rel_tol=rel_tol, abs_tol=abs_tol)
    span = h2 - h1
    return AvgSinrResult(value=value / span, case=CaseId.CASE1,
                         quadrature_error_estimate=err / span)


def _clean_region_integral(geom: CorridorGeometry, beam: BeamConfig, lo: float,
                           hi: float, rel_tol: float, abs_tol: float) -> tuple[float, float]:
    """Integral of (alpha+beta-gamma(h))/h over [lo, hi] (clean-region angular mass)."""
    upper_angle = beam.alpha + beam.beta

    def integrand(h: float) -> float:
        return (upper_angle - gamma_angle(h, geom, beam)) / h

    return integrate(integrand, lo, hi, rel_tol=rel_tol, abs_tol=abs_tol)


def avg_sinr_case2(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                   rel_tol: float = 1e-8, abs_tol: float = 1e-12) -> AvgSinrResult:
    """Mean SINR in case 2: clean region spans altitudes [h1, h4], angles (gamma, alpha+beta)."""
    _require_case(geom, beam, CaseId.CASE2)
    h4 = crossing_heights(geom, beam).h4
    pref = _noise_limited_prefactor(geom, radio, beam.gain)
    value, err = _clean_region_integral(geom, beam, geom.h1, min(h4, geom.h2),
                                        rel_tol, abs_tol)
    return AvgSinrResult(value=pref * value, case=CaseId.CASE2,
                         quadrature_error_estimate=pref * err)


def avg_sinr_case3(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                   rel_tol: float = 1e-8, abs_tol: float = 1e-12) -> AvgSinrResult:
    """Mean SINR in case 3: full beam below h3 (log closed form), gamma-limited up to h4."""
    _require_case(geom, beam, CaseId.CASE3)
    ch = crossing_heights(geom, beam)
    pref = _noise_limited_prefactor(geom, radio, beam.gain)
    full_beam = beam.beta * math.log(ch.h3 / geom.h1)
    tail, err = _clean_region_integral(geom, beam, ch.h3, ch.h4, rel_tol, abs_tol)
    return AvgSinrResult(value=pref * (full_beam + tail), case=CaseId.CASE3,
                         quadrature_error_estimate=pref * err)


def avg_sinr_case4(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                   rel_tol: float = 1e-8, abs_tol: float = 1e-12) -> AvgSinrResult:
    """Mean SINR in case 4: as case 3 but the clean region tops out at h2, not h4."""
    _require_case(geom, beam, CaseId.CASE4)
    h3 = crossing_heights(geom, beam).h3
    pref = _noise_limited_prefactor(geom, radio, beam.gain)
    full_beam = beam.beta * math.log(h3 / geom.h1)
    tail, err = _clean_region_integral(geom, beam, h3, geom.h2, rel_tol, abs_tol)
    return AvgSinrResult(value=pref * (full_beam + tail), case=CaseId.CASE4,
                         quadrature_error_estimate=pref * err)


def avg_sinr_case5(geom: CorridorGeometry, beam: BeamConfig,
                   radio: RadioConfig) -> AvgSinrResult:
    """Mean SINR in case 5: 2kG*beta*ln(h2/h1)/(d1*N0*(h2-h1)), independent of alpha."""
    _require_case(geom, beam, CaseId.CASE5)
    pref = _noise_limited_prefactor(geom, radio, beam.gain)
    value = pref * beam.beta * math.log(geom.h2 / geom.h1)
    return AvgSinrResult(value=value, case=CaseId.CASE5, quadrature_error_estimate=0.0)


def avg_sinr(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
             rel_tol: float = 1e-8, abs_tol: float = 1e-12) -> AvgSinrResult:
    """Mean linear SINR, dispatched on the coverage regime."""
    case = classify_case(geom, beam)
    if case is CaseId.CASE1:
        return avg_sinr_case1(geom, beam, radio, rel_tol, abs_tol)
    if case is CaseId.CASE2:
        return avg_sinr_case2(geom, beam, radio, rel_tol, abs_tol)
    if case is CaseId.CASE3:
        return avg_sinr_case3(geom, beam, radio, rel_tol, abs_tol)
    if case is CaseId.CASE4:
        return avg_sinr_case4(geom, beam, radio, rel_tol, abs_tol)
    return avg_sinr_case5(geom, beam, radio)
