"""Corridor and beam geometry for a two-base-station drone corridor.

The corridor is a 2-D altitude band [h1, h2] between two ground base
stations that sit d1 apart at height 0. Each BS points an uptilted beam
of angular width beta at uptilt angle alpha (lower beam edge above the
horizontal). A UAV at horizontal distance dx from its serving BS and
altitude hx sees the serving BS under elevation angle theta1 and the
neighboring BS under theta2. UAVs are uniform over the corridor and are
served by the nearer BS, so positions are normalized to dx in (0, d1/2].

Two crossing heights organize the coverage picture:

  h3 -- altitude where the two lower beam edges meet at the corridor
        center (d1/2 horizontally from either BS),
  h4 -- altitude where one beam's upper edge meets the other's lower edge.

As alpha grows, h3 and h4 sweep upward through [h1, h2], producing five
coverage regimes (``CaseId``): from "everything the beam reaches is also
hit by the neighbor's beam" (case 1) up to "the whole beam sits inside
the corridor with no overlap" (case 5).

All angles are in radians; degrees exist only at the CLI boundary.
"""

import math
from dataclasses import dataclass
from enum import Enum


class CaseId(Enum):
    """Coverage regime, ordered by increasing uptilt angle.

    Boundary ties (h3 or h4 exactly equal to h1 or h2) resolve to the
    higher-numbered case so classification is deterministic; the outage
    and average-SINR expressions are continuous across every boundary,
    so the choice is observationally irrelevant.
    """

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5

    @property
    def label(self) -> str:
        return f"case{self.value}"


@dataclass(frozen=True)
class CorridorGeometry:
    """Corridor extent: BS spacing d1 and altitude band [h1, h2], meters."""

    d1: float
    h1: float
    h2: float

    def __post_init__(self):
        if not self.d1 > 0:
            raise ValueError(f"d1 must be positive, got {self.d1}")
        if not 0 < self.h1 < self.h2:
            raise ValueError(f"need 0 < h1 < h2, got h1={self.h1}, h2={self.h2}")


@dataclass(frozen=True)
class BeamConfig:
    """Uptilted rectangular beam: uptilt alpha, width beta (radians), linear gain.

    Feasibility requires alpha > 0 (no downward steering) and
    alpha + beta < pi/2 (beam stays below vertical).
    """

    alpha: float
    beta: float
    gain: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"uptilt angle must be positive, got {self.alpha}")
        if not self.beta > 0:
            raise ValueError(f"beamwidth must be positive, got {self.beta}")
        if not self.alpha + self.beta < math.pi / 2:
            raise ValueError(
                f"beam upper edge must stay below vertical: "
                f"alpha+beta={self.alpha + self.beta:.6f} >= pi/2"
            )
        if not self.gain > 0:
            raise ValueError(f"gain must be positive, got {self.gain}")


@dataclass(frozen=True)
class UavPosition:
    """UAV at horizontal distance dx from the serving BS, altitude hx (meters)."""

    dx: float
    hx: float

    def __post_init__(self):
        if not self.dx > 0:
            raise ValueError(f"dx must be positive, got {self.dx}")
        if not self.hx > 0:
            raise ValueError(f"hx must be positive, got {self.hx}")


@dataclass(frozen=True)
class CrossingHeights:
    """Beam crossing altitudes h3 (center) and h4 (side), meters."""

    h3: float
    h4: float


def elevation_angles(pos: UavPosition, geom: CorridorGeometry) -> tuple[float, float]:
    """Elevation angles (theta1, theta2) to the serving and neighboring BS.

    Requires the nearest-BS convention dx in (0, d1/2] and hx inside the
    corridor band; theta1 >= theta2 always holds under it.
    """
    if pos.dx <= 0 or pos.dx > geom.d1 / 2:
        raise ValueError(
            f"dx={pos.dx} outside (0, {geom.d1 / 2}]; position must be "
            "normalized to the serving (nearer) BS"
        )
    if not geom.h1 <= pos.hx <= geom.h2:
        raise ValueError(f"hx={pos.hx} outside corridor band [{geom.h1}, {geom.h2}]")
    theta1 = math.atan(pos.hx / pos.dx)
    theta2 = math.atan(pos.hx / (geom.d1 - pos.dx))
    return theta1, theta2


def theta1_domain(hx: float, geom: CorridorGeometry) -> tuple[float, float]:
    """Support of theta1 at fixed altitude: (atan(2*hx/d1), pi/2).

    The lower end is the elevation angle seen from the corridor center,
    the upper end corresponds to a UAV directly above the BS.
    """
    if not geom.h1 <= hx <= geom.h2:
        raise ValueError(f"hx={hx} outside corridor band [{geom.h1}, {geom.h2}]")
    return math.atan(2 * hx / geom.d1), math.pi / 2


def theta1_pdf(theta1: float, hx: float, geom: CorridorGeometry) -> float:
    """Density of theta1 given altitude hx: (2*hx/d1)*csc^2(theta1) on its support.

    Follows from dx being uniform on (0, d1/2] and theta1 = atan(hx/dx);
    zero outside the open support interval.
    """
    lo, hi = theta1_domain(hx, geom)
    if theta1 <= lo or theta1 >= hi:
        return 0.0
    s = math.sin(theta1)
    return (2 * hx / geom.d1) / (s * s)


def crossing_heights(geom: CorridorGeometry, beam: BeamConfig) -> CrossingHeights:
    """Altitudes where the two BSs' beams cross.

    h3 = (d1/2)*tan(alpha) is the meeting point of the lower edges at the
    corridor center; h4 = d1/(cot(alpha) + cot(alpha+beta)) is where a
    beam's upper edge meets the other's lower edge. h4 > h3 for beta > 0.
    """
    h3 = 0.5 * geom.d1 * math.tan(beam.alpha)
    h4 = geom.d1 / (1 / math.tan(beam.alpha) + 1 / math.tan(beam.alpha + beam.beta))
    return CrossingHeights(h3=h3, h4=h4)


def classify_case(geom: CorridorGeometry, beam: BeamConfig) -> CaseId:
    """Which of the five coverage regimes the (corridor, beam) pair is in.

    Determined by where the crossing heights fall relative to the band:

      case 1: h3 < h1 and h4 < h1   (overlap below the corridor)
      case 2: h3 < h1 < h4
      case 3: h1 < h3 < h2, h4 < h2
      case 4: h1 < h3 < h2, h4 > h2
      case 5: h3 > h2               (no overlap inside the corridor)

    Equalities resolve to the higher-numbered case.
    """
    ch = crossing_heights(geom, beam)
    if ch.h3 >= geom.h2:
        return CaseId.CASE5
    if ch.h3 >= geom.h1:
        return CaseId.CASE4 if ch.h4 >= geom.h2 else CaseId.CASE3
    return CaseId.CASE2 if ch.h4 >= geom.h1 else CaseId.CASE1


def gamma_angle(hx: float, geom: CorridorGeometry, beam: BeamConfig) -> float:
    """Serving-BS elevation angle at which the neighbor's lower beam edge is crossed.

    At altitude hx, a UAV sliding toward the corridor center enters the
    neighbor's beam where theta2 = alpha; the serving-side elevation there
    satisfies cot(gamma) = d1/hx - cot(alpha). Only exists while that point
    lies in front of the serving BS (d1/hx > cot(alpha), i.e. hx < d1*tan(alpha)).
    """
    cot_gamma = geom.d1 / hx - 1 / math.tan(beam.alpha)
    if cot_gamma <= 0:
        raise ValueError(
            f"no crossing point at hx={hx}: d1/hx={geom.d1 / hx:.6g} <= "
            f"cot(alpha)={1 / math.tan(beam.alpha):.6g}"
        )
    return math.atan(1 / cot_gamma)


def slant_ranges(hx: float, theta1: float, theta2: float) -> tuple[float, float]:
    """Distances (R1, R2) to the serving and neighboring BS from altitude hx.

    pi/2 is allowed (directly overhead, range = altitude).
    """
    if hx <= 0:
        raise ValueError(f"hx must be positive, got {hx}")
    if not 0 < theta1 <= math.pi / 2 or not 0 < theta2 <= math.pi / 2:
        raise ValueError("elevation angles must lie in (0, pi/2]")
    return hx / math.sin(theta1), hx / math.sin(theta2)
