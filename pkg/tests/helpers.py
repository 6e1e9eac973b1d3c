"""Shared fixtures-in-plain-Python for the test suite."""

import math

from dronecorridor import BeamConfig, CorridorGeometry, RadioConfig, antenna_gain_from_beamwidth

D1 = 1000.0
H1 = 100.0

GEOM = CorridorGeometry(d1=D1, h1=H1, h2=300.0)
RADIO = RadioConfig.from_db()

# (beamwidth deg, corridor ceiling m): the reference simulation settings
TABLE_CONFIGS = [
    (10.0, 300.0), (30.0, 300.0), (50.0, 300.0), (70.0, 300.0),
    (50.0, 200.0), (50.0, 400.0), (50.0, 500.0),
]

MARGIN_DEG = 0.05


def geom_with_h2(h2: float) -> CorridorGeometry:
    return CorridorGeometry(d1=D1, h1=H1, h2=h2)


def make_beam(alpha_deg: float, beta_deg: float, model: str = "db") -> BeamConfig:
    gain = antenna_gain_from_beamwidth(beta_deg, model)
    return BeamConfig(math.radians(alpha_deg), math.radians(beta_deg), gain)


def feasible_alpha_grid_deg(beta_deg: float, step: float = 0.5) -> list[float]:
    """0.5-degree uptilt grid inside the feasible interval (with safety margin)."""
    alphas = []
    a = step
    while a + beta_deg < 90.0 - MARGIN_DEG:
        if a > MARGIN_DEG:
            alphas.append(a)
        a += step
    return alphas
