"""Radio link budget: free-space SINR of a corridor UAV.

Received power over a free-space path is k*g(theta)/R^2 with the link
constant k = P_tx * lambda^2 / (16*pi^2). The serving BS contributes the
signal, the neighboring BS the interference, and the noise floor comes
from thermal density + bandwidth + noise figure. All computation is in
linear units; dB/dBm appear only in constructors and the CLI.
"""

import math
from dataclasses import dataclass

from .geometry import BeamConfig, CorridorGeometry, UavPosition, elevation_angles, slant_ranges

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


def noise_power(thermal_density_dbm_hz: float, bandwidth_hz: float,
                noise_figure_db: float) -> float:
    """Noise power in watts: TN + 10*log10(BW) + NF, summed in dBm."""
    if bandwidth_hz <= 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth_hz}")
    n0_dbm = thermal_density_dbm_hz + 10.0 * math.log10(bandwidth_hz) + noise_figure_db
    return dbm_to_watts(n0_dbm)


def link_constant(tx_power_w: float, wavelength_m: float) -> float:
    """Free-space link constant k = P*lambda^2/(16*pi^2), watts*m^2."""
    if tx_power_w <= 0:
        raise ValueError(f"tx power must be positive, got {tx_power_w}")
    if wavelength_m <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength_m}")
    return tx_power_w * wavelength_m * wavelength_m / (16.0 * math.pi * math.pi)


def antenna_gain_from_beamwidth(beta_deg: float, model: str = "db") -> float:
    """Maximum gain of a beam of width beta_deg, as a linear power ratio.

    The gain-beamwidth tradeoff is 297.6/beta_deg. The default reads that
    number as a value in dB; model="linear" reads it as the linear gain
    directly. The formula is calibrated per degree, hence the degree input.
    """
    if not 0 < beta_deg < 90:
        raise ValueError(f"beamwidth must lie in (0, 90) degrees, got {beta_deg}")
    g = 297.6 / beta_deg
    if model == "db":
        return db_to_linear(g)
    if model == "linear":
        return g
    raise ValueError(f"unknown gain model {model!r}, expected 'db' or 'linear'")


def beam_gain_at(theta: float, beam: BeamConfig) -> float:
    """Rectangular pattern: gain inside the open interval (alpha, alpha+beta), else 0."""
    if beam.alpha < theta < beam.alpha + beam.beta:
        return beam.gain
    return 0.0


@dataclass(frozen=True)
class RadioConfig:
    """Radio parameters, all linear/SI; build via :meth:`from_db`.

    link_constant and noise_power are derived fields and are kept
    consistent with the primary fields by the constructor.
    """

    tx_power: float              # W
    carrier_frequency: float     # Hz
    wavelength: float            # m
    noise_figure_db: float
    bandwidth: float             # Hz
    thermal_noise_dbm_hz: float
    noise_power: float           # W
    sinr_threshold: float        # linear
    link_constant: float         # W*m^2

    def __post_init__(self):
        if self.tx_power <= 0 or self.bandwidth <= 0:
            raise ValueError("tx_power and bandwidth must be positive")
        if self.noise_power <= 0 or self.sinr_threshold <= 0:
            raise ValueError("noise_power and sinr_threshold must be positive")

    @classmethod
    def from_db(cls, tx_power_dbm: float = 30.0, carrier_frequency_hz: float = 3e9,
                bandwidth_hz: float = 100e6, noise_figure_db: float = 9.0,
                thermal_noise_dbm_hz: float = -174.0,
                sinr_threshold_db: float = -3.0) -> "RadioConfig":
        """Build from dB/dBm quantities (defaults: the standard settings)."""
        tx_w = dbm_to_watts(tx_power_dbm)
        lam = SPEED_OF_LIGHT / carrier_frequency_hz
        return cls(
            tx_power=tx_w,
            carrier_frequency=carrier_frequency_hz,
            wavelength=lam,
            noise_figure_db=noise_figure_db,
            bandwidth=bandwidth_hz,
            thermal_noise_dbm_hz=thermal_noise_dbm_hz,
            noise_power=noise_power(thermal_noise_dbm_hz, bandwidth_hz, noise_figure_db),
            sinr_threshold=db_to_linear(sinr_threshold_db),
            link_constant=link_constant(tx_w, lam),
        )


def sinr(pos: UavPosition, geom: CorridorGeometry, beam: BeamConfig,
         radio: RadioConfig) -> float:
    """Linear SINR of a UAV: k*g1/R1^2 over (k*g2/R2^2 + N0).

    Exactly 0 when the serving beam does not cover the UAV (g1 = 0).
    """
    theta1, theta2 = elevation_angles(pos, geom)
    g1 = beam_gain_at(theta1, beam)
    if g1 == 0.0:
        return 0.0
    g2 = beam_gain_at(theta2, beam)
    r1, r2 = slant_ranges(pos.hx, theta1, theta2)
    k = radio.link_constant
    return (k * g1 / (r1 * r1)) / (k * g2 / (r2 * r2) + radio.noise_power)
