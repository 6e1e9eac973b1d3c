"""Coverage analysis and uptilt optimization for cellular-served drone corridors."""

from .analysis import (
    AvgSinrResult,
    OutageBranch,
    OutageResult,
    QuadratureError,
    avg_sinr,
    integrate,
    outage,
)
from .geometry import (
    BeamConfig,
    CaseId,
    CorridorGeometry,
    CrossingHeights,
    UavPosition,
    classify_case,
    crossing_heights,
    elevation_angles,
    gamma_angle,
    slant_ranges,
    theta1_domain,
    theta1_pdf,
)
from .link import RadioConfig, antenna_gain_from_beamwidth, beam_gain_at, sinr
from .montecarlo import McConfig, McEstimate, McMode, empirical_avg_sinr, empirical_outage, sample_uav
from .optimizer import OptimizeMethod, OptimizeResult, feasible_interval, optimize_uptilt

__version__ = "0.1.0"
