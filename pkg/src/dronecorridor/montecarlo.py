"""Seeded Monte Carlo estimation of outage and average SINR.

The estimators draw UAV positions uniformly over the corridor and
evaluate the link model directly, serving as the independent check on
every closed form. Two modes:

  exact  -- full SINR (signal, interference, noise) per sample,
  paper  -- the per-regime simplifications the closed forms use: outage
            is declared purely geometrically (serving beam misses), and
            the average keeps only the dominant region per coverage case
            (case 1: (R2/R1)^2 where both beams cover; cases 2-5:
            k*G/(N0*R1^2) where only the serving beam covers).

Reproducibility contract: (seed, samples, mode) determines every estimate
bit-for-bit regardless of worker count. Samples are processed in
fixed-size chunks; chunk i draws from an independent substream spawned
deterministically from the master seed, and per-chunk moments are merged
in chunk order.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import BeamConfig, CaseId, CorridorGeometry, UavPosition, classify_case
from .link import RadioConfig

CHUNK_SIZE = 1 << 18


class McMode(Enum):
    EXACT = "exact"
    PAPER_APPROX = "paper"


@dataclass(frozen=True)
class McConfig:
    samples: int
    seed: int = 0
    mode: McMode = McMode.EXACT

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float  # sample standard deviation / sqrt(samples)
    samples: int


def sample_uav(rng: np.random.Generator, geom: CorridorGeometry) -> UavPosition:
    """Draw one uniform corridor position: dx in (0, d1/2], hx in [h1, h2).

    dx uses (d1/2)*(1-u) so the serving BS is never hit exactly (theta1
    would be undefined at dx = 0). Consumes two uniforms, dx first.
    """
    dx = 0.5 * geom.d1 * (1.0 - rng.random())
    hx = geom.h1 + (geom.h2 - geom.h1) * rng.random()
    return UavPosition(dx=dx, hx=hx)


def _draw_positions(rng: np.random.Generator, geom: CorridorGeometry,
                    n: int) -> tuple[np.ndarray, np.ndarray]:
    dx = 0.5 * geom.d1 * (1.0 - rng.random(n))
    hx = geom.h1 + (geom.h2 - geom.h1) * rng.random(n)
    return dx, hx


def _chunk_moments(values: np.ndarray) -> tuple[int, float, float]:
    m = float(values.mean())
    m2 = float(((values - m) ** 2).sum())
    return values.size, m, m2


def _merge_moments(a: tuple[int, float, float],
                   b: tuple[int, float, float]) -> tuple[int, float, float]:
    # Chan et al. pairwise update; applied left-to-right in chunk order
    na, ma, m2a = a
    nb, mb, m2b = b
    n = na + nb
    delta = mb - ma
    mean = ma + delta * nb / n
    m2 = m2a + m2b + delta * delta * na * nb / n
    return n, mean, m2


def _estimate(geom: CorridorGeometry, chunk_values, mc: McConfig,
              workers: int) -> McEstimate:
    n_chunks = (mc.samples + CHUNK_SIZE - 1) // CHUNK_SIZE
    children = np.random.SeedSequence(mc.seed).spawn(n_chunks)

    def run_chunk(i: int) -> tuple[int, float, float]:
        n = min(CHUNK_SIZE, mc.samples - i * CHUNK_SIZE)
        rng = np.random.Generator(np.random.PCG64(children[i]))
        dx, hx = _draw_positions(rng, geom, n)
        return _chunk_moments(chunk_values(dx, hx))

    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(n_chunks)))
    else:
        parts = [run_chunk(i) for i in range(n_chunks)]

    n, mean, m2 = parts[0]
    for part in parts[1:]:
        n, mean, m2 = _merge_moments((n, mean, m2), part)
    se = math.sqrt(m2 / (n - 1)) / math.sqrt(n) if n > 1 else 0.0
    return McEstimate(mean=mean, std_error=se, samples=n)


def _beam_masks(dx, hx, geom, beam):
    theta1 = np.arctan(hx / dx)
    theta2 = np.arctan(hx / (geom.d1 - dx))
    in1 = (theta1 > beam.alpha) & (theta1 < beam.alpha + beam.beta)
    in2 = (theta2 > beam.alpha) & (theta2 < beam.alpha + beam.beta)
    return in1, in2


def empirical_outage(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                     mc: McConfig, workers: int = 1) -> McEstimate:
    """Fraction of sampled UAVs below the SINR threshold.

    exact mode thresholds the full SINR; paper mode declares outage iff
    the serving beam misses the sample.
    """
    k = radio.link_constant
    n0 = radio.noise_power
    tau = radio.sinr_threshold
    gain = beam.gain
    exact = mc.mode is McMode.EXACT

    def values(dx: np.ndarray, hx: np.ndarray) -> np.ndarray:
        in1, in2 = _beam_masks(dx, hx, geom, beam)
        if not exact:
            return (~in1).astype(np.float64)
        r1_sq = dx * dx + hx * hx
        r2_sq = (geom.d1 - dx) ** 2 + hx * hx
        signal = np.where(in1, k * gain / r1_sq, 0.0)
        interference = np.where(in2, k * gain / r2_sq, 0.0)
        return (signal / (interference + n0) < tau).astype(np.float64)

    return _estimate(geom, values, mc, workers)


def empirical_avg_sinr(geom: CorridorGeometry, beam: BeamConfig, radio: RadioConfig,
                       mc: McConfig, workers: int = 1) -> McEstimate:
    """Sample mean of the linear SINR over the corridor.

    paper mode reproduces the per-regime accounting of the closed forms
    (see module docstring); exact mode evaluates the full SINR everywhere.
    """
    k = radio.link_constant
    n0 = radio.noise_power
    gain = beam.gain
    exact = mc.mode is McMode.EXACT
    interference_regime = (not exact) and classify_case(geom, beam) is CaseId.CASE1

    def values(dx: np.ndarray, hx: np.ndarray) -> np.ndarray:
        in1, in2 = _beam_masks(dx, hx, geom, beam)
        r1_sq = dx * dx + hx * hx
        r2_sq = (geom.d1 - dx) ** 2 + hx * hx
        if exact:
            signal = np.where(in1, k * gain / r1_sq, 0.0)
            interference = np.where(in2, k * gain / r2_sq, 0.0)
            return signal / (interference + n0)
        if interference_regime:
            return np.where(in1 & in2, r2_sq / r1_sq, 0.0)
        return np.where(in1 & ~in2, k * gain / (n0 * r1_sq), 0.0)

    return _estimate(geom, values, mc, workers)
