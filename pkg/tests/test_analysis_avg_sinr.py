import dataclasses
import math

import numpy as np
import pytest
from scipy import integrate as scipy_integrate

from dronecorridor import CaseId, RadioConfig, avg_sinr, classify_case, crossing_heights, gamma_angle
from dronecorridor.analysis import (
    avg_sinr_case1,
    avg_sinr_case2,
    avg_sinr_case3,
    avg_sinr_case4,
    avg_sinr_case5,
)
from helpers import GEOM, RADIO, geom_with_h2, make_beam


def _dblquad_interference_mean(geom, beam):
    # defining double integral of (R2/R1)^2 against the position densities,
    # over the covered angular interval at each altitude
    d1, h1, h2 = geom.d1, geom.h1, geom.h2
    upper = beam.alpha + beam.beta

    def integrand(theta, hx):
        cot2 = d1 / hx - 1 / math.tan(theta)
        sin2_sq = 1 / (1 + cot2 * cot2)
        ratio_sq = math.sin(theta) ** 2 / sin2_sq
        return ratio_sq * (2 * hx / d1) / math.sin(theta) ** 2 / (h2 - h1)

    value, _ = scipy_integrate.dblquad(
        integrand, h1, h2,
        lambda hx: math.atan(2 * hx / d1),
        lambda hx: max(math.atan(2 * hx / d1), upper),
        epsabs=1e-11, epsrel=1e-10)
    return value


def test_case1_matches_defining_double_integral():
    beam = make_beam(5, 50)
    res = avg_sinr_case1(GEOM, beam, RADIO)
    assert res.case is CaseId.CASE1
    assert res.value == pytest.approx(_dblquad_interference_mean(GEOM, beam), rel=1e-9)
    assert res.value == pytest.approx(4.1090697184161975, rel=1e-10)


def test_case1_clamps_to_beam_top():
    # the beam's upper edge leaves the corridor center inside the band, so
    # altitudes above it contribute nothing
    beam = make_beam(1, 12)
    assert classify_case(GEOM, beam) is CaseId.CASE1
    res = avg_sinr_case1(GEOM, beam, RADIO)
    assert res.value == pytest.approx(_dblquad_interference_mean(GEOM, beam), rel=1e-8)
    assert res.value > 0


def test_case1_empty_coverage_is_zero():
    beam = make_beam(1, 2)
    assert avg_sinr_case1(GEOM, beam, RADIO).value == 0.0


def test_case1_independent_of_tx_power():
    beam = make_beam(5, 50)
    louder = RadioConfig.from_db(tx_power_dbm=40.0)
    assert avg_sinr_case1(GEOM, beam, RADIO).value == avg_sinr_case1(GEOM, beam, louder).value


def _clean_region_oracle(geom, beam, radio, lo, hi):
    pref = (2 * radio.link_constant * beam.gain
            / (geom.d1 * radio.noise_power * (geom.h2 - geom.h1)))
    upper = beam.alpha + beam.beta
    v, _ = scipy_integrate.quad(
        lambda h: (upper - gamma_angle(h, geom, beam)) / h, lo, hi,
        epsabs=1e-13, epsrel=1e-11)
    return pref * v


def test_case2_matches_oracle():
    beam = make_beam(10, 50)
    h4 = crossing_heights(GEOM, beam).h4
    res = avg_sinr_case2(GEOM, beam, RADIO)
    assert res.case is CaseId.CASE2
    assert res.value == pytest.approx(
        _clean_region_oracle(GEOM, beam, RADIO, GEOM.h1, h4), rel=1e-9)


def test_case2_integrand_vanishes_at_h4():
    beam = make_beam(10, 50)
    h4 = crossing_heights(GEOM, beam).h4
    assert beam.alpha + beam.beta - gamma_angle(h4, GEOM, beam) == pytest.approx(0.0, abs=1e-12)


def test_case2_linear_in_gain():
    beam = make_beam(10, 50)
    doubled = dataclasses.replace(beam, gain=2 * beam.gain)
    assert avg_sinr_case2(GEOM, doubled, RADIO).value == 2 * avg_sinr_case2(GEOM, beam, RADIO).value


def test_case3_matches_oracle():
    beam = make_beam(20, 30)
    ch = crossing_heights(GEOM, beam)
    pref = (2 * RADIO.link_constant * beam.gain
            / (GEOM.d1 * RADIO.noise_power * (GEOM.h2 - GEOM.h1)))
    expected = (pref * beam.beta * math.log(ch.h3 / GEOM.h1)
                + _clean_region_oracle(GEOM, beam, RADIO, ch.h3, ch.h4))
    res = avg_sinr_case3(GEOM, beam, RADIO)
    assert res.case is CaseId.CASE3
    assert res.value == pytest.approx(expected, rel=1e-9)


def test_case3_full_beam_term_vanishes_at_floor():
    # h3 barely above the corridor floor: the log term is negligible
    alpha_deg = math.degrees(math.atan(2 * GEOM.h1 / GEOM.d1)) + 1e-7
    beam = make_beam(alpha_deg, 30)
    h3 = crossing_heights(GEOM, beam).h3
    assert math.log(h3 / GEOM.h1) < 1e-8


def test_case4_matches_oracle():
    beam = make_beam(20, 50)
    h3 = crossing_heights(GEOM, beam).h3
    pref = (2 * RADIO.link_constant * beam.gain
            / (GEOM.d1 * RADIO.noise_power * (GEOM.h2 - GEOM.h1)))
    expected = (pref * beam.beta * math.log(h3 / GEOM.h1)
                + _clean_region_oracle(GEOM, beam, RADIO, h3, GEOM.h2))
    res = avg_sinr_case4(GEOM, beam, RADIO)
    assert res.case is CaseId.CASE4
    assert res.value == pytest.approx(expected, rel=1e-9)


def test_case5_closed_form():
    res = avg_sinr_case5(GEOM, make_beam(45, 10), RADIO)
    assert res.case is CaseId.CASE5
    assert res.value == pytest.approx(36282.81618013266, rel=1e-12)
    assert 10 * math.log10(res.value) == pytest.approx(45.597009885320862, rel=1e-12)
    assert res.quadrature_error_estimate == 0.0


def test_case5_independent_of_alpha():
    values = {avg_sinr_case5(GEOM, make_beam(a, 10), RADIO).value
              for a in (32, 40, 45, 55, 70)}
    assert len(values) == 1


def test_case5_narrow_band_limit():
    # h2 -> h1: value -> 2 k G beta / (d1 N0 h1)
    h2 = GEOM.h1 * (1 + 1e-8)
    geom = geom_with_h2(h2)
    beam = make_beam(45, 10)
    limit = (2 * RADIO.link_constant * beam.gain * beam.beta
             / (GEOM.d1 * RADIO.noise_power * GEOM.h1))
    got = avg_sinr_case5(geom, beam, RADIO).value
    assert got == pytest.approx(limit, rel=1e-6)
    # cross-check against direct quadrature of the defining height integral
    pref = (2 * RADIO.link_constant * beam.gain
            / (geom.d1 * RADIO.noise_power * (geom.h2 - geom.h1)))
    oracle, _ = scipy_integrate.quad(lambda h: pref * beam.beta / h, geom.h1, geom.h2)
    # log(h2/h1) loses ~8 digits to cancellation on a 1e-8-wide band
    assert got == pytest.approx(oracle, rel=1e-7)


def test_case_preconditions_enforced():
    with pytest.raises(ValueError):
        avg_sinr_case1(GEOM, make_beam(20, 30), RADIO)
    with pytest.raises(ValueError):
        avg_sinr_case5(GEOM, make_beam(20, 30), RADIO)
    with pytest.raises(ValueError):
        avg_sinr_case3(GEOM, make_beam(20, 50), RADIO)  # actually case 4


def test_dispatch_matches_branches():
    assert avg_sinr(GEOM, make_beam(45, 10), RADIO) == avg_sinr_case5(GEOM, make_beam(45, 10), RADIO)
    assert avg_sinr(GEOM, make_beam(5, 50), RADIO) == avg_sinr_case1(GEOM, make_beam(5, 50), RADIO)


def test_case3_case4_continuity_in_alpha():
    # bisect the alpha where h4 crosses h2 (case 3 <-> 4) and compare values
    beta = 40.0

    def h4_at(a_deg):
        return crossing_heights(GEOM, make_beam(a_deg, beta)).h4

    lo, hi = 10.0, 30.0
    assert h4_at(lo) < GEOM.h2 < h4_at(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if h4_at(mid) < GEOM.h2:
            lo = mid
        else:
            hi = mid
    eps = 1e-7
    below = avg_sinr(GEOM, make_beam(lo - eps, beta), RADIO)
    above = avg_sinr(GEOM, make_beam(hi + eps, beta), RADIO)
    assert below.case is CaseId.CASE3 and above.case is CaseId.CASE4
    assert below.value == pytest.approx(above.value, rel=1e-5)


def test_case4_case5_continuity_in_alpha():
    beta = 50.0
    boundary = math.degrees(math.atan(2 * GEOM.h2 / GEOM.d1))  # h3 = h2
    eps = 1e-7
    below = avg_sinr(GEOM, make_beam(boundary - eps, beta), RADIO)
    above = avg_sinr(GEOM, make_beam(boundary + eps, beta), RADIO)
    assert below.case is CaseId.CASE4 and above.case is CaseId.CASE5
    assert below.value == pytest.approx(above.value, rel=1e-5)


def test_growth_and_plateau_from_clean_regime_onward():
    # once the clean region exists (case 2 on), the mean grows with uptilt
    # and flattens exactly when the whole beam fits inside the corridor
    beta = 50.0
    alphas = np.arange(6.5, 39.5, 0.5)
    cases = [classify_case(GEOM, make_beam(a, beta)) for a in alphas]
    start = next(i for i, c in enumerate(cases) if c is not CaseId.CASE1)
    values = [avg_sinr(GEOM, make_beam(a, beta), RADIO).value for a in alphas[start:]]
    for lo_v, hi_v in zip(values, values[1:]):
        assert hi_v >= lo_v * (1 - 1e-9)
    case5_values = [v for v, c in zip(values, cases[start:]) if c is CaseId.CASE5]
    assert max(case5_values) - min(case5_values) <= 1e-9 * max(case5_values)
