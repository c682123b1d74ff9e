from __future__ import annotations

import math
import warnings

import numpy as np
import pytest

from srwidth.exact_spectrum import (
    BetaGamma,
    ChargeConfig,
    ConfigurationError,
    TruncationWarning,
    angular_density,
    default_nu_max,
    geometric_tail,
    harmonic_power,
    harmonic_power_by_quadrature,
    harmonic_power_upper,
    harmonic_spectrum,
    partial_contribution,
    partial_contributions,
    total_fraction_closed_form,
    total_fraction_exact,
    total_power,
)
from srwidth.numerics import DomainError
from srwidth.ultra import TABLE_ORDER, Polarization, spectral_density, total_fraction

P = Polarization


def test_beta_gamma_consistency():
    bg = BetaGamma.from_gamma(2.0)
    assert bg.beta == pytest.approx(math.sqrt(3) / 2, rel=1e-15)
    assert BetaGamma.from_beta(0.6).gamma == pytest.approx(1.25, rel=1e-15)
    with pytest.raises(ValueError):
        BetaGamma(0.5, 3.0)
    with pytest.raises(ValueError):
        BetaGamma.from_beta(1.0)


def test_charge_config():
    assert ChargeConfig.electron().epsilon == 1
    assert ChargeConfig.positron().epsilon == -1
    with pytest.raises(ConfigurationError):
        ChargeConfig(radius=None)
    with pytest.raises(ConfigurationError):
        ChargeConfig(radius=1.0, field=1.0, mass=1.0)


def test_positron_swaps_circular_components():
    bg = BetaGamma.from_beta(0.5)
    pos = ChargeConfig.positron()
    assert harmonic_power_upper(P.RIGHT, bg, 3, pos) == pytest.approx(
        harmonic_power_upper(P.LEFT, bg, 3), rel=1e-14)


def test_lower_half_space_mirror():
    bg = BetaGamma.from_beta(0.7)
    hp = harmonic_power(P.RIGHT, bg, 4)
    quad = harmonic_power_by_quadrature(P.RIGHT, bg, 4, half="lower")
    assert hp.lower == pytest.approx(quad, abs=1e-13)
    sigma = harmonic_power(P.SIGMA, bg, 4)
    assert sigma.upper == sigma.lower


def test_angular_density_domain():
    bg = BetaGamma.from_beta(0.5)
    assert angular_density(P.SIGMA, bg, 1, 0.3) > 0
    with pytest.raises(DomainError):
        angular_density(P.PI, bg, 1, 0.0)
    with pytest.raises(DomainError):
        harmonic_power_upper(P.TOTAL, bg, 0)


def test_closed_forms_match_quadrature_high_harmonic():
    bg = BetaGamma.from_beta(0.95)
    for s in TABLE_ORDER:
        assert harmonic_power_upper(s, bg, 40) == pytest.approx(
            harmonic_power_by_quadrature(s, bg, 40), abs=1e-12)


@pytest.mark.parametrize("beta", [0.3, 0.6, 0.9])
def test_sums_match_closed_forms(beta):
    bg = BetaGamma.from_beta(beta)
    for s in (P.TOTAL, P.SIGMA, P.PI):
        assert total_fraction_exact(s, bg) == pytest.approx(total_fraction_closed_form(s, bg), abs=1e-9)
    assert total_fraction_closed_form(P.RIGHT, bg) is None


def test_nonrelativistic_limit_circular():
    # as beta -> 0 all power sits in the first harmonic with known shares
    bg = BetaGamma.from_beta(0.01)
    right = total_fraction_exact(P.RIGHT, bg)
    assert right == pytest.approx(7 / 16, abs=1e-4)


def test_truncation_warning():
    bg = BetaGamma.from_beta(0.95)
    with pytest.warns(TruncationWarning):
        total_fraction_exact(P.TOTAL, bg, nu_max=5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        total_fraction_exact(P.TOTAL, bg)


def test_geometric_tail():
    terms = 0.5 ** np.arange(1, 40)
    assert geometric_tail(terms) == pytest.approx(0.5**39, rel=1e-9)
    assert geometric_tail(np.ones(20)) == math.inf
    assert geometric_tail(np.zeros(20)) == 0.0


def test_default_nu_max():
    assert default_nu_max(BetaGamma.from_beta(0.1)) == 50
    assert default_nu_max(BetaGamma.from_gamma(2.0)) == 320


def test_partial_contributions_normalized():
    bg = BetaGamma.from_beta(0.8)
    for s in TABLE_ORDER:
        p, denom = partial_contributions(s, bg)
        assert math.fsum(p) == pytest.approx(1.0, abs=1e-9)
        assert partial_contribution(s, bg, 2) == pytest.approx(p[1], rel=1e-12)


def test_total_power_forms():
    bg = BetaGamma.from_gamma(3.0)
    assert total_power(bg) == pytest.approx(2 / 3 * 64, rel=1e-14)
    cfg = ChargeConfig(radius=None, field=2.0, mass=1.0)
    assert total_power(bg, cfg) == pytest.approx(2 / 3 * 4 * 8, rel=1e-14)


@pytest.mark.slow
def test_ultrarelativistic_bridge():
    bg = BetaGamma.from_gamma(10.0)
    scale = 1.5 * bg.gamma**3
    for s in TABLE_ORDER:
        for y in (0.2, 0.6, 1.0):
            nu = round(y * scale)
            exact = scale * harmonic_power_upper(s, bg, nu)
            assert exact == pytest.approx(spectral_density(s, nu / scale), rel=0.03)


def test_spectrum_nonnegative_and_sum_rules():
    spec = harmonic_spectrum(BetaGamma.from_beta(0.9))
    for v in spec.values():
        assert np.all(v >= 0)
    np.testing.assert_allclose(spec[P.TOTAL], spec[P.SIGMA] + spec[P.PI], rtol=1e-12, atol=1e-300)
    assert total_fraction(P.TOTAL) == 0.5


def test_circular_weight_limits_and_monotonicity():
    # chi_1(beta) = (4/3)(4 Phi_+1 - 1) runs from 1 down to 4/(pi sqrt3)
    chi = []
    for beta in (0.01, 0.3, 0.6, 0.9, 0.95):
        bg = BetaGamma.from_beta(beta)
        right = total_fraction_exact(P.RIGHT, bg)
        left = total_fraction_exact(P.LEFT, bg)
        assert right >= left
        chi.append(4 / 3 * (4 * right - 1))
    assert chi[0] == pytest.approx(1.0, abs=1e-4)
    assert all(a > b for a, b in zip(chi, chi[1:]))
    assert chi[-1] > 4 / (math.pi * math.sqrt(3))
