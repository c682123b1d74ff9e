from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from srwidth.numerics import DomainError
from srwidth.ultra import (
    PHI_VALIDITY_LIMIT,
    TABLE_ORDER,
    Polarization,
    auxiliary_j,
    cumulative_power,
    spectral_densities,
    spectral_density,
    total_fraction,
)

P = Polarization
_C = 9 * math.sqrt(3) / (32 * math.pi)


def _density_scipy(s, y):
    tail = integrate.quad(lambda t: special.kv(1 / 3, t), y, math.inf, epsrel=1e-13)[0]
    k23 = special.kv(2 / 3, y)
    f2 = _C * y * (3 * k23 - tail)
    f3 = _C * y * (k23 - tail)
    circ = 9 / (16 * math.pi**2) * y * special.kv(1 / 3, y / 2) ** 2
    return {P.SIGMA: f2, P.PI: f3, P.TOTAL: f2 + f3,
            P.RIGHT: (f2 + f3) / 2 + circ, P.LEFT: (f2 + f3) / 2 - circ}[s]


@pytest.mark.parametrize("s", list(P))
@pytest.mark.parametrize("y", [1e-4, 0.05, 0.285812, 1.0, 7.0])
def test_density_against_scipy(s, y):
    assert spectral_density(s, y) == pytest.approx(_density_scipy(s, y), rel=1e-11)


def test_density_at_zero_and_domain():
    assert all(spectral_density(s, 0.0) == 0.0 for s in P)
    assert cumulative_power(P.TOTAL, 0.0) == 0.0
    with pytest.raises(DomainError):
        spectral_density(P.TOTAL, -1.0)


def test_batch_matches_single():
    batch = spectral_densities(0.7)
    for s in P:
        assert batch[s] == pytest.approx(spectral_density(s, 0.7), rel=1e-15)


def test_peak_value():
    assert spectral_density(P.TOTAL, 0.285812) == pytest.approx(0.284696, rel=5e-6)


@pytest.mark.parametrize("s", list(P))
def test_cumulative_saturates(s):
    assert cumulative_power(s, PHI_VALIDITY_LIMIT) == pytest.approx(total_fraction(s), abs=1e-9)


def test_pi_component_total_is_one_sixteenth():
    # the opposite sign in front of J_1 would saturate at 13/16
    assert cumulative_power(P.PI, 25.0) == pytest.approx(1 / 16, abs=1e-10)


def test_auxiliary_j3_limit():
    assert auxiliary_j(3, 0.0) == pytest.approx(auxiliary_j(3, 1e-9), abs=1e-5)
    assert auxiliary_j(3, 0.0) == pytest.approx(-2 * math.pi / math.sqrt(3), rel=1e-15)
    with pytest.raises(ValueError):
        auxiliary_j(4, 1.0)


@given(st.floats(0.01, 10.0))
@settings(max_examples=25, deadline=None)
def test_cumulative_is_increasing_and_bounded(y):
    for s in TABLE_ORDER:
        v = cumulative_power(s, y)
        assert 0.0 < v < total_fraction(s) + 1e-12
        assert cumulative_power(s, y * 1.01) > v


@given(st.floats(0.001, 10.0))
@settings(max_examples=25, deadline=None)
def test_component_sum_rules(y):
    f = spectral_densities(y)
    assert f[P.TOTAL] == pytest.approx(f[P.SIGMA] + f[P.PI], rel=1e-14)
    assert f[P.TOTAL] == pytest.approx(f[P.RIGHT] + f[P.LEFT], rel=1e-14)
    assert f[P.LEFT] > 0


def test_polarization_keys_and_parsing():
    assert [s.key for s in TABLE_ORDER] == ["s0", "s2", "s3", "s-1", "s+1"]
    assert P.parse("s+1") is P.RIGHT
    assert P.parse("left") is P.LEFT
    assert P.parse("-1") is P.LEFT
    assert P.parse(3) is P.PI
    with pytest.raises(ValueError):
        P.parse("s7")
