"""Quantitative characteristics of the polarization-component spectra.

Ultrarelativistic limit (scaled frequency ``y``):

* spectral maximum ``y_max``;
* effective width: the shortest ``[y1, y2]`` holding half of the power,
  characterized by ``F(y1) = F(y2)`` and ``Phi(y2) - Phi(y1) = Phi_tot / 2``;
* half-width: the two points where ``F`` drops to half its maximum;
* power fractions ``eta`` and ratios ``r`` assembled into a summary row.

Finite velocity: the shortest run of harmonics whose partial contributions
add up to at least one half.

Harmonic coefficients ``a = 3 y / 2`` convert to harmonic numbers through
``nu = a * gamma**3``.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exact_spectrum import (
    BetaGamma,
    ChargeConfig,
    TAIL_WARN_RATIO,
    TruncationError,
    geometric_tail,
    harmonic_spectrum,
    total_fraction_closed_form,
)
from .numerics import BracketError, NumericsError, find_root, maximize_unimodal
from .ultra import (
    PHI_VALIDITY_LIMIT,
    TABLE_ORDER,
    Polarization,
    cumulative_power,
    spectral_density,
    total_fraction,
)

__all__ = [
    "WidthError",
    "SpectrumMaximum",
    "WidthSolution",
    "HalfWidthSolution",
    "SummaryRow",
    "DiscreteWindow",
    "SUMMARY_FIELDS",
    "find_spectrum_maximum",
    "partner_point",
    "power_window_end",
    "effective_width",
    "minimality_certificate",
    "half_width",
    "summary_row",
    "summary_table",
    "harmonic_scaling",
    "discrete_effective_width",
    "window_coverage",
]

log = logging.getLogger(__name__)

_SEARCH_MAX = 3.0
_START_Y1 = 1e-6
_FLOOR_Y = 1e-12


class WidthError(NumericsError):
    """A bracket for one of the width equations could not be built."""


class SpectrumMaximum(NamedTuple):
    y_max: float
    f_max: float

    @property
    def a_max(self) -> float:
        return 1.5 * self.y_max


@dataclass(frozen=True)
class WidthSolution:
    s: Polarization
    y1: float
    y2: float
    delta: float
    a1: float
    a2: float
    b: float
    residual_power: float
    residual_density: float


@dataclass(frozen=True)
class HalfWidthSolution:
    s: Polarization
    y3: float
    y4: float
    f_max: float
    a3: float
    a4: float
    d: float


@dataclass(frozen=True)
class SummaryRow:
    """All tabulated characteristics of one component, in table row order."""

    s: Polarization
    y_max: float
    F_at_max: float
    Phi_at_max: float
    eta_max: float
    y1: float
    F_at_y1: float
    Phi_at_y1: float
    eta1: float
    y2: float
    Phi_at_y2: float
    eta2: float
    y3: float
    Phi_at_y3: float
    eta3: float
    y4: float
    Phi_at_y4: float
    eta4: float
    a_max: float
    a1: float
    a2: float
    a3: float
    a4: float
    b: float
    d: float
    r1: float
    r2: float
    r3: float

    def values(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in SUMMARY_FIELDS}


SUMMARY_FIELDS = tuple(f.name for f in dataclasses.fields(SummaryRow) if f.name != "s")


@dataclass(frozen=True)
class DiscreteWindow:
    s: Polarization
    beta: float
    nu1: int
    nu2: int
    lam: int
    coverage: float
    excess: float


# --------------------------------------------------------------------------- #
# Continuous (ultrarelativistic) characteristics
# --------------------------------------------------------------------------- #

def find_spectrum_maximum(s: Polarization) -> SpectrumMaximum:
    """Location and height of the maximum of ``F_s`` on ``(0, 3]``."""
    s = Polarization(s)
    y, f = maximize_unimodal(lambda y: spectral_density(s, y), (_START_Y1, _SEARCH_MAX))
    return SpectrumMaximum(y, f)


def _grow_right(fn, start: float, target: float) -> float:
    """First doubling point past ``start`` where the decreasing ``fn`` is below ``target``."""
    hi = max(2.0 * start, 1.0)
    while fn(hi) > target:
        hi *= 2.0
        if hi > PHI_VALIDITY_LIMIT:
            raise WidthError(f"no point below {target!r} up to y={PHI_VALIDITY_LIMIT}")
    return hi


def partner_point(s: Polarization, y1: float, peak: SpectrumMaximum | None = None) -> float:
    """The ``y2 >= y_max`` with ``F_s(y2) = F_s(y1)`` (``y1 <= y_max``)."""
    s = Polarization(s)
    peak = peak or find_spectrum_maximum(s)
    if y1 >= peak.y_max:
        return peak.y_max
    target = spectral_density(s, y1)
    fn = lambda y: spectral_density(s, y) - target  # noqa: E731
    hi = _grow_right(fn, peak.y_max, 0.0)
    return find_root(fn, (peak.y_max, hi))


def power_window_end(s: Polarization, y1: float) -> float:
    """The ``y2`` with ``Phi_s(y2) - Phi_s(y1) = Phi_tot / 2``."""
    s = Polarization(s)
    goal = cumulative_power(s, y1) + 0.5 * total_fraction(s)
    fn = lambda y: cumulative_power(s, y) - goal  # noqa: E731
    lo = max(y1, _FLOOR_Y)
    hi = _grow_right(lambda y: -fn(y), lo, 0.0)
    return find_root(fn, (lo, hi))


def effective_width(s: Polarization, peak: SpectrumMaximum | None = None) -> WidthSolution:
    """Solve for the shortest interval carrying half of the component's power.

    For each trial ``y1 < y_max`` the partner ``y2`` with equal density is
    found by an inner root search; the outer search drives the enclosed
    power to one half.  The enclosed power falls monotonically as ``y1``
    moves toward the peak, so both searches are plain bracketed roots.
    """
    s = Polarization(s)
    peak = peak or find_spectrum_maximum(s)
    half_total = 0.5 * total_fraction(s)

    def residual(y1: float) -> float:
        y2 = partner_point(s, y1, peak)
        return cumulative_power(s, y2) - cumulative_power(s, y1) - half_total

    lo = _START_Y1
    r_lo = residual(lo)
    while r_lo <= 0.0:
        lo *= 1e-2
        if lo < _FLOOR_Y:
            raise WidthError(f"{s.key}: enclosed power stays below one half near y=0")
        r_lo = residual(lo)
    # Walk geometrically toward the peak until the residual changes sign.
    hi = lo
    while True:
        nxt = min(hi * 10.0, peak.y_max)
        if residual(nxt) < 0.0 or nxt == peak.y_max:
            lo, hi = hi, nxt
            break
        hi = nxt
    try:
        y1 = find_root(residual, (lo, hi))
    except BracketError as exc:
        raise WidthError(f"{s.key}: could not bracket the effective width: {exc}") from exc
    y2 = partner_point(s, y1, peak)
    return WidthSolution(
        s=s,
        y1=y1,
        y2=y2,
        delta=y2 - y1,
        a1=1.5 * y1,
        a2=1.5 * y2,
        b=1.5 * (y2 - y1),
        residual_power=abs(cumulative_power(s, y2) - cumulative_power(s, y1) - half_total),
        residual_density=abs(spectral_density(s, y2) - spectral_density(s, y1)),
    )


def minimality_certificate(solution: WidthSolution, step: float = 1e-3) -> tuple[float, float]:
    """Widths of the half-power windows starting at ``y1 -+ step``.

    A local minimum at the solution means both exceed ``solution.delta``
    (up to second order in ``step``).
    """
    out = []
    for y1 in (solution.y1 - step, solution.y1 + step):
        out.append(power_window_end(solution.s, y1) - y1)
    return out[0], out[1]


def half_width(s: Polarization, peak: SpectrumMaximum | None = None) -> HalfWidthSolution:
    """Points on both sides of the maximum where ``F_s`` is half its peak."""
    s = Polarization(s)
    peak = peak or find_spectrum_maximum(s)
    level = 0.5 * peak.f_max
    fn = lambda y: spectral_density(s, y) - level  # noqa: E731
    lo = 1e-9
    while fn(lo) >= 0.0:
        lo *= 1e-3
        if lo < _FLOOR_Y:
            raise WidthError(f"{s.key}: density does not fall to half maximum near y=0")
    y3 = find_root(fn, (lo, peak.y_max))
    y4 = find_root(fn, (peak.y_max, _grow_right(fn, peak.y_max, 0.0)))
    return HalfWidthSolution(
        s=s, y3=y3, y4=y4, f_max=peak.f_max, a3=1.5 * y3, a4=1.5 * y4, d=1.5 * (y4 - y3)
    )


def summary_row(s: Polarization) -> SummaryRow:
    s = Polarization(s)
    peak = find_spectrum_maximum(s)
    width = effective_width(s, peak)
    half = half_width(s, peak)
    total = total_fraction(s)
    phi = {key: cumulative_power(s, y) for key, y in
           (("max", peak.y_max), ("1", width.y1), ("2", width.y2), ("3", half.y3), ("4", half.y4))}
    eta = {key: value / total for key, value in phi.items()}
    return SummaryRow(
        s=s,
        y_max=peak.y_max,
        F_at_max=peak.f_max,
        Phi_at_max=phi["max"],
        eta_max=eta["max"],
        y1=width.y1,
        F_at_y1=spectral_density(s, width.y1),
        Phi_at_y1=phi["1"],
        eta1=eta["1"],
        y2=width.y2,
        Phi_at_y2=phi["2"],
        eta2=eta["2"],
        y3=half.y3,
        Phi_at_y3=phi["3"],
        eta3=eta["3"],
        y4=half.y4,
        Phi_at_y4=phi["4"],
        eta4=eta["4"],
        a_max=peak.a_max,
        a1=width.a1,
        a2=width.a2,
        a3=half.a3,
        a4=half.a4,
        b=width.b,
        d=half.d,
        r1=(peak.a_max - width.a1) / width.b,
        r2=eta["max"] - eta["1"],
        r3=eta["4"] - eta["3"],
    )


def summary_table(components=TABLE_ORDER) -> list[SummaryRow]:
    return [summary_row(s) for s in components]


_SCALABLE = {"a_max", "a1", "a2", "a3", "a4", "b", "d"}


def harmonic_scaling(
    s: Polarization,
    gamma: float,
    coefficient: str,
    row: SummaryRow | None = None,
) -> float:
    """Harmonic number ``coefficient * gamma**3`` (a real; round if needed).

    ``b`` and ``d`` give the effective width and half-width in harmonics.
    """
    if coefficient not in _SCALABLE:
        raise ValueError(f"coefficient must be one of {sorted(_SCALABLE)}, got {coefficient!r}")
    if not gamma >= 1.0:
        raise ValueError(f"gamma must be >= 1, got {gamma}")
    row = row or summary_row(s)
    return getattr(row, coefficient) * gamma**3


# --------------------------------------------------------------------------- #
# Discrete (finite velocity) effective width
# --------------------------------------------------------------------------- #

def window_coverage(contributions: np.ndarray, nu1: int, nu2: int) -> float:
    """Sum of partial contributions of harmonics ``nu1..nu2`` (1-based, inclusive)."""
    return math.fsum(contributions[nu1 - 1:nu2])


def discrete_effective_width(
    s: Polarization,
    bg: BetaGamma,
    nu_max: int | None = None,
    cfg: ChargeConfig | None = None,
    contributions: np.ndarray | None = None,
) -> DiscreteWindow:
    """Shortest run of harmonics holding at least half of the component's power.

    Among runs of minimal length the one with the smallest excess over one
    half wins; remaining ties go to the lowest starting harmonic.  A
    two-pointer sweep finds, for every right end, the shortest feasible run.

    Raises:
        TruncationError: the harmonic range cannot certify the answer, i.e.
            a run reaching past ``nu_max`` could still be as short, or (for
            circular components, whose normalization is itself a truncated
            sum) the neglected tail exceeds ``TAIL_WARN_RATIO``.
    """
    s = Polarization(s)
    if contributions is None:
        terms = harmonic_spectrum(bg, nu_max, cfg)[s]
        denom = total_fraction_closed_form(s, bg)
        if denom is None:
            denom = math.fsum(terms)
            tail = geometric_tail(terms, floor=1e-10 * denom)
            if tail > TAIL_WARN_RATIO * denom:
                raise TruncationError(
                    f"{s.key}: tail estimate {tail:.3e} too large after {len(terms)} harmonics"
                )
            missing = tail / denom
        else:
            missing = None
        p = terms / denom
    else:
        p = np.asarray(contributions, dtype=float)
        missing = None
    n = len(p)
    if missing is None:
        missing = max(0.0, 1.0 - math.fsum(p))

    best = None  # (length, excess, nu1, nu2, coverage)
    left = 1
    for right in range(1, n + 1):
        while left < right and window_coverage(p, left + 1, right) >= 0.5:
            left += 1
        cov = window_coverage(p, left, right)
        if cov < 0.5:
            continue
        cand = (right - left, cov - 0.5, left, right, cov)
        if best is None or cand[:2] < best[:2]:
            best = cand
        elif cand[:2] == best[:2]:
            log.info("%s: tie between windows [%d, %d] and [%d, %d]", s.key, *best[2:4], left, right)
    if best is None:
        raise TruncationError(f"{s.key}: no run of the first {n} harmonics reaches one half")

    length = best[0] + 1
    reach = window_coverage(p, max(1, n - length + 1), n) + missing
    if reach >= 0.5:
        raise TruncationError(
            f"{s.key}: a run of {length} harmonics crossing nu_max={n} may still cover one half"
        )
    return DiscreteWindow(
        s=s, beta=bg.beta, nu1=best[2], nu2=best[3], lam=length, coverage=best[4], excess=best[1]
    )
