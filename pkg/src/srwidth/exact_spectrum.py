"""Exact (finite velocity) synchrotron spectra over discrete harmonics.

Angular densities ``f_s(beta; nu, theta)``, their integrals over the upper
and lower half-spaces ``F_s(+-)(beta; nu)``, harmonic sums, total radiated
power and partial contributions of single harmonics.

The charge sign enters through ``epsilon = -e/|e|`` (``+1`` for an electron)
and only affects the circular components.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .numerics import (
    BESSEL_ORDER_CAP,
    DomainError,
    Tolerance,
    bessel_j,
    bessel_j_neighbors,
    bessel_j_prime,
    integrate_adaptive,
)
from .ultra import Polarization

__all__ = [
    "BetaGamma",
    "ChargeConfig",
    "HarmonicPower",
    "TruncationWarning",
    "TruncationError",
    "ConfigurationError",
    "HARMONIC_CAP",
    "TAIL_WARN_RATIO",
    "NOISE_FLOOR_RATIO",
    "default_nu_max",
    "angular_density",
    "harmonic_power_upper",
    "harmonic_power_lower",
    "harmonic_power",
    "harmonic_power_by_quadrature",
    "harmonic_spectrum",
    "geometric_tail",
    "total_fraction_exact",
    "total_fraction_closed_form",
    "total_power",
    "partial_contribution",
    "partial_contributions",
]

# The closed forms need J_{2nu+1}.
HARMONIC_CAP = (BESSEL_ORDER_CAP - 1) // 2
TAIL_WARN_RATIO = 1e-8
# Harmonic powers below this fraction of the sum are rounding noise of the
# closed forms: cos() of phases near 2*nu*beta loses ~eps*2*nu*beta.
NOISE_FLOOR_RATIO = 1e-10


class TruncationWarning(UserWarning):
    """Harmonic sum truncated before its tail became negligible."""


class TruncationError(ValueError):
    """Truncated harmonic range is too short for the requested result."""


class ConfigurationError(ValueError):
    """Incomplete or ambiguous :class:`ChargeConfig`."""


@dataclass(frozen=True)
class BetaGamma:
    """Orbital speed ``beta = v/c`` together with ``gamma = 1/sqrt(1-beta^2)``."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise DomainError(f"beta must lie in [0, 1), got {self.beta}")
        if abs(self.gamma * math.sqrt(1.0 - self.beta**2) - 1.0) > 1e-14:
            raise DomainError(f"gamma={self.gamma} inconsistent with beta={self.beta}")

    @classmethod
    def from_beta(cls, beta: float) -> BetaGamma:
        beta = float(beta)
        if not 0.0 <= beta < 1.0:
            raise DomainError(f"beta must lie in [0, 1), got {beta}")
        return cls(beta, 1.0 / math.sqrt(1.0 - beta * beta))

    @classmethod
    def from_gamma(cls, gamma: float) -> BetaGamma:
        gamma = float(gamma)
        if not gamma >= 1.0:
            raise DomainError(f"gamma must be >= 1, got {gamma}")
        beta = math.sqrt((gamma - 1.0) * (gamma + 1.0)) / gamma
        return cls(beta, 1.0 / math.sqrt(1.0 - beta * beta))


@dataclass(frozen=True)
class ChargeConfig:
    """Charge and orbit parameters, in any consistent unit system.

    Exactly one of ``radius`` (orbit radius form of the total power) or
    ``field`` (magnetic field form, which also needs ``mass``) must be set.
    ``charge`` is signed; an electron has ``charge < 0`` and ``epsilon = +1``.
    """

    charge: float = -1.0
    c: float = 1.0
    radius: float | None = 1.0
    field: float | None = None
    mass: float | None = None
    units: str = "natural"

    def __post_init__(self):
        if self.charge == 0 or not math.isfinite(self.charge):
            raise ConfigurationError("charge must be a nonzero finite number")
        if (self.radius is None) == (self.field is None):
            raise ConfigurationError("set exactly one of radius or field")
        if self.radius is not None and not self.radius > 0:
            raise ConfigurationError(f"radius must be positive, got {self.radius}")
        if self.field is not None:
            if not self.field > 0:
                raise ConfigurationError(f"field must be positive, got {self.field}")
            if self.mass is None or not self.mass > 0:
                raise ConfigurationError("field parametrization requires a positive mass")
        if not self.c > 0:
            raise ConfigurationError(f"speed of light must be positive, got {self.c}")

    @property
    def epsilon(self) -> int:
        return -1 if self.charge > 0 else 1

    @classmethod
    def electron(cls, **kwargs) -> ChargeConfig:
        return cls(charge=-abs(kwargs.pop("charge", 1.0)), **kwargs)

    @classmethod
    def positron(cls, **kwargs) -> ChargeConfig:
        return cls(charge=abs(kwargs.pop("charge", 1.0)), **kwargs)


_ELECTRON = ChargeConfig()


@dataclass(frozen=True)
class HarmonicPower:
    s: Polarization
    nu: int
    upper: float
    lower: float


def _check_nu(nu) -> int:
    n = int(nu)
    if n != nu or n < 1:
        raise DomainError(f"harmonic number must be a positive integer, got {nu!r}")
    return n


def _require_moving(bg: BetaGamma) -> None:
    if not bg.beta > 0:
        raise DomainError("beta = 0 carries no radiation; use a small positive beta for limits")


def default_nu_max(bg: BetaGamma) -> int:
    """Harmonics to sum: ``max(50, ceil(40 gamma^3))``, capped at :data:`HARMONIC_CAP`.

    Harmonic powers fall off like ``exp(-2 nu / 3 gamma^3)``, so ``40 gamma^3``
    leaves a tail near ``1e-12`` of the sum.
    """
    return int(min(max(50, math.ceil(40.0 * bg.gamma**3)), HARMONIC_CAP))


# --------------------------------------------------------------------------- #
# Angular densities
# --------------------------------------------------------------------------- #

def _weighted_angular(s: Polarization, bg: BetaGamma, nu: int, theta, eps: int):
    """``f_s * sin(theta)``; the 1/sin(theta) of f_3, f_+-1 cancels analytically."""
    theta = np.asarray(theta, dtype=float)
    beta, g4 = bg.beta, bg.gamma**4
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    x = nu * beta * sin_t
    jp = bessel_j_prime(nu, x)
    pre = nu * nu / g4
    if s is Polarization.SIGMA:
        return 1.5 * pre * jp * jp * sin_t
    j = bessel_j(nu, x)
    if s is Polarization.PI:
        return 1.5 * pre * cos_t * cos_t * j * j / (beta * beta * sin_t)
    if s is Polarization.TOTAL:
        return 1.5 * pre * (jp * jp * sin_t + cos_t * cos_t * j * j / (beta * beta * sin_t))
    sign = eps if s is Polarization.RIGHT else -eps
    # sin * [J' + sign cos J /(beta sin)]^2 = (sin J' + sign cos J / beta)^2 / sin
    root = sin_t * jp + sign * cos_t * j / beta
    return 0.75 * pre * root * root / sin_t


def angular_density(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    theta: float,
    cfg: ChargeConfig | None = None,
) -> float:
    """Angular density ``f_s(beta; nu, theta)`` of harmonic ``nu``.

    Components carrying ``cos(theta)/sin(theta)`` (pi and circular) reject
    ``theta`` in ``{0, pi}``, and every component except sigma requires
    ``beta > 0``.
    """
    s = Polarization(s)
    nu = _check_nu(nu)
    theta = float(theta)
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    eps = (cfg or _ELECTRON).epsilon
    if s is Polarization.SIGMA:
        x = nu * bg.beta * math.sin(theta)
        return 1.5 * nu * nu / bg.gamma**4 * float(bessel_j_prime(nu, x)) ** 2
    _require_moving(bg)
    sin_t = math.sin(theta)
    if theta in (0.0, math.pi) or sin_t == 0.0:
        raise DomainError(f"component {s.key} is singular at theta={theta}")
    return float(_weighted_angular(s, bg, nu, theta, eps)) / sin_t


def harmonic_power_by_quadrature(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    half: str = "upper",
    cfg: ChargeConfig | None = None,
    tol: Tolerance | None = None,
) -> float:
    """Integrate ``f_s sin(theta)`` over one half-space by adaptive quadrature.

    Independent of the closed forms used by :func:`harmonic_power_upper`.
    """
    s = Polarization(s)
    nu = _check_nu(nu)
    _require_moving(bg)
    eps = (cfg or _ELECTRON).epsilon
    limits = {"upper": (0.0, 0.5 * math.pi), "lower": (0.5 * math.pi, math.pi)}[half]
    tol = tol or Tolerance(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=2000)
    return integrate_adaptive(
        lambda t: _weighted_angular(s, bg, nu, t, eps), limits, tol, vectorized=True
    )


# --------------------------------------------------------------------------- #
# Per-harmonic closed forms
# --------------------------------------------------------------------------- #

def _upper_parts(bg: BetaGamma, nu: int) -> tuple[float, float, float]:
    """``(F_2, F_3, circular term)`` of the upper half-space for harmonic ``nu``."""
    beta, gamma = bg.beta, bg.gamma
    order, X = 2 * nu, 2.0 * nu * beta
    pre = 3.0 * nu / (4.0 * gamma**4 * beta**3)
    j_below, j_above, c_below, plain, c_above = bessel_j_neighbors(order, X)
    over_x = (c_below + c_above) / (2.0 * order)
    deriv = 0.5 * (j_below - j_above)
    f2 = pre * (2.0 * beta * beta * deriv + beta * beta * plain - X * over_x)
    f3 = pre * (X * over_x - plain)
    circ = 3.0 * nu * bessel_j(nu, nu * beta) ** 2 / (4.0 * gamma**4 * beta**2)
    return f2, f3, circ


def _combine(s: Polarization, f2: float, f3: float, circ: float, eps: int) -> float:
    # Rounding can push exponentially small powers just below zero.
    if s is Polarization.SIGMA:
        return max(f2, 0.0)
    if s is Polarization.PI:
        return max(f3, 0.0)
    f0 = f2 + f3
    if s is Polarization.TOTAL:
        return max(f0, 0.0)
    sign = eps if s is Polarization.RIGHT else -eps
    return max(0.5 * f0 + sign * circ, 0.0)


def _check_harmonic(bg: BetaGamma, nu) -> int:
    nu = _check_nu(nu)
    _require_moving(bg)
    if nu > HARMONIC_CAP:
        raise DomainError(f"harmonic {nu} exceeds the cap {HARMONIC_CAP}")
    return nu


def harmonic_power_upper(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    cfg: ChargeConfig | None = None,
) -> float:
    """Power ``F_s(+)(beta; nu)`` of harmonic ``nu`` radiated into the upper
    half-space ``0 <= theta <= pi/2``, from the theta-integrated closed forms.
    """
    s = Polarization(s)
    nu = _check_harmonic(bg, nu)
    return _combine(s, *_upper_parts(bg, nu), (cfg or _ELECTRON).epsilon)


_MIRROR = {
    Polarization.TOTAL: Polarization.TOTAL,
    Polarization.SIGMA: Polarization.SIGMA,
    Polarization.PI: Polarization.PI,
    Polarization.RIGHT: Polarization.LEFT,
    Polarization.LEFT: Polarization.RIGHT,
}


def harmonic_power_lower(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    cfg: ChargeConfig | None = None,
) -> float:
    """Lower half-space power: linear components mirror themselves, the two
    circular components swap."""
    return harmonic_power_upper(_MIRROR[Polarization(s)], bg, nu, cfg)


def harmonic_power(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    cfg: ChargeConfig | None = None,
) -> HarmonicPower:
    s = Polarization(s)
    return HarmonicPower(
        s=s,
        nu=_check_nu(nu),
        upper=harmonic_power_upper(s, bg, nu, cfg),
        lower=harmonic_power_lower(s, bg, nu, cfg),
    )


def harmonic_spectrum(
    bg: BetaGamma,
    nu_max: int | None = None,
    cfg: ChargeConfig | None = None,
) -> dict[Polarization, np.ndarray]:
    """Upper half-space powers of harmonics ``1..nu_max`` for every component.

    Entry ``i`` of each array belongs to harmonic ``i + 1``.
    """
    _require_moving(bg)
    nu_max = default_nu_max(bg) if nu_max is None else _check_harmonic(bg, nu_max)
    eps = (cfg or _ELECTRON).epsilon
    parts = np.array([_upper_parts(bg, nu) for nu in range(1, nu_max + 1)])
    f2, f3, circ = parts.T
    f0 = f2 + f3
    spectrum = {
        Polarization.TOTAL: f0,
        Polarization.SIGMA: f2,
        Polarization.PI: f3,
        Polarization.RIGHT: 0.5 * f0 + eps * circ,
        Polarization.LEFT: 0.5 * f0 - eps * circ,
    }
    return {s: np.maximum(v, 0.0) for s, v in spectrum.items()}


def geometric_tail(terms: np.ndarray, span: int = 10, floor: float = 0.0) -> float:
    """Tail estimate of a series from the ratio over its last ``span`` terms.

    Terms at or below ``floor`` are treated as rounding noise: if the last
    ``span`` terms all sit there the tail is reported as zero.  Returns
    ``inf`` when the terms are not visibly decaying.
    """
    terms = np.abs(np.asarray(terms, dtype=float))
    if terms.size == 0:
        return math.inf
    last = terms[-1]
    if last == 0.0 or np.all(terms[-span:] <= floor):
        return 0.0
    if terms.size <= span:
        return math.inf
    first = terms[-1 - span]
    if first == 0.0 or last >= first:
        return math.inf
    q = (last / first) ** (1.0 / span)
    return float(last * q / (1.0 - q))


def _truncated_sum(terms: np.ndarray, what: str) -> float:
    total = math.fsum(terms)
    tail = geometric_tail(terms, floor=NOISE_FLOOR_RATIO * abs(total))
    if tail > TAIL_WARN_RATIO * abs(total):
        warnings.warn(
            f"{what}: tail estimate {tail:.3e} exceeds {TAIL_WARN_RATIO:g} of the partial sum "
            f"after {len(terms)} harmonics",
            TruncationWarning,
            stacklevel=3,
        )
    return total


def total_fraction_exact(
    s: Polarization,
    bg: BetaGamma,
    nu_max: int | None = None,
    cfg: ChargeConfig | None = None,
) -> float:
    """Truncated harmonic sum ``sum_nu F_s(+)(beta; nu)``.

    Warns with :class:`TruncationWarning` when the geometric tail estimate
    exceeds ``TAIL_WARN_RATIO`` of the partial sum.
    """
    s = Polarization(s)
    spectrum = harmonic_spectrum(bg, nu_max, cfg)
    return _truncated_sum(spectrum[s], f"sum of F_{s.key}(beta={bg.beta:g})")


def total_fraction_closed_form(s: Polarization, bg: BetaGamma) -> float | None:
    """``(6 + beta^2)/16``, ``(2 - beta^2)/16`` or ``1/2`` for the linear and
    total components; ``None`` for circular ones, whose closed form involves
    a function not available here."""
    b2 = bg.beta**2
    return {
        Polarization.SIGMA: (6.0 + b2) / 16.0,
        Polarization.PI: (2.0 - b2) / 16.0,
        Polarization.TOTAL: 0.5,
    }.get(Polarization(s))


def total_power(bg: BetaGamma, cfg: ChargeConfig | None = None) -> float:
    """Total radiated power ``W`` of unpolarized radiation."""
    cfg = cfg or _ELECTRON
    g2m1 = (bg.gamma - 1.0) * (bg.gamma + 1.0)
    e2 = cfg.charge**2
    if cfg.radius is not None:
        return 2.0 / 3.0 * cfg.c * e2 / cfg.radius**2 * g2m1**2
    return 2.0 / 3.0 * e2 * e2 * cfg.field**2 * g2m1 / (cfg.mass**2 * cfg.c**3)


def partial_contributions(
    s: Polarization,
    bg: BetaGamma,
    nu_max: int | None = None,
    cfg: ChargeConfig | None = None,
) -> tuple[np.ndarray, float]:
    """Partial contributions ``P_s(beta; nu)`` for ``nu = 1..nu_max`` and the
    denominator used (closed form where known, else the truncated sum)."""
    s = Polarization(s)
    terms = harmonic_spectrum(bg, nu_max, cfg)[s]
    denom = total_fraction_closed_form(s, bg)
    if denom is None:
        denom = _truncated_sum(terms, f"sum of F_{s.key}(beta={bg.beta:g})")
    return terms / denom, denom


def partial_contribution(
    s: Polarization,
    bg: BetaGamma,
    nu: int,
    nu_max: int | None = None,
    cfg: ChargeConfig | None = None,
) -> float:
    """Share ``P_s(beta; nu)`` of the upper half-space power in harmonic ``nu``."""
    s = Polarization(s)
    nu = _check_harmonic(bg, nu)
    denom = total_fraction_closed_form(s, bg)
    if denom is None:
        denom = total_fraction_exact(s, bg, nu_max, cfg)
    return harmonic_power_upper(s, bg, nu, cfg) / denom
