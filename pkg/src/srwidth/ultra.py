"""Ultrarelativistic spectra of the synchrotron polarization components.

Frequencies are measured in the scaled variable ``y = 2 nu / (3 gamma**3)``,
where ``nu`` is the harmonic number.  The module exposes

* the spectral densities ``F_s(y)`` (upper half-space),
* their running integrals ``Phi_s(y) = int_0^y F_s``, in closed form,
* the total fractions ``Phi_s(inf)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .numerics import DomainError, macdonald_k, macdonald_k13_tail

__all__ = [
    "Polarization",
    "TABLE_ORDER",
    "SpectralSample",
    "spectral_density",
    "spectral_densities",
    "cumulative_power",
    "auxiliary_j",
    "total_fraction",
    "PHI_VALIDITY_LIMIT",
]

_SQRT3 = math.sqrt(3.0)
_PI = math.pi
_DENSITY_PREFACTOR = 9.0 * _SQRT3 / (32.0 * _PI)
_CIRCULAR_PREFACTOR = 9.0 / (16.0 * _PI**2)

# Phi_2 subtracts two terms growing like y**2; beyond this the loss of
# significant digits is no longer negligible.
PHI_VALIDITY_LIMIT = 30.0


class Polarization(enum.IntEnum):
    """Polarization component, valued by its conventional index ``s``."""

    TOTAL = 0
    SIGMA = 2
    PI = 3
    RIGHT = 1
    LEFT = -1

    @property
    def key(self) -> str:
        """Serialization key: ``s0``, ``s2``, ``s3``, ``s+1``, ``s-1``."""
        return f"s{self.value:+d}" if self.value in (1, -1) else f"s{self.value}"

    @classmethod
    def parse(cls, text: str | int) -> Polarization:
        if isinstance(text, int):
            return cls(text)
        t = str(text).strip().lower()
        if t.startswith("s"):
            t = t[1:]
        by_name = {p.name.lower(): p for p in cls}
        if t in by_name:
            return by_name[t]
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"unknown polarization component {text!r}") from None


# Column order of the published table.
TABLE_ORDER = (
    Polarization.TOTAL,
    Polarization.SIGMA,
    Polarization.PI,
    Polarization.LEFT,
    Polarization.RIGHT,
)


@dataclass(frozen=True)
class SpectralSample:
    y: float
    f: float


def _check_y(y: float) -> float:
    y = float(y)
    if not y >= 0:
        raise DomainError(f"scaled frequency must be >= 0, got {y}")
    return y


def spectral_densities(y: float) -> dict[Polarization, float]:
    """All five densities ``F_s(y)`` at once (shares the special functions)."""
    y = _check_y(y)
    if y == 0.0:
        return {s: 0.0 for s in Polarization}
    k23 = macdonald_k(2 / 3, y)
    tail = macdonald_k13_tail(y)
    f2 = _DENSITY_PREFACTOR * y * (3.0 * k23 - tail)
    f3 = _DENSITY_PREFACTOR * y * (k23 - tail)
    f0 = f2 + f3
    circ = _CIRCULAR_PREFACTOR * y * macdonald_k(1 / 3, 0.5 * y) ** 2
    return {
        Polarization.TOTAL: f0,
        Polarization.SIGMA: f2,
        Polarization.PI: f3,
        Polarization.RIGHT: 0.5 * f0 + circ,
        Polarization.LEFT: 0.5 * f0 - circ,
    }


def spectral_density(s: Polarization, y: float) -> float:
    """Spectral density ``F_s(y)`` of component ``s``; zero at ``y = 0``."""
    s = Polarization(s)
    y = _check_y(y)
    if y == 0.0:
        return 0.0
    tail = macdonald_k13_tail(y)
    k23 = macdonald_k(2 / 3, y)
    if s is Polarization.SIGMA:
        return _DENSITY_PREFACTOR * y * (3.0 * k23 - tail)
    if s is Polarization.PI:
        return _DENSITY_PREFACTOR * y * (k23 - tail)
    f0 = _DENSITY_PREFACTOR * y * (4.0 * k23 - 2.0 * tail)
    if s is Polarization.TOTAL:
        return f0
    circ = _CIRCULAR_PREFACTOR * y * macdonald_k(1 / 3, 0.5 * y) ** 2
    return 0.5 * f0 + circ if s is Polarization.RIGHT else 0.5 * f0 - circ


def _aux(k: int, y: float) -> float:
    if k == 3:
        if y == 0.0:
            # y K_{1/3}(y) K_{2/3}(y) -> int_0^inf K_{1/3} as y -> 0
            return -2.0 * macdonald_k13_tail(0.0)
        k13, k23 = macdonald_k(1 / 3, y), macdonald_k(2 / 3, y)
        return 3.0 * y * y * (k13 * k13 - k23 * k23) - 2.0 * y * k13 * k23
    if y == 0.0:
        return 0.0
    head = macdonald_k13_tail(0.0) - macdonald_k13_tail(y)
    k13 = macdonald_k(1 / 3, y)
    if k == 1:
        return 2.0 / 3.0 * head - y * k13
    k23 = macdonald_k(2 / 3, y)
    return (0.5 * y * y - 4.0 / 9.0) * head + 2.0 / 3.0 * y * k13 + 0.5 * y * y * k23


def auxiliary_j(k: int, y: float) -> float:
    """Helper combinations ``J_1``, ``J_2``, ``J_3`` of MacDonald functions.

    ``J_1(y) = 2/3 A(y) - y K13(y)``,
    ``J_2(y) = (y^2/2 - 4/9) A(y) + 2/3 y K13(y) + y^2/2 K23(y)``,
    ``J_3(y) = 3 y^2 (K13^2 - K23^2) - 2 y K13 K23``,
    with ``A(y) = int_0^y K13``.  At ``y = 0`` the continuous limits are
    returned (``J_3(0)`` is finite and nonzero).
    """
    if k not in (1, 2, 3):
        raise ValueError(f"auxiliary index must be 1, 2 or 3, got {k!r}")
    return _aux(k, _check_y(y))


def cumulative_power(s: Polarization, y: float) -> float:
    """Running power ``Phi_s(y) = int_0^y F_s``, evaluated in closed form.

    The closed form for the pi component is ``Phi_2 - (9 sqrt3 / 16 pi) J_1``;
    the opposite sign would integrate to 13/16 instead of 1/16.  Accurate for
    ``y <= PHI_VALIDITY_LIMIT``; use :func:`total_fraction` for ``y = inf``.
    """
    s = Polarization(s)
    y = _check_y(y)
    if y == 0.0:
        return 0.0
    j1 = _aux(1, y)
    phi2 = _DENSITY_PREFACTOR * (3.0 * j1 + _aux(2, y) - _PI * y * y / (2.0 * _SQRT3))
    if s is Polarization.SIGMA:
        return phi2
    phi3 = phi2 - 2.0 * _DENSITY_PREFACTOR * j1
    if s is Polarization.PI:
        return phi3
    phi0 = phi2 + phi3
    if s is Polarization.TOTAL:
        return phi0
    circ = 3.0 / (8.0 * _PI**2) * _aux(3, 0.5 * y) + _SQRT3 / (4.0 * _PI)
    return 0.5 * phi0 + circ if s is Polarization.RIGHT else 0.5 * phi0 - circ


_TOTALS = {
    Polarization.SIGMA: 7.0 / 16.0,
    Polarization.PI: 1.0 / 16.0,
    Polarization.TOTAL: 0.5,
    Polarization.RIGHT: 0.25 * (1.0 + _SQRT3 / _PI),
    Polarization.LEFT: 0.25 * (1.0 - _SQRT3 / _PI),
}


def total_fraction(s: Polarization) -> float:
    """Exact total ``Phi_s(inf)``: 1/2, 7/16, 1/16, (1 +- sqrt3/pi)/4."""
    return _TOTALS[Polarization(s)]
