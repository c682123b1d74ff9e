"""Self-checks: invariants and independent oracles for every module.

``run_checks("fast")`` stays in the ultrarelativistic limit and at finite
velocity up to ``gamma = 3``; ``"full"`` adds the ``gamma = 10`` cases.
"""

from __future__ import annotations

import itertools
import math
import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from .exact_spectrum import (
    BetaGamma,
    harmonic_power_by_quadrature,
    harmonic_power_upper,
    harmonic_spectrum,
    total_fraction_closed_form,
)
from .numerics import Tolerance, integrate_adaptive, macdonald_k13_tail
from .reference import REFERENCE_COLUMNS, REFERENCE_SHARES, REFERENCE_TABLE, REFERENCE_WIDTH_RATIO
from .ultra import (
    PHI_VALIDITY_LIMIT,
    TABLE_ORDER,
    Polarization,
    cumulative_power,
    spectral_density,
    total_fraction,
)
from .widths import (
    SUMMARY_FIELDS,
    SummaryRow,
    discrete_effective_width,
    effective_width,
    minimality_certificate,
    summary_table,
    window_coverage,
)

__all__ = [
    "Check",
    "RunReport",
    "LEVELS",
    "run_checks",
    "brute_force_window",
    "AMAX_ORDER",
]

LEVELS = ("fast", "full")

# Increasing a_max (and r1, eta_max): pi < right < total < sigma < left.
AMAX_ORDER = (
    Polarization.PI,
    Polarization.RIGHT,
    Polarization.TOTAL,
    Polarization.SIGMA,
    Polarization.LEFT,
)

_ORACLE_TOL = Tolerance(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=4000)


@dataclass(frozen=True)
class Check:
    """One verified property: ``measured`` compared against ``bound``."""

    name: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""

    @classmethod
    def at_most(cls, name: str, measured: float, bound: float, detail: str = "") -> Check:
        measured = float(measured)
        return cls(name, measured, float(bound), bool(measured <= bound), detail)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}: measured {self.measured:.3e}, bound {self.bound:.3e}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass
class RunReport:
    command: str
    level: str
    tolerance: dict
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "level": self.level,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "wall_time": self.wall_time,
        }


# --------------------------------------------------------------------------- #
# Ultrarelativistic limit
# --------------------------------------------------------------------------- #

def _exact_constants() -> list[Check]:
    r3 = math.sqrt(3.0) / math.pi
    expected = {
        Polarization.SIGMA: 7 / 16,
        Polarization.PI: 1 / 16,
        Polarization.TOTAL: 1 / 2,
        Polarization.RIGHT: (1 + r3) / 4,
        Polarization.LEFT: (1 - r3) / 4,
    }
    err = max(abs(total_fraction(s) - v) for s, v in expected.items())
    printed = max(abs(total_fraction(Polarization.RIGHT) - 0.3878322),
                  abs(total_fraction(Polarization.LEFT) - 0.1121678))
    # Closed-form running power saturates to the same constants.
    sat = max(abs(cumulative_power(s, PHI_VALIDITY_LIMIT) - total_fraction(s)) for s in Polarization)
    tail0 = abs(macdonald_k13_tail(0.0) - math.pi / math.sqrt(3.0))
    return [
        Check.at_most("exact total fractions", err, 1e-12),
        Check.at_most("circular fractions vs 7-digit values", printed, 5e-8),
        Check.at_most(f"Phi_s({PHI_VALIDITY_LIMIT:g}) saturates to the totals", sat, 1e-9),
        Check.at_most("int_0^inf K_1/3 = pi/sqrt3", tail0, 1e-13),
    ]


def _closed_form_vs_quadrature() -> list[Check]:
    ys = (0.01, 0.1, 0.5, 1.5, 5.0)
    worst = 0.0
    for s, y in itertools.product(TABLE_ORDER, ys):
        quad = integrate_adaptive(lambda t: spectral_density(s, t), (0.0, y), _ORACLE_TOL)
        worst = max(worst, abs(quad - cumulative_power(s, y)))
    h = 1e-4
    fd = 0.0
    for s, y in itertools.product(TABLE_ORDER, (0.05, 0.3, 1.0, 3.0)):
        slope = (cumulative_power(s, y + h) - cumulative_power(s, y - h)) / (2 * h)
        fd = max(fd, abs(slope - spectral_density(s, y)))
    return [
        Check.at_most("Phi_s closed form vs quadrature (25 pairs)", worst, 1e-8),
        Check.at_most("dPhi_s/dy = F_s by central differences", fd, 1e-6),
    ]


def _sum_rules() -> list[Check]:
    err = 0.0
    for y in (0.0, 0.1, 1.0, 4.0):
        f = {s: spectral_density(s, y) for s in Polarization}
        p = {s: cumulative_power(s, y) for s in Polarization}
        for d in (f, p):
            err = max(err,
                      abs(d[Polarization.TOTAL] - d[Polarization.SIGMA] - d[Polarization.PI]),
                      abs(d[Polarization.TOTAL] - d[Polarization.RIGHT] - d[Polarization.LEFT]))
    return [Check.at_most("F_0 = F_2 + F_3 = F_+1 + F_-1 (and for Phi)", err, 1e-14)]


def _table_checks(rows: list[SummaryRow]) -> list[Check]:
    by_s = {r.s: r for r in rows}
    worst, where = 0.0, ""
    for name in SUMMARY_FIELDS:
        for s_value, ref in zip(REFERENCE_COLUMNS, REFERENCE_TABLE[name]):
            got = getattr(by_s[Polarization(s_value)], name)
            rel = abs(got - ref) / abs(ref)
            if rel > worst:
                worst, where = rel, f"{name}[{Polarization(s_value).key}]"
    checks = [Check.at_most("summary table vs published values (relative)", worst, 1e-4, where)]

    res = 0.0
    cert = math.inf
    for s in TABLE_ORDER:
        sol = effective_width(s)
        res = max(res, sol.residual_power, sol.residual_density)
        lo, hi = minimality_certificate(sol)
        cert = min(cert, lo - sol.delta, hi - sol.delta)
    checks.append(Check.at_most("effective-width residuals", res, 1e-10))
    checks.append(Check("effective-width local minimality", cert, -1e-6, bool(cert >= -1e-6),
                        "min over s of Delta(y1 +- 1e-3) - Delta*"))

    ratio = by_s[Polarization.LEFT].b / by_s[Polarization.PI].b
    checks.append(Check.at_most("b_-1 / b_3", abs(ratio - REFERENCE_WIDTH_RATIO), 0.01,
                                f"ratio {ratio:.5f}"))

    for name in ("a_max", "r1", "eta_max"):
        seq = [getattr(by_s[s], name) for s in AMAX_ORDER]
        gap = min(b - a for a, b in zip(seq, seq[1:]))
        checks.append(Check(f"ordering of {name}: 3 < +1 < 0 < 2 < -1", gap, 0.0, bool(gap > 0),
                            "smallest consecutive gap"))

    r12 = [by_s[s].r1 / by_s[s].r2 for s in TABLE_ORDER]
    outside = max(max(0.0, 1.75 - v, v - 2.05) for v in r12)
    checks.append(Check.at_most("r1/r2 within [1.75, 2.05]", outside, 0.0))
    r3 = min(by_s[s].r3 for s in TABLE_ORDER)
    checks.append(Check("half-width holds more than half the power", r3, 0.5, bool(r3 > 0.5),
                        "min r3"))

    upper = 0.5  # upper half-space power of the total
    shares = {
        "right_upper_half_space": 100 * total_fraction(Polarization.RIGHT) / upper,
        "left_upper_half_space": 100 * total_fraction(Polarization.LEFT) / upper,
        "eta_max_left": 100 * by_s[Polarization.LEFT].eta_max,
        "eta_max_pi": 100 * by_s[Polarization.PI].eta_max,
    }
    dev = max(abs(shares[k] - v) for k, v in REFERENCE_SHARES.items())
    checks.append(Check.at_most("headline percentages (points)", dev, 0.1))
    return checks


# --------------------------------------------------------------------------- #
# Finite velocity
# --------------------------------------------------------------------------- #

def _finite_beta_closed_forms() -> list[Check]:
    worst = 0.0
    for beta, nu, s in itertools.product((0.3, 0.6, 0.9), (1, 2, 5, 10), TABLE_ORDER):
        bg = BetaGamma.from_beta(beta)
        quad = harmonic_power_by_quadrature(s, bg, nu)
        worst = max(worst, abs(quad - harmonic_power_upper(s, bg, nu)))
    return [Check.at_most("per-harmonic closed forms vs theta quadrature", worst, 1e-8)]


def _harmonic_sums() -> list[Check]:
    worst = 0.0
    for beta in (0.3, 0.9):
        bg = BetaGamma.from_beta(beta)
        spec = harmonic_spectrum(bg)
        for s in (Polarization.TOTAL, Polarization.SIGMA, Polarization.PI):
            worst = max(worst, abs(math.fsum(spec[s]) - total_fraction_closed_form(s, bg)))
        circ = math.fsum(spec[Polarization.RIGHT]) + math.fsum(spec[Polarization.LEFT])
        worst = max(worst, abs(circ - 0.5))
    return [Check.at_most("harmonic sums vs exact totals (beta 0.3, 0.9)", worst, 1e-6)]


def brute_force_window(p: np.ndarray) -> tuple[int, int]:
    """Shortest window with coverage >= 1/2 by trying every length in turn.

    Ties in length go to the smallest excess, then the smallest start.
    Window sums near the threshold are recomputed exactly summed.
    """
    p = np.asarray(p, dtype=float)
    n = len(p)
    prefix = np.concatenate([[0.0], np.cumsum(p)])
    for length in range(1, n + 1):
        approx = prefix[length:] - prefix[:-length]
        starts = np.nonzero(approx >= 0.5 - 1e-9)[0]
        best = None
        for i in starts:
            cov = window_coverage(p, i + 1, i + length)
            if cov >= 0.5 and (best is None or cov - 0.5 < best[0]):
                best = (cov - 0.5, i + 1)
        if best is not None:
            return best[1], best[1] + length - 1
    raise ValueError("no window reaches one half")


def _discrete_vs_brute_force() -> list[Check]:
    mismatches = 0
    detail = []
    for gamma in (2.0, 3.0):
        bg = BetaGamma.from_gamma(gamma)
        spec = harmonic_spectrum(bg)
        for s in TABLE_ORDER:
            terms = spec[s]
            denom = total_fraction_closed_form(s, bg) or math.fsum(terms)
            p = terms / denom
            win = discrete_effective_width(s, bg, contributions=p)
            ref = brute_force_window(p)
            if (win.nu1, win.nu2) != ref:
                mismatches += 1
                detail.append(f"{s.key}@{gamma:g}: {(win.nu1, win.nu2)} != {ref}")
    return [Check.at_most("discrete window vs exhaustive search (gamma 2, 3)", mismatches, 0,
                          "; ".join(detail))]


def _ultrarelativistic_bridge() -> list[Check]:
    bg = BetaGamma.from_gamma(10.0)
    scale = 1.5 * bg.gamma**3
    worst = 0.0
    for s in TABLE_ORDER:
        for y in (0.2, 0.4, 0.6, 0.8, 1.0):
            nu = round(y * scale)
            exact = scale * harmonic_power_upper(s, bg, nu)
            limit = spectral_density(s, nu / scale)
            worst = max(worst, abs(exact / limit - 1.0))
    return [Check.at_most("gamma=10 harmonics vs ultrarelativistic density", worst, 0.03)]


def _discrete_gamma10(b_total: float) -> list[Check]:
    bg = BetaGamma.from_gamma(10.0)
    win = discrete_effective_width(Polarization.TOTAL, bg, nu_max=3500)
    rel = abs(win.lam / bg.gamma**3 - b_total) / b_total
    return [Check.at_most("gamma=10 discrete width vs b_0", rel, 0.10,
                          f"window [{win.nu1}, {win.nu2}]")]


def run_checks(level: str = "fast", command: str = "", tolerance: dict | None = None,
               on_check: Callable[[Check], None] | None = None) -> RunReport:
    """Run the verification suite; ``on_check`` sees each result as it lands."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    start = time.perf_counter()
    report = RunReport(command=command or f"verify --level {level}", level=level,
                       tolerance=tolerance or {})
    rows: list[SummaryRow] = []

    def table() -> Iterable[Check]:
        rows.extend(summary_table())
        return _table_checks(rows)

    stages = [_exact_constants, _closed_form_vs_quadrature, _sum_rules, table,
              _finite_beta_closed_forms, _harmonic_sums, _discrete_vs_brute_force]
    if level == "full":
        stages += [_ultrarelativistic_bridge,
                   lambda: _discrete_gamma10(next(r.b for r in rows if r.s is Polarization.TOTAL))]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for stage in stages:
            for check in stage():
                report.checks.append(check)
                if on_check:
                    on_check(check)
    report.wall_time = time.perf_counter() - start
    return report
