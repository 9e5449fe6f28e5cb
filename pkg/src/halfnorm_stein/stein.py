"""Solutions of the half-normal Stein equation f'(x) - x f(x) = h(x) - E[h(Y)]
and the auxiliary functions needed to certify their norm bounds.

Test functions come in two flavours: half-line indicators 1_{[0,z]} (the
Kolmogorov class restricted to the nonnegative axis) and Lipschitz functions
with a known constant (the Wasserstein class). Indicators admit closed forms;
Lipschitz solutions are evaluated by adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .normal import (HALF_NORMAL, HALF_NORMAL_MEAN, INV_SQRT_2PI, cap_phi,
                     inv_cap_phi, normal_sf, phi)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class HalfLineIndicator:
    """h(x) = 1 for 0 <= x <= z, 0 for x > z."""

    z: float

    def __call__(self, x):
        return 1.0 if x <= self.z else 0.0


@dataclass(frozen=True)
class LipschitzFunction:
    fn: Callable[[float], float]
    lipschitz_constant: float

    def __call__(self, x):
        return self.fn(x)


TestFunction = HalfLineIndicator | LipschitzFunction

IDENTITY = LipschitzFunction(lambda x: x, 1.0)
CAPPED_AT_ONE = LipschitzFunction(lambda x: min(x, 1.0), 1.0)


def mu_h(h: TestFunction) -> float:
    """E[h(Y)] under the half-normal law."""
    if isinstance(h, HalfLineIndicator):
        return HALF_NORMAL.cdf(h.z)
    val, _ = integrate.quad(lambda t: h(t) * HALF_NORMAL.pdf(t), 0.0, np.inf,
                            epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def fz(z: float, x: float) -> float:
    """Closed-form Stein solution for the indicator 1_{[0,z]}.

    f_z(x) = (F(min(x,z)) - F(x)F(z)) / p(x), extended by 0 at x <= 0.
    """
    if x <= 0.0 or z < 0.0:
        return 0.0
    dens = 2.0 * phi(x)
    if x <= z:
        # (1 - F(z)) * F(x) / p(x)
        return 2.0 * normal_sf(z) * (2.0 * cap_phi(x) - 1.0) / dens
    return (2.0 * cap_phi(z) - 1.0) * 2.0 * normal_sf(x) / dens


def fz_prime(z: float, x: float, side: str | None = None) -> float:
    """Derivative of f_z via f_z'(x) = x f_z(x) + 1_{[0,z]}(x) - F(z).

    f_z' jumps at x = z; there the caller must pick side 'left' or 'right'.
    """
    if x == z and side is None:
        raise ValueError("f_z' jumps at x = z; pass side='left' or side='right'")
    cap_f_z = HALF_NORMAL.cdf(z)
    if x == z:
        indicator = 1.0 if side == "left" else 0.0
    else:
        indicator = 1.0 if x <= z else 0.0
    return x * fz(z, x) + indicator - cap_f_z


def fz_prime_hg(z: float, x: float, side: str | None = None) -> float:
    """Same derivative through the monotonicity factorisation:
    (1-F(z)) H(x)/p(x) on x < z and -F(z) G(x)/p(x) on x > z.
    """
    if x == z and side is None:
        raise ValueError("f_z' jumps at x = z; pass side='left' or side='right'")
    left = x < z or (x == z and side == "left")
    dens = 2.0 * phi(x)
    if left:
        return 2.0 * normal_sf(z) * aux_H(x) / dens
    return -(2.0 * cap_phi(z) - 1.0) * aux_G(x) / dens


def solve_fh(h: TestFunction, x: float) -> float:
    """The standard Stein-equation solution f_h at x >= 0.

    Indicators use the closed form. For Lipschitz h the integral
    representation is switched at the half-normal median: below it the
    integral from 0 is short and well conditioned, above it the
    complementary integral avoids cancellation against exp(x^2/2).
    """
    if x < 0.0:
        return 0.0
    if isinstance(h, HalfLineIndicator):
        return fz(h.z, x)
    if x == 0.0:
        return 0.0
    mu = mu_h(h)
    if x <= HALF_NORMAL.median:
        val, _ = integrate.quad(
            lambda t: (h(t) - mu) * math.exp(0.5 * (x * x - t * t)),
            0.0, x, epsabs=1e-14, epsrel=1e-13, limit=200)
        return val
    val, _ = integrate.quad(
        lambda t: (h(t) - mu) * math.exp(0.5 * (x * x - t * t)),
        x, x + 12.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    return -val


def solve_fh_prime(h: TestFunction, x: float, step: float = 1e-5) -> float:
    """Central-difference derivative of f_h (closed form for indicators)."""
    if isinstance(h, HalfLineIndicator):
        return fz_prime(h.z, x, side="left" if x == h.z else None)
    lo = max(x - step, 0.0)
    return (solve_fh(h, x + step) - solve_fh(h, lo)) / (x + step - lo)


def stein_residual_continuous(h: TestFunction, x: float) -> float:
    """f'(x) - x f(x) - (h(x) - E[h(Y)]); zero for the exact solution."""
    return (solve_fh_prime(h, x) - x * solve_fh(h, x)
            - (h(x) - mu_h(h)))


# ---------------------------------------------------------------------------
# Auxiliary functions from the bound proofs.
# ---------------------------------------------------------------------------

def aux_M(x):
    """F(x)/p(x); M(0) = 0 by continuous extension."""
    return (2.0 * cap_phi(x) - 1.0) / (2.0 * phi(x))


def aux_N(x):
    """(1-F(x))/p(x); finite at 0 with N(0) = sqrt(pi/2)."""
    return normal_sf(x) / phi(x)


def aux_H(x):
    """p - F*psi = 2 phi(x) + x (2 cap_phi(x) - 1)."""
    return 2.0 * phi(x) + x * (2.0 * cap_phi(x) - 1.0)


def aux_G(x):
    """H + psi = 2 phi(x) - 2 x (1 - cap_phi(x)); decays to 0."""
    return 2.0 * phi(x) - 2.0 * x * normal_sf(x)


def aux_U(x):
    return 2.0 * x * phi(x) - 2.0 * normal_sf(x) * (1.0 + np.square(x))


def aux_V(x):
    """Second-derivative weight; named aux_V to avoid clashing with the
    auxiliary random variable V = 2 N_n / sqrt(n)."""
    return -(2.0 * cap_phi(x) - 1.0) * (1.0 + np.square(x)) - 2.0 * x * phi(x)


def aux_S(x):
    """Sharp Lipschitz bound on |f_h'|; max value sqrt(2/pi) at x = 0."""
    dens = phi(x)
    return (4.0 * (dens - x * normal_sf(x))
            * (dens + x * (cap_phi(x) - 0.5) - 0.5 * INV_SQRT_2PI) / dens)


def aux_D1(x):
    """phi/2 - (1-cap_phi)(2 cap_phi - 1); nonnegative on [0, inf)."""
    return 0.5 * phi(x) - normal_sf(x) * (2.0 * cap_phi(x) - 1.0)


def aux_D2(x):
    """-x/2 + 4 cap_phi(x) - 3; nonpositive with max about -0.01702."""
    return -0.5 * x + 4.0 * cap_phi(x) - 3.0


_AUX = {"M": aux_M, "N": aux_N, "H": aux_H, "G": aux_G,
        "U": aux_U, "V": aux_V, "S": aux_S, "D1": aux_D1, "D2": aux_D2}


def aux_eval(name: str, x):
    if name not in _AUX:
        raise ValueError(f"unknown auxiliary function {name!r}")
    return _AUX[name](x)


# ---------------------------------------------------------------------------
# Supremum certification.
# ---------------------------------------------------------------------------

def sup_search(f: Callable[[float], float], lo: float, hi: float,
               resolution: float = 1e-6, grid: int = 400) -> tuple[float, float]:
    """Locate the supremum of f on [lo, hi].

    Coarse grid scan followed by golden-section refinement on the bracket
    around the best grid point. Exact within `resolution` for unimodal f;
    for general f the result is the refined grid maximum.
    """
    if hi <= lo:
        raise ValueError("empty search interval")
    xs = np.linspace(lo, hi, grid)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmax(vals))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid - 1)]

    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > resolution:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    best = max((vals[i], xs[i]), (fc, c), (fd, d))
    return best[1], best[0]


# ---------------------------------------------------------------------------
# Lemma certification reports.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    name: str
    observed: float
    limit: float

    @property
    def margin(self) -> float:
        return self.limit - self.observed

    @property
    def passed(self) -> bool:
        return self.margin >= 0.0


@dataclass(frozen=True)
class BoundReport:
    kind: str
    checks: tuple[BoundCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _indicator_bound_report(z_hi: float, grid: int) -> BoundReport:
    zs = np.linspace(0.0, z_hi, grid)
    xs = np.linspace(0.0, z_hi, grid)

    sup_abs = 0.0
    sup_prime = 0.0
    for z in zs:
        for x in xs:
            sup_abs = max(sup_abs, abs(fz(z, x)))
            if x == z:
                # left limit only where the region x < z is nonempty
                if z > 0.0:
                    sup_prime = max(sup_prime,
                                    abs(fz_prime(z, x, side="left")))
                sup_prime = max(sup_prime, abs(fz_prime(z, x, side="right")))
            else:
                sup_prime = max(sup_prime, abs(fz_prime(z, x)))
    # The sup of |f_z| over x sits at x = z; refine along that diagonal.
    _, diag_sup = sup_search(lambda z: fz(z, z), 0.0, z_hi, resolution=1e-6)
    sup_abs = max(sup_abs, diag_sup)
    # For fixed z the sup of |f_z'| is the left limit at x = z.
    for z in zs[1:]:
        sup_prime = max(sup_prime, abs(fz_prime(z, z, side="left")),
                        abs(fz_prime(z, z, side="right")))
    return BoundReport(kind="indicator", checks=(
        BoundCheck("sup |f_z|", sup_abs, 0.5),
        BoundCheck("sup |f_z'|", sup_prime, 1.0),
    ))


def _lipschitz_bound_report(h: LipschitzFunction, x_hi: float,
                            grid: int) -> BoundReport:
    lip = h.lipschitz_constant
    xs = np.linspace(0.0, x_hi, grid)
    f_vals = np.array([solve_fh(h, x) for x in xs])

    sup_f = float(np.max(np.abs(f_vals)))
    sup_fp = float(max(abs(solve_fh_prime(h, x)) for x in xs))

    # Second derivative by a wide central difference: f is only accurate to
    # quadrature tolerance, so a 1e-3 step keeps the roundoff term below 1e-4.
    step = 1e-3
    sup_fpp = 0.0
    for x in xs:
        if x < step:
            continue
        f2 = (solve_fh(h, x + step) - 2.0 * solve_fh(h, x)
              + solve_fh(h, x - step)) / (step * step)
        sup_fpp = max(sup_fpp, abs(f2))
    return BoundReport(kind="lipschitz", checks=(
        BoundCheck("sup |f_h|", sup_f, lip),
        BoundCheck("sup |f_h'|", sup_fp, HALF_NORMAL_MEAN * lip),
        BoundCheck("sup |f_h''|", sup_fpp, 2.0 * lip + 1e-4),
    ))


def verify_lemma_bounds(kind: str, *, z_hi: float = 8.0, grid: int = 400,
                        h: LipschitzFunction | None = None) -> BoundReport:
    """Certify the proved norm bounds on a grid with local refinement.

    kind='indicator': sup |f_z| <= 1/2 and sup |f_z'| <= 1 over z, x in
    [0, z_hi]^2, with golden-section refinement of the diagonal supremum.
    kind='lipschitz': sup |f_h| <= L, sup |f_h'| <= sqrt(2/pi) L and
    sup |f_h''| <= 2L for the given h (default: identity).
    """
    if kind == "indicator":
        return _indicator_bound_report(z_hi, grid)
    if kind == "lipschitz":
        return _lipschitz_bound_report(h if h is not None else IDENTITY,
                                       z_hi, grid)
    raise ValueError(f"unknown bound suite {kind!r}")


def verify_monotone_xfz(z: float, grid) -> bool:
    """True iff x -> x f_z(x) is nondecreasing along the given grid."""
    vals = np.array([x * fz(z, x) for x in grid])
    return bool(np.all(np.diff(vals) >= -1e-13))
