"""Free-boundary matching: assembling two- and three-species traveling waves.

A two-species wave couples a decreasing semi-wave phi (reaction f, left of
the single free boundary) with an increasing one psi (reaction g, right of
it), both moving at a common speed c fixed by the boundary condition

    c = -alpha phi'(0; c) - beta psi'(0; c),

i.e. by the root of the matching function

    D(c) = alpha phi'(0; c) + beta psi'(0; c) + c,

which is strictly increasing on the admissible interval (c*_g, c*_f). The
coefficient maps beta(c) and alpha(c) invert the same relation in closed
form, since D is affine in each coefficient.

A three-species wave adds a compactly supported middle profile of height
sigma between two boundaries moving at the same speed; each boundary
yields its own matching function (D_l with coefficient beta_l on the
middle's left edge slope, D_r with beta_r on its right edge slope), and
for every admissible speed there is a unique positive coefficient pair.
The admissible speed interval is governed by how the single-sided roots
hat_c1 > 0 and hat_c3 < 0 sit relative to the compact speed window
(c*_l, c*_r), which is the case classification.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .compact_wave import (CompactWave, compact_profile, left_slope,
                           right_slope, speed_window)
from .errors import FreewaveError, Infeasible, NoSemiWave
from .ode_core import RootBracket, find_root_monotone
from .phase_plane import (SemiWave, critical_speed_decreasing,
                          critical_speed_increasing, semiwave_profile,
                          semiwave_profile_increasing, semiwave_slope,
                          semiwave_slope_increasing)
from .reaction import ReactionSpec, primitive_at

_SHRINK = 1e-6


def _slope_dec_or_zero(f: ReactionSpec, c: float) -> float:
    """Decreasing-side slope, or its limit 0 when the shot no longer crosses.

    Used only inside root brackets whose endpoints sit within bisection
    fuzz of a critical speed, where the true slope underflows; the limit
    keeps the bracket sign correct.
    """
    try:
        return semiwave_slope(f, c)
    except NoSemiWave:
        return 0.0


def _slope_inc_or_zero(g: ReactionSpec, c: float) -> float:
    return -_slope_dec_or_zero(g, -c)


def _left_slope_or_zero(f2: ReactionSpec, sigma: float, c: float) -> float:
    try:
        return left_slope(f2, sigma, c)
    except NoSemiWave:
        return 0.0


def _right_slope_or_zero(f2: ReactionSpec, sigma: float, c: float) -> float:
    return -_left_slope_or_zero(f2, sigma, -c)


# ---------------------------------------------------------------------------
# two species


def admissible_interval_two(f: ReactionSpec, g: ReactionSpec) -> tuple:
    """(c*_g, c*_f): speeds where both semi-waves exist."""
    return critical_speed_increasing(g), critical_speed_decreasing(f)


@functools.lru_cache(maxsize=1024)
def _hat_c_cached(f: ReactionSpec, alpha: float, tol: float) -> float:
    c_star = critical_speed_decreasing(f)

    def objective(c):
        return alpha * _slope_dec_or_zero(f, c) + c

    lo = 0.0
    f_lo = alpha * semiwave_slope(f, 0.0)
    hi = c_star - _SHRINK
    return find_root_monotone(objective, RootBracket(lo, hi), tol=tol, f_lo=f_lo)


def hat_c_f(f: ReactionSpec, alpha: float, tol: float = 1e-10) -> float:
    """The unique root of alpha * phi'(0; c) + c in (0, c*_f).

    This is the speed the left species sustains against a bare boundary
    (no partner pushing back); it is strictly increasing in alpha and
    approaches c*_f as alpha grows.
    """
    if alpha <= 0.0:
        raise Infeasible("alpha must be positive, got %g" % alpha)
    return _hat_c_cached(f, float(alpha), float(tol))


def D_two(c: float, alpha: float, beta: float, f: ReactionSpec,
          g: ReactionSpec) -> float:
    """Matching residual alpha phi'(0;c) + beta psi'(0;c) + c.

    Strictly increasing in c and in beta on the admissible interval.
    """
    c_g, c_f = admissible_interval_two(f, g)
    if not c_g < c < c_f:
        raise Infeasible("speed %g outside the admissible interval (%g, %g)" % (c, c_g, c_f))
    return alpha * semiwave_slope(f, c) + beta * semiwave_slope_increasing(g, c) + c


def tilde_beta(f: ReactionSpec, g: ReactionSpec, alpha: float) -> float:
    """Coefficient threshold at which the matched speed is 0: alpha sqrt(F(1)/G(1))."""
    return alpha * math.sqrt(primitive_at(f, 1.0) / primitive_at(g, 1.0))


def tilde_alpha(f: ReactionSpec, g: ReactionSpec, beta: float) -> float:
    """Dual threshold for the alpha coefficient: beta sqrt(G(1)/F(1))."""
    return beta * math.sqrt(primitive_at(g, 1.0) / primitive_at(f, 1.0))


def beta_of_c(f: ReactionSpec, g: ReactionSpec, alpha: float, c: float) -> float:
    """The unique beta making c the matched speed: -(alpha phi'(0;c) + c)/psi'(0;c).

    Positive and strictly decreasing on (c*_g, hat_c_f), vanishing at
    hat_c_f and blowing up at c*_g.
    """
    c_g, _ = admissible_interval_two(f, g)
    c_hat = hat_c_f(f, alpha)
    if not c_g < c < c_hat:
        raise Infeasible(
            "speed %g outside the coefficient-map domain (%g, %g)" % (c, c_g, c_hat))
    return -(alpha * semiwave_slope(f, c) + c) / semiwave_slope_increasing(g, c)


def alpha_of_c(f: ReactionSpec, g: ReactionSpec, beta: float, c: float) -> float:
    """The unique alpha making c the matched speed; increasing on (hat_c_g, c*_f)."""
    _, c_f = admissible_interval_two(f, g)
    c_hat_g = -hat_c_f(g, beta)
    if not c_hat_g < c < c_f:
        raise Infeasible(
            "speed %g outside the coefficient-map domain (%g, %g)" % (c, c_hat_g, c_f))
    return -(beta * semiwave_slope_increasing(g, c) + c) / semiwave_slope(f, c)


@dataclass(frozen=True)
class TwoSpeciesWave:
    """Assembled two-species traveling wave with a single free boundary."""

    c: float
    alpha: float
    beta: float
    f: ReactionSpec
    g: ReactionSpec
    left: SemiWave
    right: SemiWave
    tilde_beta: float
    residual: float


def solve_two_species(f: ReactionSpec, g: ReactionSpec, alpha: float, beta: float,
                      tol: float = 1e-12, far_tol: float = 1e-8,
                      dz: float = 0.01) -> TwoSpeciesWave:
    """Find the unique speed balancing the free boundary and assemble the wave.

    The root of D lies in (c*_g, hat_c_f]; D is evaluated with the
    limit-zero slope convention at the bracket ends, where true slopes
    underflow.
    """
    if alpha <= 0.0 or beta <= 0.0:
        raise Infeasible("alpha and beta must be positive")
    c_g, _ = admissible_interval_two(f, g)
    c_hat = hat_c_f(f, alpha)

    def objective(c):
        return (alpha * _slope_dec_or_zero(f, c)
                + beta * _slope_inc_or_zero(g, c) + c)

    lo = c_g + _SHRINK
    hi = c_hat
    f_hi = beta * _slope_inc_or_zero(g, hi) + hi + alpha * _slope_dec_or_zero(f, hi)
    c = find_root_monotone(objective, RootBracket(lo, hi), tol=tol, f_hi=f_hi)

    left = semiwave_profile(f, c, far_tol=far_tol, dz=dz)
    right = semiwave_profile_increasing(g, c, far_tol=far_tol, dz=dz)
    residual = alpha * left.interface_slope + beta * right.interface_slope + c
    return TwoSpeciesWave(c=c, alpha=alpha, beta=beta, f=f, g=g,
                          left=left, right=right,
                          tilde_beta=tilde_beta(f, g, alpha), residual=residual)


# ---------------------------------------------------------------------------
# three species


def hat_c1(f1: ReactionSpec, alpha: float) -> float:
    """Root of alpha phi1'(0;c) + c; positive, below c*(f1)."""
    return hat_c_f(f1, alpha)


def hat_c3(f3: ReactionSpec, gamma: float) -> float:
    """Root of gamma psi3'(0;c) + c; negative, above -c*(f3), by reflection."""
    return -hat_c_f(f3, gamma)


@dataclass(frozen=True)
class CaseTag:
    """How the single-sided roots sit relative to the compact speed window.

    left_case is Case1 when hat_c1 <= c*_r (the left pairing balances
    inside the window), Case2 otherwise; right_case is CaseI when
    c*_l <= hat_c3, CaseII otherwise. c_minus/c_plus is the admissible
    speed interval max(hat_c3, c*_l), min(hat_c1, c*_r).
    """

    left_case: str
    right_case: str
    hat_c1: float
    hat_c3: float
    c_star_l: float
    c_star_r: float
    c_minus: float
    c_plus: float


def case_classify(f1: ReactionSpec, f2: ReactionSpec, f3: ReactionSpec,
                  alpha: float, gamma: float, sigma: float) -> CaseTag:
    """Classify the configuration and compute the admissible speed interval."""
    win = speed_window(f2, sigma)
    c1 = hat_c1(f1, alpha)
    c3 = hat_c3(f3, gamma)
    c_minus = max(c3, win.c_star_l)
    c_plus = min(c1, win.c_star_r)
    if not c_minus < c_plus:
        raise Infeasible(
            "empty admissible speed interval: max(%g, %g) >= min(%g, %g)"
            % (c3, win.c_star_l, c1, win.c_star_r))
    return CaseTag(
        left_case="Case1" if c1 <= win.c_star_r else "Case2",
        right_case="CaseI" if win.c_star_l <= c3 else "CaseII",
        hat_c1=c1, hat_c3=c3,
        c_star_l=win.c_star_l, c_star_r=win.c_star_r,
        c_minus=c_minus, c_plus=c_plus)


def tilde_beta_l(f1: ReactionSpec, f2: ReactionSpec, alpha: float,
                 sigma: float) -> float:
    """Left coefficient threshold at zero speed: alpha sqrt(F1(1)/F2(sigma))."""
    return alpha * math.sqrt(primitive_at(f1, 1.0) / primitive_at(f2, sigma))


def tilde_beta_r(f2: ReactionSpec, f3: ReactionSpec, gamma: float,
                 sigma: float) -> float:
    """Right coefficient threshold at zero speed: gamma sqrt(F3(1)/F2(sigma))."""
    return gamma * math.sqrt(primitive_at(f3, 1.0) / primitive_at(f2, sigma))


def beta_l_of_c(f1: ReactionSpec, f2: ReactionSpec, alpha: float, sigma: float,
                c: float) -> float:
    """Left coefficient map: -(alpha phi1'(0;c) + c) / omega_l(c).

    Positive and strictly decreasing between the window's left edge and
    hat_c1.
    """
    win = speed_window(f2, sigma)
    c1 = hat_c1(f1, alpha)
    if not win.c_star_l < c < c1:
        raise Infeasible(
            "speed %g outside the left coefficient domain (%g, %g)"
            % (c, win.c_star_l, c1))
    return -(alpha * semiwave_slope(f1, c) + c) / left_slope(f2, sigma, c)


def beta_r_of_c(f2: ReactionSpec, f3: ReactionSpec, gamma: float, sigma: float,
                c: float) -> float:
    """Right coefficient map: -(gamma psi3'(0;c) + c) / omega_r(c).

    Positive and strictly increasing between hat_c3 and the window's right
    edge.
    """
    win = speed_window(f2, sigma)
    c3 = hat_c3(f3, gamma)
    if not c3 < c < win.c_star_r:
        raise Infeasible(
            "speed %g outside the right coefficient domain (%g, %g)"
            % (c, c3, win.c_star_r))
    return -(gamma * semiwave_slope_increasing(f3, c) + c) / right_slope(f2, sigma, c)


def beta0_l(f1: ReactionSpec, f2: ReactionSpec, alpha: float, sigma: float) -> float:
    """Threshold coefficient beta_l at the window's right edge (Case2 only).

    Below it the left matching function has no root inside the window.
    """
    win = speed_window(f2, sigma)
    c1 = hat_c1(f1, alpha)
    if c1 <= win.c_star_r:
        raise Infeasible(
            "configuration is in Case1 (hat_c1 = %g <= c*_r = %g); "
            "the left threshold is undefined" % (c1, win.c_star_r))
    return -(alpha * semiwave_slope(f1, win.c_star_r) + win.c_star_r) \
        / left_slope(f2, sigma, win.c_star_r)


def beta0_r(f2: ReactionSpec, f3: ReactionSpec, gamma: float, sigma: float) -> float:
    """Threshold coefficient beta_r at the window's left edge (CaseII only)."""
    win = speed_window(f2, sigma)
    c3 = hat_c3(f3, gamma)
    if win.c_star_l <= c3:
        raise Infeasible(
            "configuration is in CaseI (c*_l = %g <= hat_c3 = %g); "
            "the right threshold is undefined" % (win.c_star_l, c3))
    return -(gamma * semiwave_slope_increasing(f3, win.c_star_l) + win.c_star_l) \
        / right_slope(f2, sigma, win.c_star_l)


def C_l(f1: ReactionSpec, f2: ReactionSpec, alpha: float, sigma: float,
        beta_l: float, tol: float = 1e-10) -> float:
    """Speed solving the left matching condition for a given coefficient.

    Inverse of beta_l_of_c: the unique root of
    alpha phi1'(0;c) + beta_l omega_l(c) + c, strictly increasing in c.
    In Case2 the root exists inside the window only for beta_l >= beta0_l.
    """
    if beta_l <= 0.0:
        raise Infeasible("beta_l must be positive, got %g" % beta_l)
    win = speed_window(f2, sigma)
    c1 = hat_c1(f1, alpha)

    def objective(c):
        return (alpha * _slope_dec_or_zero(f1, c)
                + beta_l * _left_slope_or_zero(f2, sigma, c) + c)

    lo = win.c_star_l + _SHRINK
    if c1 <= win.c_star_r:
        hi = c1
        f_hi = beta_l * _left_slope_or_zero(f2, sigma, hi) \
            + alpha * _slope_dec_or_zero(f1, hi) + hi
    else:
        hi = win.c_star_r
        f_hi = objective(hi)
        if f_hi < 0.0:
            raise Infeasible(
                "beta_l = %g below the Case2 threshold; no admissible speed "
                "in the window (%g, %g)" % (beta_l, win.c_star_l, win.c_star_r))
    return find_root_monotone(objective, RootBracket(lo, hi), tol=tol, f_hi=f_hi)


def C_r(f2: ReactionSpec, f3: ReactionSpec, gamma: float, sigma: float,
        beta_r: float, tol: float = 1e-10) -> float:
    """Speed solving the right matching condition for a given coefficient.

    Inverse of beta_r_of_c; in CaseII the root exists inside the window
    only for beta_r >= beta0_r.
    """
    if beta_r <= 0.0:
        raise Infeasible("beta_r must be positive, got %g" % beta_r)
    win = speed_window(f2, sigma)
    c3 = hat_c3(f3, gamma)

    def objective(c):
        return (gamma * _slope_inc_or_zero(f3, c)
                + beta_r * _right_slope_or_zero(f2, sigma, c) + c)

    hi = win.c_star_r - _SHRINK
    if c3 >= win.c_star_l:
        lo = c3
        f_lo = beta_r * _right_slope_or_zero(f2, sigma, lo) \
            + gamma * _slope_inc_or_zero(f3, lo) + lo
    else:
        lo = win.c_star_l
        f_lo = objective(lo)
        if f_lo > 0.0:
            raise Infeasible(
                "beta_r = %g below the CaseII threshold; no admissible speed "
                "in the window (%g, %g)" % (beta_r, win.c_star_l, win.c_star_r))
    return find_root_monotone(objective, RootBracket(lo, hi), tol=tol, f_lo=f_lo)


@dataclass(frozen=True)
class ThreeSpeciesWave:
    """Assembled three-species wave: two free boundaries, one speed."""

    c: float
    alpha: float
    gamma: float
    beta_l: float
    beta_r: float
    sigma: float
    f1: ReactionSpec
    f2: ReactionSpec
    f3: ReactionSpec
    left: SemiWave
    middle: CompactWave
    right: SemiWave
    case_tag: CaseTag
    tilde_beta_l: float
    tilde_beta_r: float
    residual_left: float
    residual_right: float


def solve_three_species(f1: ReactionSpec, f2: ReactionSpec, f3: ReactionSpec,
                        alpha: float, gamma: float, sigma: float, c: float,
                        far_tol: float = 1e-8, dz: float = 0.01) -> ThreeSpeciesWave:
    """Assemble the three-species wave at an admissible speed c.

    For each c in the case interval there is a unique positive coefficient
    pair (beta_l, beta_r) balancing the two boundaries; both are obtained
    by slope division since the matching functions are affine in the
    coefficients.
    """
    if alpha <= 0.0 or gamma <= 0.0:
        raise Infeasible("alpha and gamma must be positive")
    tag = case_classify(f1, f2, f3, alpha, gamma, sigma)
    if not tag.c_minus < c < tag.c_plus:
        raise Infeasible(
            "speed %g outside the admissible interval (%.8g, %.8g)"
            % (c, tag.c_minus, tag.c_plus))
    b_l = beta_l_of_c(f1, f2, alpha, sigma, c)
    b_r = beta_r_of_c(f2, f3, gamma, sigma, c)

    left = semiwave_profile(f1, c, far_tol=far_tol, dz=dz)
    middle = compact_profile(f2, sigma, c, dz=dz)
    right = semiwave_profile_increasing(f3, c, far_tol=far_tol, dz=dz)
    res_l = alpha * left.interface_slope + b_l * middle.slope_left + c
    res_r = gamma * right.interface_slope + b_r * middle.slope_right + c
    return ThreeSpeciesWave(
        c=c, alpha=alpha, gamma=gamma, beta_l=b_l, beta_r=b_r, sigma=sigma,
        f1=f1, f2=f2, f3=f3, left=left, middle=middle, right=right,
        case_tag=tag,
        tilde_beta_l=tilde_beta_l(f1, f2, alpha, sigma),
        tilde_beta_r=tilde_beta_r(f2, f3, gamma, sigma),
        residual_left=res_l, residual_right=res_r)


# ---------------------------------------------------------------------------
# dispersion curves


@dataclass(frozen=True)
class DispersionCurve:
    """Tabulated coefficient-vs-speed curve with verified monotonicity."""

    kind: str
    endpoints: tuple
    c: np.ndarray
    columns: dict

    @property
    def samples(self):
        """Rows (c, coefficient values...) as a 2D array."""
        cols = [self.c] + [self.columns[k] for k in sorted(self.columns)]
        return np.column_stack(cols)


def dispersion_curve(kind: str, params: dict, grid) -> DispersionCurve:
    """Sample a coefficient map over a c-grid and verify its monotonicity.

    kind 'two_beta': params f, g, alpha; column beta, strictly decreasing.
    kind 'two_alpha': params f, g, beta; column alpha, strictly increasing.
    kind 'three': params f1, f2, f3, alpha, gamma, sigma; columns beta_l
    (decreasing) and beta_r (increasing). Grid points outside the
    admissible interval raise a domain error naming the point.
    """
    grid = np.asarray(list(grid), dtype=float)
    if grid.size < 2 or not np.all(np.diff(grid) > 0.0):
        raise Infeasible("grid must be strictly increasing with at least 2 points")

    if kind == "two_beta":
        f, g, alpha = params["f"], params["g"], params["alpha"]
        endpoints = (critical_speed_increasing(g), hat_c_f(f, alpha))
        _check_grid(grid, endpoints)
        vals = np.array([beta_of_c(f, g, alpha, c) for c in grid])
        _check_monotone(vals, decreasing=True, label="beta")
        return DispersionCurve(kind, endpoints, grid, {"beta": vals})

    if kind == "two_alpha":
        f, g, beta = params["f"], params["g"], params["beta"]
        endpoints = (-hat_c_f(g, beta), critical_speed_decreasing(f))
        _check_grid(grid, endpoints)
        vals = np.array([alpha_of_c(f, g, beta, c) for c in grid])
        _check_monotone(vals, decreasing=False, label="alpha")
        return DispersionCurve(kind, endpoints, grid, {"alpha": vals})

    if kind == "three":
        f1, f2, f3 = params["f1"], params["f2"], params["f3"]
        alpha, gamma, sigma = params["alpha"], params["gamma"], params["sigma"]
        tag = case_classify(f1, f2, f3, alpha, gamma, sigma)
        endpoints = (tag.c_minus, tag.c_plus)
        _check_grid(grid, endpoints)
        bl = np.array([beta_l_of_c(f1, f2, alpha, sigma, c) for c in grid])
        br = np.array([beta_r_of_c(f2, f3, gamma, sigma, c) for c in grid])
        _check_monotone(bl, decreasing=True, label="beta_l")
        _check_monotone(br, decreasing=False, label="beta_r")
        return DispersionCurve(kind, endpoints, grid, {"beta_l": bl, "beta_r": br})

    raise Infeasible("unknown dispersion kind %r" % (kind,))


def _check_grid(grid, endpoints):
    lo, hi = endpoints
    for c in grid:
        if not lo < c < hi:
            raise Infeasible(
                "grid point %g outside the admissible interval (%g, %g)" % (c, lo, hi))


def _check_monotone(vals, decreasing: bool, label: str):
    d = np.diff(vals)
    ok = np.all(d < 0.0) if decreasing else np.all(d > 0.0)
    if not ok:
        raise FreewaveError(
            "%s column is not strictly %s; numerical contract violated"
            % (label, "decreasing" if decreasing else "increasing"))
