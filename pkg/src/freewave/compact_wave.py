"""Compactly supported middle profiles built by apex shooting.

The middle species of a three-species wave occupies a finite interval in
the wave frame: phi2 > 0 on (0, W), phi2(0) = phi2(W) = 0, with a single
apex where phi2' = 0. Given the apex height sigma, the two halves are
trajectories of the profile equation phi'' + c phi' + f2(phi) = 0 launched
from the apex state (sigma, 0):

* the left half is integrated backward in z (s = -z frame), ending where
  phi falls through 0 with edge slope omega_l > 0;
* the right half is integrated forward in z, ending with omega_r < 0.

The substitution (z, p) -> (-z, -p) maps forward dynamics at speed c onto
backward dynamics at -c, so every forward-side quantity is computed by
that reflection; omega_r(c) = -omega_l(-c) and c*_r = -c*_l exactly.

A left connection exists for c above a critical left-edge speed c*_l < 0:
below it the backward flow is no longer able to reach phi = 0 (it spirals
into an interior equilibrium for bistable terms, or relaxes into the
origin node for monostable ones). Existence at c = 0 requires positive
apex energy F2(sigma) > 0, with edge slope sqrt(2 F2(sigma)) there by the
first integral.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import Infeasible, NoSemiWave
from .ode_core import EventSpec, IntegratorConfig, bisect_predicate, integrate
from .phase_plane import (CONVERGES, CROSSES, DENSE_MAX_STEP, PURE_REL_ABS_TOL,
                          SLOPE_FLOOR, SLOPE_REL_TOL, STALLS, STOP_SPEED_EPS,
                          TAG_REL_TOL, Z_CAP_TAG, TrajectoryOutcome,
                          critical_speed_increasing)
from .reaction import ReactionSpec, evaluate, primitive_at

_CAPTURE_PHI_FLOOR = 1e-2


def _check_apex(f2: ReactionSpec, sigma: float) -> None:
    if not 0.0 < sigma < 1.0:
        raise Infeasible("apex height must lie in (0, 1), got %g" % sigma)
    if evaluate(f2, sigma) <= 0.0:
        raise Infeasible(
            "apex height %g has f2(sigma) <= 0; the profile cannot bend down there" % sigma)
    if primitive_at(f2, sigma) <= 0.0:
        raise Infeasible(
            "apex energy F2(%g) = %g is not positive; no edge connection exists"
            % (sigma, primitive_at(f2, sigma)))


def _apex_events():
    def ev_cross(s, y):
        return y[0]

    def ev_capture(s, y):
        return max(abs(y[1]) - STOP_SPEED_EPS, _CAPTURE_PHI_FLOOR - y[0])

    return (
        EventSpec(ev_cross, terminal=True, direction=-1.0, name="cross"),
        EventSpec(ev_capture, terminal=True, direction=-1.0, name="capture"),
    )


def _apex_shoot_backward(f2: ReactionSpec, sigma: float, c: float,
                         z_max: float, rel_tol: float, dense: bool = False):
    """Backward (left-half) shot from (sigma, 0) in the frame s = -z.

    There u' = -p, p' = c p + f2(u); a crossing of u = 0 means the left
    edge is reached, with original-frame slope p > 0.
    """
    _check_apex(f2, sigma)

    def rhs(s, y):
        return (-y[1], c * y[1] + evaluate(f2, y[0]))

    cfg = IntegratorConfig(rel_tol=rel_tol, abs_tol=PURE_REL_ABS_TOL,
                           max_step=DENSE_MAX_STEP if dense else float("inf"))
    with np.errstate(invalid="ignore", divide="ignore"):
        traj = integrate(rhs, (0.0, z_max), (sigma, 0.0), cfg,
                         events=_apex_events(), dense_output=dense)
    hit = traj.first_event(0)
    if hit is not None:
        s_c, y_c = hit
        if y_c[1] >= SLOPE_FLOOR:
            return TrajectoryOutcome(CROSSES, c, s_c, 0.0, y_c[1]), traj
        return TrajectoryOutcome(CONVERGES, c, s_c, y_c[0], y_c[1]), traj
    hit = traj.first_event(1)
    if hit is not None:
        s_s, y_s = hit
        return TrajectoryOutcome(STALLS, c, s_s, y_s[0], y_s[1]), traj
    return TrajectoryOutcome(CONVERGES, c, traj.t[-1], traj.y[0, -1], traj.y[1, -1]), traj


def apex_shoot(f2: ReactionSpec, sigma: float, c: float,
               direction: str = "backward", z_max: float = Z_CAP_TAG,
               rel_tol: float = TAG_REL_TOL) -> TrajectoryOutcome:
    """Shot from the apex state (sigma, 0) in the given z-direction.

    Backward shots trace the left half (crossing slope > 0); forward shots
    trace the right half (crossing slope < 0) and are computed by the exact
    (z, p) -> (-z, -p) reflection of a backward shot at -c.
    """
    if direction == "backward":
        res, _ = _apex_shoot_backward(f2, sigma, c, z_max, rel_tol)
        return res
    if direction == "forward":
        res, _ = _apex_shoot_backward(f2, sigma, -c, z_max, rel_tol)
        return TrajectoryOutcome(res.tag, c, res.z_stop, res.phi_stop, -res.dphi_stop)
    raise ValueError("direction must be 'backward' or 'forward', got %r" % (direction,))


@functools.lru_cache(maxsize=8192)
def _left_slope_cached(f2: ReactionSpec, sigma: float, c: float, rel_tol: float) -> float:
    res, _ = _apex_shoot_backward(f2, sigma, c, Z_CAP_TAG, rel_tol)
    if res.tag != CROSSES:
        raise NoSemiWave(
            "no left edge connection at c = %g, sigma = %g (shot %s)" % (c, sigma, res.tag))
    return res.dphi_stop


def left_slope(f2: ReactionSpec, sigma: float, c: float,
               rel_tol: float = SLOPE_REL_TOL) -> float:
    """Left edge slope omega_l(c) > 0; raises NoSemiWave if the edge is not reached."""
    return _left_slope_cached(f2, float(sigma), float(c), float(rel_tol))


def right_slope(f2: ReactionSpec, sigma: float, c: float,
                rel_tol: float = SLOPE_REL_TOL) -> float:
    """Right edge slope omega_r(c) < 0, by reflection."""
    return -left_slope(f2, sigma, -c, rel_tol=rel_tol)


@functools.lru_cache(maxsize=256)
def _left_edge_cached(f2: ReactionSpec, sigma: float, tol: float) -> float:
    def crosses(c):
        res, _ = _apex_shoot_backward(f2, sigma, c, Z_CAP_TAG, TAG_REL_TOL)
        return res.tag == CROSSES

    hi = 0.0
    if not crosses(hi):
        raise Infeasible("no left edge connection even at c = 0 for sigma = %g" % sigma)
    lo = critical_speed_increasing(f2) - 1.0
    for _ in range(5):
        if not crosses(lo):
            break
        lo = hi + 2.0 * (lo - hi)
    else:
        raise Infeasible("left edge connection persists down to c = %g" % lo)
    return bisect_predicate(crosses, lo, hi, tol=tol)


@dataclass(frozen=True)
class SpeedWindow:
    """Admissible speed interval for a compact profile of a given height.

    (c_star_l, c_star_r) is the open window where both edges connect;
    [L_sigma, R_sigma] is the energy-scaled inner bound it strictly
    contains: L_sigma = c*_l(1) * F2(sigma) / F2(1), R_sigma = -L_sigma.
    """

    c_star_l: float
    c_star_r: float
    L_sigma: float
    R_sigma: float


def speed_window(f2: ReactionSpec, sigma: float, tol: float = 1e-8) -> SpeedWindow:
    """Bisect the edge-connection window of apex height sigma.

    c*_r = -c*_l exactly by the reflection symmetry of the two halves, so a
    single bisection determines both. Cached on (f2, sigma, tol).
    """
    _check_apex(f2, sigma)
    c_l = _left_edge_cached(f2, float(sigma), float(tol))
    full = critical_speed_increasing(f2, tol=tol)
    ratio = primitive_at(f2, sigma) / primitive_at(f2, 1.0)
    return SpeedWindow(c_star_l=c_l, c_star_r=-c_l,
                       L_sigma=full * ratio, R_sigma=-full * ratio)


@dataclass(frozen=True)
class CompactWave:
    """Sampled compact middle profile on [0, width], zero at both ends.

    apex is the z position of the maximum (value sigma); slope_left > 0 and
    slope_right < 0 are the edge derivatives entering the free-boundary
    matching conditions.
    """

    c: float
    sigma: float
    z: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    width: float
    apex: float
    slope_left: float
    slope_right: float


def compact_profile(f2: ReactionSpec, sigma: float, c: float, dz: float = 0.01,
                    rel_tol: float = SLOPE_REL_TOL) -> CompactWave:
    """Assemble the compact profile at speed c from the two apex halves.

    The left half comes from the backward shot, the right half from the
    reflected backward shot at -c; they join smoothly at the apex. Raises
    an out-of-window error carrying the window when either edge fails.
    """
    res_l, traj_l = _apex_shoot_backward(f2, sigma, c, Z_CAP_TAG, rel_tol, dense=True)
    res_r, traj_r = _apex_shoot_backward(f2, sigma, -c, Z_CAP_TAG, rel_tol, dense=True)
    if res_l.tag != CROSSES or res_r.tag != CROSSES:
        win = speed_window(f2, sigma)
        raise Infeasible(
            "speed %g outside the compact-wave window (%.8g, %.8g) for sigma = %g"
            % (c, win.c_star_l, win.c_star_r, sigma))

    s_l, s_r = res_l.z_stop, res_r.z_stop
    width = s_l + s_r
    # the apex at z = s_l is a shared grid point of the two halves
    nl = max(int(math.ceil(s_l / dz)), 4)
    nr = max(int(math.ceil(s_r / dz)), 4)
    z = np.concatenate([np.linspace(0.0, s_l, nl + 1),
                        np.linspace(s_l, width, nr + 1)[1:]])

    phi = np.empty_like(z)
    dphi = np.empty_like(z)
    left = z <= s_l
    # left half: z in [0, s_l] maps to backward time s = s_l - z
    vals = traj_l.dense(s_l - z[left])
    phi[left] = vals[0]
    dphi[left] = vals[1]
    # right half: z in (s_l, width] maps to the reflected shot at s = z - s_l
    vals = traj_r.dense(z[~left] - s_l)
    phi[~left] = vals[0]
    dphi[~left] = -vals[1]
    phi[0] = 0.0
    phi[-1] = 0.0
    dphi[0] = res_l.dphi_stop
    dphi[-1] = -res_r.dphi_stop
    phi[nl] = sigma
    dphi[nl] = 0.0
    return CompactWave(c=c, sigma=sigma, z=z, phi=phi, dphi=dphi, width=width,
                       apex=s_l, slope_left=res_l.dphi_stop,
                       slope_right=-res_r.dphi_stop)


def width_energy_quadrature(f2: ReactionSpec, sigma: float) -> float:
    """Width of the c = 0 profile by the first-integral quadrature.

    At c = 0 the energy p^2/2 + F2(u) is conserved, so the half-width is
    int_0^sigma du / sqrt(2 (F2(sigma) - F2(u))); the substitution
    u = sigma - t^2 removes the apex singularity.
    """
    _check_apex(f2, sigma)
    F_sig = primitive_at(f2, sigma)

    def integrand(t):
        gap = F_sig - primitive_at(f2, sigma - t * t)
        if gap <= 0.0:
            # only reachable at t = 0 through rounding; use the limit value
            return 2.0 / math.sqrt(2.0 * evaluate(f2, sigma))
        return 2.0 * t / math.sqrt(2.0 * gap)

    half, _ = quad(integrand, 0.0, math.sqrt(sigma), limit=200)
    return 2.0 * half


def edge_slope_energy(f2: ReactionSpec, sigma: float) -> float:
    """Left edge slope at c = 0 from the first integral: sqrt(2 F2(sigma))."""
    _check_apex(f2, sigma)
    return math.sqrt(2.0 * primitive_at(f2, sigma))
