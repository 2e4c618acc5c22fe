"""Thin integration and root-finding layer used by every solver in the library.

Wraps scipy's RK45 initial-value solver (with event detection and dense
output) and Brent root bracketing behind small dataclasses, so the rest of
the code never touches scipy directly and every numerical knob lives in one
place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import BracketError, StepError


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and guards for one initial-value integration."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = float("inf")
    max_steps: int = 1_000_000


@dataclass(frozen=True)
class EventSpec:
    """A scalar event g(t, y); integration can stop where g crosses zero.

    direction > 0 fires only on rising crossings, < 0 only on falling,
    0 on both.
    """

    fn: Callable
    terminal: bool = True
    direction: float = 0.0
    name: str = ""


@dataclass
class Trajectory:
    """Result of one integration.

    y has one row per state component and one column per time, so y[k, -1]
    is component k at the stopping point.
    status: 0 = reached the end of the span, 1 = a terminal event fired.
    event_times[i] / event_states[i] collect every firing of events[i].
    dense(t) evaluates the continuous interpolant when dense output was
    requested.
    """

    t: np.ndarray
    y: np.ndarray
    status: int
    event_times: list = field(default_factory=list)
    event_states: list = field(default_factory=list)
    dense: Optional[Callable] = None

    def first_event(self, i: int):
        """(time, state) of the first firing of event i, or None."""
        if i < len(self.event_times) and len(self.event_times[i]):
            return self.event_times[i][0], self.event_states[i][0]
        return None


def integrate(rhs, t_span, y0, config: IntegratorConfig = IntegratorConfig(),
              events: Sequence[EventSpec] = (), dense_output: bool = False) -> Trajectory:
    """Integrate y' = rhs(t, y) over t_span from y0.

    Raises StepError if the solver gives up or exceeds config.max_steps.
    """
    wrapped = []
    for ev in events:
        g = _wrap_event(ev)
        wrapped.append(g)
    sol = solve_ivp(rhs, tuple(t_span), np.asarray(y0, dtype=float),
                    method="RK45", rtol=config.rel_tol, atol=config.abs_tol,
                    max_step=config.max_step, events=wrapped or None,
                    dense_output=dense_output)
    if sol.status < 0:
        raise StepError("integration failed: %s" % sol.message)
    if sol.t.size > config.max_steps:
        raise StepError("integration exceeded %d steps" % config.max_steps)
    ev_times = [np.asarray(te) for te in (sol.t_events or [])]
    ev_states = [np.asarray(ye) for ye in (sol.y_events or [])]
    return Trajectory(t=sol.t, y=sol.y, status=sol.status,
                      event_times=ev_times, event_states=ev_states,
                      dense=sol.sol if dense_output else None)


def _wrap_event(ev: EventSpec):
    def g(t, y):
        return ev.fn(t, y)
    g.terminal = ev.terminal
    g.direction = ev.direction
    return g


@dataclass(frozen=True)
class RootBracket:
    """An interval [lo, hi] expected to enclose a sign change."""

    lo: float
    hi: float


def find_root_monotone(fn, bracket: RootBracket, tol: float = 1e-10,
                       f_lo: Optional[float] = None, f_hi: Optional[float] = None) -> float:
    """Brent's method on a bracketed sign change; raises BracketError otherwise.

    Precomputed endpoint values may be passed to avoid re-evaluating an
    expensive fn.
    """
    lo, hi = bracket.lo, bracket.hi
    if not lo < hi:
        raise BracketError("empty bracket [%g, %g]" % (lo, hi))
    flo = fn(lo) if f_lo is None else f_lo
    fhi = fn(hi) if f_hi is None else f_hi
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(
            "no sign change on [%g, %g]: f(lo)=%g, f(hi)=%g" % (lo, hi, flo, fhi))
    return brentq(fn, lo, hi, xtol=tol, rtol=8.881784197001252e-16)


def bracket_sign_change(fn, lo: float, hi: float, grow: float = 2.0,
                        max_grow: int = 4, grow_side: str = "hi"):
    """Return (RootBracket, f_lo, f_hi) with a verified sign change.

    If [lo, hi] does not bracket, the chosen side is pushed out
    geometrically up to max_grow times before giving up.
    """
    flo, fhi = fn(lo), fn(hi)
    for _ in range(max_grow + 1):
        if flo == 0.0 or fhi == 0.0 or flo * fhi < 0.0:
            return RootBracket(lo, hi), flo, fhi
        width = (hi - lo) * (grow - 1.0)
        if grow_side == "hi":
            hi = hi + width
            fhi = fn(hi)
        else:
            lo = lo - width
            flo = fn(lo)
    raise BracketError(
        "no sign change on [%g, %g] after widening: f(lo)=%g, f(hi)=%g" % (lo, hi, flo, fhi))


def bisect_predicate(pred, lo: float, hi: float, tol: float = 1e-8,
                     max_iter: int = 200) -> float:
    """Bisection on a boolean predicate that flips exactly once on [lo, hi].

    pred(lo) and pred(hi) must differ. Returns the midpoint of the final
    interval, whose width is at most 2*tol. Used where the shooting outcome
    is a discrete tag rather than a continuous residual.
    """
    plo = pred(lo)
    phi = pred(hi)
    if plo == phi:
        raise BracketError("predicate does not flip on [%g, %g]" % (lo, hi))
    for _ in range(max_iter):
        if hi - lo <= 2.0 * tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid) == plo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
