import numpy as np
import pytest

from freewave import matching, pde_verify, reaction
from freewave.errors import StepError


@pytest.fixture(scope="module")
def symmetric_wave():
    f = reaction.logistic()
    return matching.solve_two_species(f, f, 1.0, 1.0)


@pytest.fixture(scope="module")
def moving_wave():
    f = reaction.logistic()
    return matching.solve_two_species(f, f, 1.0, 0.5)


def test_step_rejects_large_dt(symmetric_wave):
    state = pde_verify.initial_state(symmetric_wave, L=20.0, N=200)
    f = symmetric_wave.f
    g = symmetric_wave.g
    with pytest.raises(StepError):
        pde_verify.step(state, state.dx ** 2, f, g, 1.0, 1.0)


def test_one_step_keeps_profile_nearly_fixed(symmetric_wave):
    state = pde_verify.initial_state(symmetric_wave, L=20.0, N=1000)
    assert state.dx == pytest.approx(0.02, abs=1e-12)
    new = pde_verify.step(state, 1e-4, symmetric_wave.f, symmetric_wave.g, 1.0, 1.0)
    assert np.max(np.abs(new.u - state.u)) < 1e-4
    assert np.max(np.abs(new.v - state.v)) < 1e-4
    assert new.t == pytest.approx(state.t + 1e-4, abs=1e-15)
    assert new.s == pytest.approx(state.s + 1e-4 * new.speed, rel=1e-6)


def test_far_field_precondition(symmetric_wave):
    with pytest.raises(StepError):
        pde_verify.initial_state(symmetric_wave, L=8.0, N=100)


def test_run_report_structure(moving_wave):
    report = pde_verify.run(moving_wave, L=20.0, N=200, T=2.0)
    assert report.history.shape[1] == 3
    assert np.all(np.diff(report.history[:, 0]) > 0)
    assert report.L == 20.0 and report.N == 200 and report.T == 2.0
    assert report.dt <= 0.5 * (20.0 / 200) ** 2
    assert isinstance(report.final, pde_verify.FrontFrameState)
    assert report.profile_drift < 0.05


def test_run_is_deterministic(moving_wave):
    a = pde_verify.run(moving_wave, L=20.0, N=200, T=1.0)
    b = pde_verify.run(moving_wave, L=20.0, N=200, T=1.0)
    assert a.mean_speed == b.mean_speed
    assert a.profile_drift == b.profile_drift


def test_reflection_equivalence(moving_wave):
    f = reaction.logistic()
    mirror = matching.solve_two_species(f, f, 0.5, 1.0)
    assert mirror.c == pytest.approx(-moving_wave.c, abs=1e-9)
    fwd = pde_verify.run(moving_wave, L=20.0, N=200, T=2.0)
    bwd = pde_verify.run(mirror, L=20.0, N=200, T=2.0)
    assert bwd.mean_speed == pytest.approx(-fwd.mean_speed, abs=1e-6)
    assert bwd.profile_drift == pytest.approx(fwd.profile_drift, abs=1e-6)


def test_grid_refinement_reduces_speed_error(moving_wave):
    c = moving_wave.c
    coarse = pde_verify.run(moving_wave, L=20.0, N=200, T=4.0)
    fine = pde_verify.run(moving_wave, L=20.0, N=400, T=4.0)
    err_coarse = abs(coarse.mean_speed - c)
    err_fine = abs(fine.mean_speed - c)
    assert err_fine < 0.75 * err_coarse


def test_mean_speed_monotone_in_coefficient(symmetric_wave, moving_wave):
    f = reaction.logistic()
    slow = matching.solve_two_species(f, f, 1.0, 2.0)
    speeds = []
    for wave in (moving_wave, symmetric_wave, slow):
        speeds.append(pde_verify.run(wave, L=20.0, N=200, T=2.0).mean_speed)
    assert speeds[0] > speeds[1] > speeds[2]
    assert abs(speeds[1]) < 1e-3
