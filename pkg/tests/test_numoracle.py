import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from mie_nd.errors import DomainError, ResolutionError
from mie_nd.model import Channel, make_params
from mie_nd.numoracle import (
    FdProblem,
    centrifugal_numerator,
    effective_potential,
    fd_convergence_ratio,
    fd_eigenvalues,
    fd_problem,
    fd_raw_eigenvalues,
    ode_residual,
    sturm_count,
)
from mie_nd.spectrum import energy
from mie_nd.wavefunction import radial_state


def test_centrifugal_groupings_agree_exactly():
    for N in range(2, 11):
        for ell in range(7):
            # both sides times four are integers
            assert 4 * ell * (ell + N - 2) + (N - 1) * (N - 3) == (2 * ell + N - 1) * (2 * ell + N - 3)
            assert centrifugal_numerator(N, ell) == (2 * ell + N - 1) * (2 * ell + N - 3) / 4


def test_effective_potential_examples(hydrogen):
    assert effective_potential(hydrogen, 3, 0, 2.0) == -0.5
    assert effective_potential(hydrogen, 3, 1, 1.0) - effective_potential(hydrogen, 3, 0, 1.0) == 1.0
    with pytest.raises(DomainError):
        effective_potential(hydrogen, 3, 0, 0.0)


@pytest.mark.parametrize("A, B, N, expected", [(1, 0, 3, -0.5), (2, 1, 3, -0.5), (1, 0, 5, -0.125)])
def test_lowest_levels(A, B, N, expected):
    p = make_params(A, B, 0.0)
    e = fd_eigenvalues(fd_problem(p, N, 0, 1), 1)
    assert e[0] == pytest.approx(expected, rel=1e-6)


def test_sturm_count_agrees_with_dense_solver():
    rng = np.random.default_rng(7)
    diag = rng.normal(size=60)
    off = rng.normal(size=59)
    ev = eigh_tridiagonal(diag, off, eigvals_only=True)
    for x in (-3.0, -0.5, 0.0, 0.7, 2.5):
        assert sturm_count(diag, off, x) == int(np.sum(ev < x))


def test_bound_state_count_below_threshold(hydrogen):
    prob = FdProblem(hydrogen, 3, 0, 400.0, 4000)
    diag, off = prob.matrix()
    below = sturm_count(diag, off, 0.0)
    # a box of radius 400 resolves the levels whose extent 2 n^2 fits well inside it
    assert below >= 8


def test_second_order_convergence(kratzer):
    prob = FdProblem(kratzer, 3, 0, 40.0, 1000)
    ratio = fd_convergence_ratio(prob, 1)[0]
    assert 3.6 <= ratio <= 4.4


def test_too_small_box_is_reported(hydrogen):
    with pytest.raises(ResolutionError):
        fd_eigenvalues(FdProblem(hydrogen, 3, 0, 5.0, 500), 3)


def test_problem_guards(hydrogen):
    with pytest.raises(DomainError):
        FdProblem(hydrogen, 3, 0, 10.0, 50)
    with pytest.raises(DomainError):
        fd_raw_eigenvalues(FdProblem(hydrogen, 3, 0, 10.0, 200), 11)


def test_refined_grid_halves_spacing(hydrogen):
    p = FdProblem(hydrogen, 3, 0, 10.0, 200)
    assert p.refined().spacing == pytest.approx(p.spacing / 2)


def test_ode_residual_exact_state(hydrogen):
    s = radial_state(hydrogen, Channel(3, 0, 0))
    assert ode_residual(s, -0.5) < 1e-10


def test_ode_residual_doubled_decay_fails(hydrogen):
    s = radial_state(hydrogen, Channel(3, 0, 0), epsilon=2.0)
    assert ode_residual(s, -0.5) > 0.1


def test_ode_residual_is_scale_invariant(kratzer):
    s = radial_state(kratzer, Channel(4, 1, 2))
    e = energy(kratzer, Channel(4, 1, 2)).energy
    from dataclasses import replace
    scaled = replace(s, log_norm=s.log_norm + 5.0)
    assert ode_residual(scaled, e) == pytest.approx(ode_residual(s, e), abs=1e-15)


@pytest.mark.parametrize("N, ell, n_r", [(3, 0, 0), (3, 1, 2), (5, 2, 4), (8, 3, 6)])
def test_ode_residual_sweep(kratzer, N, ell, n_r):
    ch = Channel(N, ell, n_r)
    assert ode_residual(radial_state(kratzer, ch), energy(kratzer, ch).energy) < 1e-8
