import math

import numpy as np
import pytest

import szewalk.line as line
from szewalk.line import (
    SUPPORT_RADIUS,
    LightConeOverflow,
    LineInitialState,
    LineState,
    QuadratureFailure,
    SingularK,
    WeakLimitDensity,
    cdf,
    cdf_grid,
    density,
    density_coefficients,
    density_moment,
    eigen_line,
    empirical_rescaled_cdf,
    group_velocity,
    kolmogorov_distance,
    max_group_speed,
    moment,
    simulate,
    step,
    u_of_k,
)


def test_initial_state_validation():
    LineInitialState(1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        LineInitialState(1.0, 1.0, 0.0)
    norm = LineInitialState.normalized(1, 1, 1)
    assert abs(norm.alpha - 1 / math.sqrt(3)) < 1e-15
    with pytest.raises(ValueError):
        LineInitialState.normalized(0, 0, 0)


def test_one_step_from_origin():
    dist = simulate(LineInitialState(1.0, 0.0, 0.0), 1)
    probs = {int(x): p for x, p in zip(dist.x, dist.p) if p > 1e-15}
    assert probs == pytest.approx({-1: 1 / 9, 0: 4 / 9, 1: 4 / 9})


def test_two_steps_from_origin():
    # second application of the scattering rules, amplitudes worked by hand:
    # p(2)=16/81, p(1)=32/81, p(0)=9/81, p(-1)=20/81, p(-2)=4/81
    dist = simulate(LineInitialState(1.0, 0.0, 0.0), 2)
    probs = {int(x): p for x, p in zip(dist.x, dist.p) if p > 1e-15}
    assert probs == pytest.approx(
        {2: 16 / 81, 1: 32 / 81, 0: 9 / 81, -1: 20 / 81, -2: 4 / 81}
    )


def test_step_is_unitary_and_light_cone_bound():
    rng = np.random.default_rng(12)
    state = LineState.initial(LineInitialState(1.0, 0.0, 0.0), 10)
    state.amps = rng.standard_normal((21, 3)) + 1j * rng.standard_normal((21, 3))
    state.amps[:2] = 0.0
    state.amps[-2:] = 0.0
    norm0 = state.norm
    out = step(state)
    assert out.norm == pytest.approx(norm0, rel=1e-12)

    dist = simulate(LineInitialState.normalized(1, 1j, -1), 6)
    outside = np.abs(dist.x) > 6
    assert np.max(dist.p[outside]) == 0.0


def test_light_cone_overflow():
    state = LineState.initial(LineInitialState(1.0, 0.0, 0.0), 2)
    state = step(state)
    with pytest.raises(LightConeOverflow):
        step(state)
    with pytest.raises(ValueError):
        simulate(LineInitialState(1.0, 0.0, 0.0), 10, L=5)


def test_t_zero_is_point_mass():
    dist = simulate(LineInitialState.normalized(1, 1, 1), 0)
    assert dist.p[dist.x == 0] == pytest.approx(1.0)
    assert dist.p.sum() == pytest.approx(1.0)


def test_momentum_operator_unitary():
    for k in np.linspace(0.1, 2 * math.pi - 0.1, 7):
        u = u_of_k(float(k))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-14)


def test_eigen_line_residuals_and_determinant():
    for k in (0.3, 1.0, math.pi / 2, math.pi, 4.0, 6.0):
        mp = eigen_line(k)
        for j in range(3):
            lam, v = mp.eigenvalues[j], mp.eigenvectors[:, j]
            assert np.linalg.norm(mp.matrix @ v - lam * v) < 1e-12
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12
            assert abs(abs(lam) - 1.0) < 1e-12
        # det U(k) = -1, so the eigenvalue product is too
        assert np.prod(mp.eigenvalues) == pytest.approx(-1.0, abs=1e-12)
        # flat branch first
        assert mp.eigenvalues[0] == pytest.approx(-1.0)
        assert mp.velocities[0] == 0.0
        assert mp.velocities[2] == -mp.velocities[1]


def test_singular_k_guard():
    with pytest.raises(SingularK):
        eigen_line(0.0)
    with pytest.raises(SingularK):
        eigen_line(1e-8)
    with pytest.raises(SingularK):
        group_velocity(0.0, 2)
    assert group_velocity(0.0, 1) == 0.0


def test_group_velocity_closed_values():
    # h(pi/2, 2) = sqrt(2) cos(pi/4)/sqrt(2) = cos(pi/4)
    assert group_velocity(math.pi / 2, 2) == pytest.approx(math.cos(math.pi / 4), abs=1e-14)
    assert group_velocity(math.pi, 2) == pytest.approx(0.0, abs=1e-14)
    assert group_velocity(1.0, 3) == -group_velocity(1.0, 2)
    # centered finite difference of the phase of lambda_2
    dk = 1e-6
    for k in (0.4, 1.3, 2.2, 4.4):
        fd = (np.angle(eigen_line(k + dk).eigenvalues[1])
              - np.angle(eigen_line(k - dk).eigenvalues[1])) / (2 * dk)
        assert abs(fd - group_velocity(k, 2)) < 1e-8


def test_max_group_speed_hits_support_edge():
    assert abs(max_group_speed() - SUPPORT_RADIUS) < 1e-9


def test_density_coefficients_reference_cases():
    d = density_coefficients(LineInitialState(1.0, 0.0, 0.0))
    assert d.c == pytest.approx(math.sqrt(3) / 6, abs=1e-15)
    assert (d.a0, d.a1, d.a2) == pytest.approx((1.0, 2.0, 1.0), abs=1e-15)

    sym = density_coefficients(LineInitialState.normalized(1, 1, 1))
    assert sym.c == pytest.approx(0.0, abs=1e-15)
    assert (sym.a0, sym.a1, sym.a2) == pytest.approx((2.0, 0.0, 0.0), abs=1e-14)

    mid = density_coefficients(LineInitialState(0.0, 1.0, 0.0))
    assert mid.c == pytest.approx(1 - math.sqrt(3) / 3, abs=1e-15)


def test_density_values_and_flags():
    sym = density_coefficients(LineInitialState.normalized(1, 1, 1))
    # closed-form value at the origin
    assert density(sym, 0.0) == pytest.approx(1 / (math.pi * math.sqrt(2)), abs=1e-15)
    assert density(sym, SUPPORT_RADIUS) == 0.0
    assert density(sym, -0.9) == 0.0
    near_edge = math.sqrt((2.0 - 1e-13) / 3.0)
    assert math.isinf(density(sym, near_edge))
    # even coefficients give an even density
    assert density(sym, 0.31) == pytest.approx(density(sym, -0.31), abs=1e-15)


def test_total_mass_one():
    for amps in [(1, 0, 0), (1, 1, 1), (0, 1, 0), (0.6, 0.48j, -0.64)]:
        d = density_coefficients(LineInitialState.normalized(*amps))
        assert density_moment(d, 0) == pytest.approx(1.0, abs=1e-9)


def test_cdf_shape():
    d = density_coefficients(LineInitialState(1.0, 0.0, 0.0))
    ys = np.linspace(-1.0, 1.0, 81)
    F = cdf_grid(d, ys)
    assert np.all(np.diff(F) >= -1e-12)
    assert F[0] == pytest.approx(0.0, abs=1e-12)
    assert F[-1] == pytest.approx(1.0, abs=1e-6)
    # grid evaluation agrees with one-at-a-time evaluation
    singles = [cdf(d, float(y)) for y in ys]
    np.testing.assert_allclose(F, singles, atol=1e-9)
    # atom enters at 0 through the right-continuous step
    assert cdf(d, 0.0) - cdf(d, -1e-12) == pytest.approx(d.c, abs=1e-9)


def test_quadrature_depth_cap():
    with pytest.raises(QuadratureFailure):
        line._adaptive_simpson(
            lambda x: math.sin(1.0 / (x + 1e-12)), 0.0, 1.0, 1e-12, 4
        )


def test_empirical_cdf_steps():
    dist = simulate(LineInitialState(1.0, 0.0, 0.0), 1)
    F = empirical_rescaled_cdf(dist, 1)
    assert F(-2.0) == pytest.approx(0.0)
    assert F(-1.0) == pytest.approx(1 / 9)
    assert F(-0.5) == pytest.approx(1 / 9)
    assert F(0.0) == pytest.approx(5 / 9)
    assert F(1.0) == pytest.approx(1.0)
    assert F(3.0) == pytest.approx(1.0)


def test_moments_small_t():
    dist = simulate(LineInitialState(1.0, 0.0, 0.0), 1)
    assert moment(dist, 1, 0) == pytest.approx(1.0)
    assert moment(dist, 1, 1) == pytest.approx(1 / 3)
    assert moment(dist, 1, 2) == pytest.approx(5 / 9)
    with pytest.raises(ValueError):
        moment(dist, 0, 1)


def test_symmetric_weak_limit_moments():
    sym = density_coefficients(LineInitialState.normalized(1, 1, 1))
    assert density_moment(sym, 1) == pytest.approx(0.0, abs=1e-12)
    m2 = density_moment(sym, 2)
    dist = simulate(LineInitialState.normalized(1, 1, 1), 600)
    assert moment(dist, 600, 2) == pytest.approx(m2, rel=5e-3)


def test_kolmogorov_distance_shrinks_for_spread_component():
    init = LineInitialState.normalized(1, 1, 1)
    d = density_coefficients(init)
    ks_small = kolmogorov_distance(simulate(init, 100), 100, d)
    ks_large = kolmogorov_distance(simulate(init, 1200), 1200, d)
    assert 0.0 < ks_large < ks_small < 1.0


def test_csv_outputs():
    init = LineInitialState(1.0, 0.0, 0.0)
    dist = simulate(init, 1)
    d = density_coefficients(init)
    pos = line.position_csv(dist)
    assert pos.startswith("x,probability\n")
    assert "\n-1,0.111111111111\n" in pos
    comp = line.cdf_comparison_csv(dist, 1, d)
    assert comp.splitlines()[0] == "y,F_empirical,F_analytic"
    dens = line.density_csv(d, [0.0, 0.5])
    header, columns, first, second = dens.splitlines()
    assert header == f"point_mass_at_zero={d.c:.12g}"
    assert columns == "y,f_continuous"
    assert first.startswith("0,")
    assert second.startswith("0.5,")


def test_weak_limit_density_support_property():
    d = WeakLimitDensity(c=0.0, a0=2.0, a1=0.0, a2=0.0)
    lo, hi = d.support
    assert lo == -SUPPORT_RADIUS and hi == SUPPORT_RADIUS
