import numpy as np
import pytest

from semigroup_lab.errors import (
    ConfigError,
    InterpolationError,
    PreconditionError,
    ShapeError,
)
from semigroup_lab.spectral import (
    FrequencyGrid,
    diagonalized_symbols,
    forward_transform,
    frequency_grid_for,
    inverse_transform,
    resolvent_apply,
    resolvent_bound_check,
    solve_x_direction,
    subordinated_multiplier_closed_form,
    subordinated_multiplier_quadrature,
    subordinated_semigroup_apply,
    subordination_density,
    subordination_density_check,
)


def test_frequency_grid_validation():
    with pytest.raises(ConfigError):
        FrequencyGrid(m=5, domega=0.1)
    with pytest.raises(ConfigError):
        FrequencyGrid(m=8, domega=-0.1)
    g = frequency_grid_for(8, 0.5)
    assert g.omegas[4] == 0.0
    assert g.domega == pytest.approx(2.0 * np.pi / 4.0)


def test_transform_round_trip_exact():
    rng = np.random.default_rng(0)
    u = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    for t0 in (0.0, 1.7):
        back = inverse_transform(forward_transform(u, 0.1, t0), 0.1, t0)
        assert np.max(np.abs(back - u)) < 1e-12


def test_forward_transform_matches_riemann_sum():
    m, dt = 128, 0.05
    t = np.arange(m) * dt
    u = np.exp(-(((t - 3.2) / 0.5) ** 2))
    grid = frequency_grid_for(m, dt)
    j = m // 2 + 3
    direct = dt * np.sum(u * np.exp(-1j * grid.omegas[j] * t))
    assert abs(forward_transform(u, dt)[j] - direct) < 1e-10


def test_x_direction_interior_satisfies_ode():
    m, dt, mu, L = 64, 0.2, 2.0, 1.0
    t = np.arange(m) * dt
    v0 = np.exp(-(((t - 6.4) / 1.5) ** 2))
    v1 = 0.1 * np.sin(t) * v0
    xs = np.array([-0.02, 0.0, 0.02])
    sol = solve_x_direction(v0, v1, dt, mu, L, xs)
    # second x-derivative by central difference of the spectra
    h = xs[1] - xs[0]
    d2 = (sol.coeffs[2] - 2.0 * sol.coeffs[1] + sol.coeffs[0]) / h**2
    target = 1j * np.sqrt(mu) * sol.grid.omegas * sol.coeffs[1]
    scale = np.max(np.abs(target)) + 1.0
    assert np.max(np.abs(d2 - target)) / scale < 1e-4


def test_x_direction_input_validation():
    v = np.ones(8)
    with pytest.raises(ShapeError):
        solve_x_direction(v, np.ones(7), 0.1, 1.0, 1.0, [0.0])
    with pytest.raises(ConfigError):
        solve_x_direction(v, v, 0.1, 1.0, 1.0, [5.0])


def test_x_direction_overflow_guard():
    m, dt = 64, 0.001  # huge frequencies
    v = np.ones(m)
    with pytest.raises(OverflowError):
        solve_x_direction(v, v, dt, 1.0, 10.0, [10.0])


def test_symbols_are_square_roots_of_the_multiplier():
    g = frequency_grid_for(16, 0.3)
    plus, minus = diagonalized_symbols(4.0, g)
    assert np.allclose(plus**2, 1j * 2.0 * g.omegas)
    assert np.allclose(minus, -plus)


def test_resolvent_bound_rejects_left_half_plane():
    g = frequency_grid_for(16, 0.3)
    with pytest.raises(PreconditionError):
        resolvent_bound_check(-1.0 + 0j, 1.0, g)


def test_resolvent_apply_single_mode():
    m, dt = 512, 0.02
    grid = frequency_grid_for(m, dt)
    t = np.arange(m) * dt
    lam = 2.0 + 0.5j
    w0 = grid.omegas[m // 2 + 4]
    f = np.exp(1j * w0 * t)
    u = resolvent_apply(lam, 1.0, f, dt)
    expect = f / (lam - 1j * w0)
    # away from the truncated tail the sampled mode is reproduced
    assert np.max(np.abs(u[: m // 3] - expect[: m // 3])) < 100.0 * dt**2


def test_resolvent_apply_scaling_in_mu():
    # (lam - sqrt(mu) d_t)^(-1) applied to a constant is 1/lam for any mu
    f = np.ones(256)
    for mu in (1.0, 4.0):
        u = resolvent_apply(3.0 + 0j, mu, f, 0.05)
        assert abs(u[0] - 1.0 / 3.0) < 1e-3


def test_density_truncated_mass_and_shape():
    from scipy.special import erfc

    lam = np.linspace(-1.0, 30.0, 40000)
    d = subordination_density(1.0, lam)
    assert np.all(d >= 0.0)
    assert np.all(d[lam <= 0] == 0.0)
    # heavy lambda^(-3/2) tail: mass up to 30 is erfc(1 / (2 sqrt(30)))
    assert np.trapezoid(d, lam) == pytest.approx(erfc(0.5 / np.sqrt(30.0)), abs=1e-3)


def test_density_check_reports():
    rep = subordination_density_check(1.0, (1.0,))
    assert rep.passed
    with pytest.raises(ConfigError):
        subordination_density_check(-1.0, (1.0,))
    with pytest.raises(ConfigError):
        subordination_density_check(1.0, (0.0,))


def test_multiplier_conjugate_symmetry():
    g = frequency_grid_for(32, 0.3)
    m = subordinated_multiplier_quadrature(1.0, 1.0, g.omegas)
    # density is real, so the multiplier is Hermitian in omega
    for j in range(1, g.m // 2):
        assert m[g.m // 2 + j] == pytest.approx(np.conj(m[g.m // 2 - j]), abs=1e-12)
    closed = subordinated_multiplier_closed_form(1.0, 1.0, g.omegas)
    assert np.max(np.abs(m - closed)) < 1e-6


def test_semigroup_apply_validation():
    with pytest.raises(ShapeError):
        subordinated_semigroup_apply(1.0, 1.0, np.ones(7), 0.1)
    bad = np.ones(8)
    bad[3] = np.nan
    with pytest.raises(InterpolationError):
        subordinated_semigroup_apply(1.0, 1.0, bad, 0.1)
    with pytest.raises(ConfigError):
        subordinated_semigroup_apply(-1.0, 1.0, np.ones(8), 0.1)
