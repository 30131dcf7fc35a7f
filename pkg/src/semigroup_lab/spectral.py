"""x-direction evolution of the heat equation via Fourier transform in t,
the resolvent bound for sqrt(mu) d_t, and the fractional-power semigroup
via subordination.

Frequency-domain conventions: m even samples t_n = t0 + n dt pair with
omega_j = (j - m/2) domega, domega = 2 pi / (m dt). The forward transform
approximates int u(t) exp(-i omega t) dt and the inverse carries the
1/(2 pi) factor, so the round trip is exact on the grid.

Branch convention for the x-direction solution: with r = sqrt(i sqrt(mu)
omega) (principal), the two-sided solution A exp(r (x+L)) + B exp(-r (x+L))
is fixed by A + B = v0_hat and r (A - B) = v1_hat, which reproduces both
boundary traces at x = -L exactly for every frequency (the omega = 0 row
degenerates to v0_hat + v1_hat (x+L)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import (
    ConfigError,
    InterpolationError,
    PreconditionError,
    QuadratureError,
    ShapeError,
)
from .report import VerificationReport, inputs_digest


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform frequencies omega_j = (j - m/2) domega, j = 0..m-1, m even."""

    m: int
    domega: float

    def __post_init__(self):
        if self.m < 2 or self.m % 2 != 0:
            raise ConfigError("m must be even and >= 2")
        if self.domega <= 0:
            raise ConfigError("domega must be positive")

    @property
    def omegas(self) -> np.ndarray:
        return self.domega * (np.arange(self.m) - self.m // 2)


def frequency_grid_for(m: int, dt: float) -> FrequencyGrid:
    """Frequency grid matched to m time samples of spacing dt."""
    return FrequencyGrid(m=m, domega=2.0 * np.pi / (m * dt))


def forward_transform(values: np.ndarray, dt: float, t0: float = 0.0) -> np.ndarray:
    """Trace samples -> spectral coefficients on the matched frequency grid."""
    values = np.asarray(values, dtype=complex)
    m = values.size
    grid = frequency_grid_for(m, dt)
    signs = (-1.0) ** np.arange(m)
    coeffs = dt * np.fft.fft(values * signs)
    return coeffs * np.exp(-1j * grid.omegas * t0)


def inverse_transform(coeffs: np.ndarray, dt: float, t0: float = 0.0) -> np.ndarray:
    """Spectral coefficients -> trace samples (1/(2 pi) on the inverse)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    m = coeffs.size
    grid = frequency_grid_for(m, dt)
    signs = (-1.0) ** np.arange(m)
    shifted = coeffs * np.exp(1j * grid.omegas * t0)
    return signs * np.fft.ifft(shifted) / dt


@dataclass(frozen=True)
class XDirectionSolution:
    """Per-target spectra (and traces) of the x-direction boundary problem."""

    grid: FrequencyGrid
    x_targets: np.ndarray
    coeffs: np.ndarray       # shape (len(x_targets), m): u_hat(omega, x)
    dx_coeffs: np.ndarray    # shape (len(x_targets), m): d_x u_hat(omega, x)
    traces: np.ndarray       # shape (len(x_targets), m): u(t, x) samples


def solve_x_direction(
    v0: np.ndarray,
    v1: np.ndarray,
    dt: float,
    mu: float,
    L: float,
    x_targets,
    t0: float = 0.0,
) -> XDirectionSolution:
    """Solve d_x^2 u_hat = i sqrt(mu) omega u_hat from value/derivative
    traces posed at x = -L, evaluated at the requested x targets."""
    v0 = np.asarray(v0, dtype=complex)
    v1 = np.asarray(v1, dtype=complex)
    if v0.shape != v1.shape or v0.ndim != 1:
        raise ShapeError("v0 and v1 must be 1-D arrays of equal length")
    if mu <= 0 or L <= 0:
        raise ConfigError("mu and L must be positive")
    x_targets = np.atleast_1d(np.asarray(x_targets, dtype=float))
    if np.any(np.abs(x_targets) > L + 1e-12):
        raise ConfigError("x targets must lie in [-L, L]")
    m = v0.size
    grid = frequency_grid_for(m, dt)
    omegas = grid.omegas
    v0h = forward_transform(v0, dt, t0)
    v1h = forward_transform(v1, dt, t0)

    r = np.sqrt(1j * np.sqrt(mu) * omegas.astype(complex))
    nz = omegas != 0.0
    a = np.zeros(m, dtype=complex)
    b = np.zeros(m, dtype=complex)
    a[nz] = 0.5 * (v0h[nz] + v1h[nz] / r[nz])
    b[nz] = 0.5 * (v0h[nz] - v1h[nz] / r[nz])

    coeffs = np.empty((x_targets.size, m), dtype=complex)
    dx_coeffs = np.empty_like(coeffs)
    for i, x in enumerate(x_targets):
        z = x + L
        expo = r[nz] * z
        if np.any(expo.real > 690.0):
            raise OverflowError(
                f"growing branch exceeds 1e300 at x={x:g} (|exponent| too large)"
            )
        ep = np.exp(expo)
        em = np.exp(-expo)
        coeffs[i, nz] = a[nz] * ep + b[nz] * em
        dx_coeffs[i, nz] = r[nz] * (a[nz] * ep - b[nz] * em)
        # omega = 0: double root of the characteristic equation.
        coeffs[i, ~nz] = v0h[~nz] + v1h[~nz] * z
        dx_coeffs[i, ~nz] = v1h[~nz]
    traces = np.stack([inverse_transform(row, dt, t0) for row in coeffs])
    return XDirectionSolution(
        grid=grid, x_targets=x_targets, coeffs=coeffs, dx_coeffs=dx_coeffs, traces=traces
    )


def diagonalized_symbols(mu: float, grid: FrequencyGrid):
    """Frequency symbols +-sqrt(i sqrt(mu) omega) of the diagonalized system."""
    if mu <= 0:
        raise ConfigError("mu must be positive")
    root = np.sqrt(1j * np.sqrt(mu) * grid.omegas.astype(complex))
    return root, -root


def resolvent_bound_check(
    lam: complex, mu: float, grid: FrequencyGrid
) -> VerificationReport:
    """Grid supremum of |lambda - i sqrt(mu) omega|^(-n) against (Re lambda)^(-n)."""
    if lam.real <= 0:
        raise PreconditionError("Re lambda must be positive")
    if mu <= 0:
        raise ConfigError("mu must be positive")
    gaps = np.abs(lam - 1j * np.sqrt(mu) * grid.omegas)
    s1 = float(np.max(1.0 / gaps))
    residuals = {}
    tolerances = {}
    for n in range(1, 5):
        residuals[f"sup_n{n}"] = s1**n
        tolerances[f"sup_n{n}"] = (1.0 / lam.real) ** n + 1e-14
    return VerificationReport(
        name="resolvent_bound",
        inputs_digest=inputs_digest(
            {"lam": repr(lam), "mu": mu, "m": grid.m, "domega": grid.domega}
        ),
        residuals=residuals,
        tolerances=tolerances,
    )


def resolvent_apply(
    lam: complex, mu: float, f: np.ndarray, dt: float
) -> np.ndarray:
    """Apply (lambda - sqrt(mu) d_t)^(-1) via its integral representation.

    u(t) = mu^(-1/2) int_t^inf exp(-lambda (s - t) / sqrt(mu)) f(s) ds,
    evaluated by trapezoid quadrature on the sample grid with f taken as
    zero beyond the last sample.
    """
    if lam.real <= 0:
        raise PreconditionError("Re lambda must be positive")
    if mu <= 0:
        raise ConfigError("mu must be positive")
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1:
        raise ShapeError("f must be a 1-D array")
    m = f.size
    idx = np.arange(m)
    u = np.zeros(m, dtype=complex)
    for i in range(m):
        seg = np.exp(-lam / np.sqrt(mu) * (idx[i:] - i) * dt) * f[i:]
        if seg.size > 1:
            u[i] = np.trapezoid(seg, dx=dt)
    return u / np.sqrt(mu)


def subordination_density(x: float, lam) -> np.ndarray:
    """Density of the 1/2-stable subordinator at parameter x."""
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam)
    pos = lam > 0
    out[pos] = (
        x / (2.0 * np.sqrt(np.pi)) * lam[pos] ** -1.5 * np.exp(-(x**2) / (4.0 * lam[pos]))
    )
    return out


def _density_scalar(x: float, lam: float) -> float:
    if lam <= 0.0:
        return 0.0
    return x / (2.0 * np.sqrt(np.pi)) * lam**-1.5 * np.exp(-(x**2) / (4.0 * lam))


def subordination_density_check(x: float, ks) -> VerificationReport:
    """Laplace identity int exp(-lam k) d_gamma = exp(-x sqrt(k)), plus mass.

    Quadrature uses the substitution lam = x^2 / (4 s^2), which removes the
    endpoint singularity and turns the integral into a Gaussian-weighted one.
    """
    if x <= 0:
        raise ConfigError("x must be positive")
    ks = list(ks)
    if any(k <= 0 for k in ks):
        raise ConfigError("all k must be positive")
    residuals = {}
    tolerances = {}

    def transformed(s, k):
        return 2.0 / np.sqrt(np.pi) * np.exp(-(s**2) - k * x**2 / (4.0 * s**2))

    mass, err = quad(lambda s: 2.0 / np.sqrt(np.pi) * np.exp(-(s**2)), 0.0, np.inf,
                     epsabs=1e-12)
    if err > 1e-8:
        raise QuadratureError(f"mass integral error {err:.3e}")
    residuals["mass"] = abs(mass - 1.0)
    tolerances["mass"] = 1e-8
    for k in ks:
        val, err = quad(transformed, 0.0, np.inf, args=(k,), epsabs=1e-12)
        if err > 1e-7:
            raise QuadratureError(f"Laplace integral error {err:.3e} at k={k}")
        residuals[f"laplace_k{k:g}"] = abs(val - np.exp(-x * np.sqrt(k)))
        tolerances[f"laplace_k{k:g}"] = 1e-8
    return VerificationReport(
        name="subordination_density",
        inputs_digest=inputs_digest({"x": x, "ks": ks}),
        residuals=residuals,
        tolerances=tolerances,
    )


def subordinated_multiplier_closed_form(x: float, mu: float, omegas) -> np.ndarray:
    """exp(-x sqrt(-i sqrt(mu) omega)) with the principal square root."""
    omegas = np.asarray(omegas, dtype=float)
    return np.exp(-x * np.sqrt(-1j * np.sqrt(mu) * omegas.astype(complex)))


def subordinated_multiplier_quadrature(x: float, mu: float, omegas) -> np.ndarray:
    """Per-mode Fourier integral of the subordinator density by quadrature.

    For each omega computes int_0^inf exp(i sqrt(mu) omega lam) d_gamma_x(lam)
    with QUADPACK's oscillatory rule; this is what the translation-semigroup
    average reduces to mode by mode.
    """
    omegas = np.asarray(omegas, dtype=float)
    out = np.empty(omegas.shape, dtype=complex)
    cache: dict[float, complex] = {}
    for i, w in enumerate(omegas):
        c = np.sqrt(mu) * w
        if c in cache:
            out[i] = cache[c]
            continue
        if c == 0.0:
            val, err = quad(lambda lam: _density_scalar(x, lam), 0.0, np.inf,
                            limit=400, epsabs=1e-11)
            if err > 1e-7:
                raise QuadratureError(f"mass quadrature error {err:.3e}")
            res = complex(val)
        elif -c in cache:
            res = np.conj(cache[-c])
        else:
            re, re_err = quad(lambda lam: _density_scalar(x, lam), 0.0, np.inf,
                              weight="cos", wvar=c, limit=400)
            im, im_err = quad(lambda lam: _density_scalar(x, lam), 0.0, np.inf,
                              weight="sin", wvar=c, limit=400)
            if max(re_err, im_err) > 1e-7:
                raise QuadratureError(
                    f"oscillatory quadrature error {max(re_err, im_err):.3e} at omega={w}"
                )
            res = re + 1j * im
        cache[c] = res
        out[i] = res
    return out


def subordinated_semigroup_apply(
    x: float, mu: float, w0: np.ndarray, dt: float
) -> np.ndarray:
    """W(x) w0: average of translates w0(. + sqrt(mu) lam) over the
    subordinator law.

    Off-grid translates are realized by band-limited (trigonometric)
    interpolation of the samples, under which the average reduces to a
    per-mode multiplier computed by quadrature of the density.
    """
    if x <= 0:
        raise ConfigError("x must be positive")
    w0 = np.asarray(w0, dtype=complex)
    if w0.ndim != 1 or w0.size % 2 != 0:
        raise ShapeError("w0 must be a 1-D array of even length")
    if not np.all(np.isfinite(w0)):
        raise InterpolationError("w0 contains non-finite samples")
    grid = frequency_grid_for(w0.size, dt)
    coeffs = forward_transform(w0, dt)
    mult = subordinated_multiplier_quadrature(x, mu, grid.omegas)
    return inverse_transform(coeffs * mult, dt)
