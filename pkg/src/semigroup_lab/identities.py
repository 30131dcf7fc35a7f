"""Numerical verification of the nonlinearity-emergence identities.

Each identity relates derivatives of a pair (u, v) of closed-form scalar
functions of (t, x). Right-hand sides are evaluated from the catalogue's
analytic derivative formulas; the outer derivative on the left-hand side
(of a quotient or square, i.e. exactly the thing the identity rearranges)
is evaluated by complex-step differentiation, which is independent of any
product/quotient-rule rearrangement and accurate to machine precision.

The "heat constrained" pairs satisfy v_t = v_xx and u = -v_x analytically;
those constraints are load-bearing for the advection-emergence and
gradient-square identities, which is confirmed by negative controls.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError, DivisionWindowError

CSTEP = 1e-100


@dataclass(frozen=True)
class SmoothPair:
    """Closed-form pair (u, v) with analytic partial derivatives.

    u and v accept complex arguments in either variable (needed for
    complex-step differentiation of composite expressions).
    """

    name: str
    u: Callable
    v: Callable
    ut: Callable
    ux: Callable
    vt: Callable
    vx: Callable
    vxx: Callable
    vxt: Callable
    heat_constrained: bool = False


@dataclass(frozen=True)
class Window:
    """Evaluation rectangle [t0, t1] x [x0, x1] sampled on a lattice."""

    t0: float
    t1: float
    x0: float
    x1: float
    nt: int = 9
    nx: int = 17

    def lattice(self):
        t = np.linspace(self.t0, self.t1, self.nt)
        x = np.linspace(self.x0, self.x1, self.nx)
        return np.meshgrid(t, x, indexing="ij")


@dataclass(frozen=True)
class IdentityResidual:
    identity_name: str
    max_abs: float
    scale: float
    sample_count: int

    @property
    def relative(self) -> float:
        return self.max_abs / self.scale if self.scale > 0 else self.max_abs


def exp_sum_pair(
    name: str,
    u_terms,
    v_terms,
    u_const: float = 0.0,
    v_const: float = 0.0,
    heat_constrained: bool = False,
) -> SmoothPair:
    """Pair built from exponential sums c * exp(a x + b t) (+ constant).

    Terms are (c, a, b) triples. With b = a^2 and u built as -v_x, the pair
    is heat constrained.
    """

    def make(terms, const):
        terms = [(complex(c), complex(a), complex(b)) for c, a, b in terms]

        def f(t, x):
            acc = const + 0.0j if const else 0.0j
            for c, a, b in terms:
                acc = acc + c * np.exp(a * x + b * t)
            return acc

        def ft(t, x):
            acc = 0.0j
            for c, a, b in terms:
                acc = acc + b * c * np.exp(a * x + b * t)
            return acc

        def fx(t, x):
            acc = 0.0j
            for c, a, b in terms:
                acc = acc + a * c * np.exp(a * x + b * t)
            return acc

        def fxx(t, x):
            acc = 0.0j
            for c, a, b in terms:
                acc = acc + a * a * c * np.exp(a * x + b * t)
            return acc

        def fxt(t, x):
            acc = 0.0j
            for c, a, b in terms:
                acc = acc + a * b * c * np.exp(a * x + b * t)
            return acc

        return f, ft, fx, fxx, fxt

    u, ut, ux, _, _ = make(u_terms, u_const)
    v, vt, vx, vxx, vxt = make(v_terms, v_const)
    return SmoothPair(
        name=name, u=u, v=v, ut=ut, ux=ux, vt=vt, vx=vx, vxx=vxx, vxt=vxt,
        heat_constrained=heat_constrained,
    )


def heat_shock_pair(a: float, name: str | None = None) -> SmoothPair:
    """v = 1 + exp(a x + a^2 t), u = -v_x: the Cole-Hopf shock family."""
    return exp_sum_pair(
        name or f"shock_a{a:g}",
        u_terms=[(-a, a, a * a)],
        v_terms=[(1.0, a, a * a)],
        v_const=1.0,
        heat_constrained=True,
    )


def single_exponential_pair(a: float = 1.0) -> SmoothPair:
    """v = exp(a x + a^2 t), u = -v_x (heat constrained, no constant)."""
    return exp_sum_pair(
        f"single_exp_a{a:g}",
        u_terms=[(-a, a, a * a)],
        v_terms=[(1.0, a, a * a)],
        heat_constrained=True,
    )


def polynomial_pair() -> SmoothPair:
    """u = t^2, v = t: ratio u/v = t, a transparent Leibniz case."""
    return SmoothPair(
        name="poly_t2_over_t",
        u=lambda t, x: t * t + 0.0j,
        v=lambda t, x: t + 0.0j,
        ut=lambda t, x: 2.0 * t + 0.0j,
        ux=lambda t, x: 0.0j * t,
        vt=lambda t, x: 1.0 + 0.0j * t,
        vx=lambda t, x: 0.0j * t,
        vxx=lambda t, x: 0.0j * t,
        vxt=lambda t, x: 0.0j * t,
    )


def violating_pair() -> SmoothPair:
    """v = exp(x + t^2), u = -v_x: heat constraint deliberately broken."""

    def v(t, x):
        return np.exp(x + t * t)

    return SmoothPair(
        name="violating_exp_t2",
        u=lambda t, x: -v(t, x),
        v=v,
        ut=lambda t, x: -2.0 * t * v(t, x),
        ux=lambda t, x: -v(t, x),
        vt=lambda t, x: 2.0 * t * v(t, x),
        vx=v,
        vxx=v,
        vxt=lambda t, x: 2.0 * t * v(t, x),
    )


def mismatched_pair() -> SmoothPair:
    """u = exp(2x), v = exp(x): u != -v_x, breaking the gradient-square link."""
    return SmoothPair(
        name="mismatched_exp",
        u=lambda t, x: np.exp(2.0 * x) + 0.0j * t,
        v=lambda t, x: np.exp(x) + 0.0j * t,
        ut=lambda t, x: 0.0j * t,
        ux=lambda t, x: 2.0 * np.exp(2.0 * x) + 0.0j * t,
        vt=lambda t, x: 0.0j * t,
        vx=lambda t, x: np.exp(x) + 0.0j * t,
        vxx=lambda t, x: np.exp(x) + 0.0j * t,
        vxt=lambda t, x: 0.0j * t,
    )


def conforming_catalogue():
    """Pairs on which every applicable identity must hold."""
    return [
        heat_shock_pair(1.0),
        heat_shock_pair(2.0),
        single_exponential_pair(1.0),
        exp_sum_pair(
            "exp_sum_mixed",
            u_terms=[(1.0, 0.5, 1.0), (0.3, -0.2, 0.7)],
            v_terms=[(1.0, 1.0, -0.5), (0.5, 0.2, 0.3)],
        ),
    ]


def _cstep_t(f, t, x):
    """d/dt f by complex-step differentiation."""
    return np.imag(f(t + 1j * CSTEP, x)) / CSTEP


def _cstep_x(f, t, x):
    """d/dx f by complex-step differentiation."""
    return np.imag(f(t, x + 1j * CSTEP)) / CSTEP


def _guard(name, values, floor):
    if np.min(np.abs(values)) < floor:
        raise DivisionWindowError(f"{name} vanishes on the evaluation window")


def _residual(name, lhs, rhs):
    lhs = np.real_if_close(np.asarray(lhs))
    rhs = np.real_if_close(np.asarray(rhs))
    scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 0.0))
    return IdentityResidual(
        identity_name=name,
        max_abs=float(np.max(np.abs(lhs - rhs))),
        scale=scale,
        sample_count=lhs.size,
    )


def leibniz_residual(pair: SmoothPair, window: Window) -> IdentityResidual:
    """(u v^-1)' = (u' v - v' u) v^-2."""
    t, x = window.lattice()
    vv = pair.v(t, x)
    _guard("v", vv, 1e-12)
    lhs = _cstep_t(lambda tt, xx: pair.u(tt, xx) / pair.v(tt, xx), t, x)
    rhs = (pair.ut(t, x) * vv - pair.vt(t, x) * pair.u(t, x)) / vv**2
    return _residual("leibniz", lhs, rhs)


def factorization_residual(pair: SmoothPair, window: Window) -> IdentityResidual:
    """(-u v^-1)' = [u' u^-1 - v' v^-1] (-u v^-1).

    The bracket is the difference of logarithmic derivatives of numerator
    and denominator, i.e. (log(-u/v))' applied back to -u/v.
    """
    t, x = window.lattice()
    uu = pair.u(t, x)
    vv = pair.v(t, x)
    _guard("u", uu, 1e-12)
    _guard("v", vv, 1e-12)
    lhs = _cstep_t(lambda tt, xx: -pair.u(tt, xx) / pair.v(tt, xx), t, x)
    rhs = (pair.ut(t, x) / uu - pair.vt(t, x) / vv) * (-uu / vv)
    return _residual("factorization", lhs, rhs)


def advection_identity_residual(pair: SmoothPair, window: Window) -> IdentityResidual:
    """Emergence of the advection term for heat-constrained pairs
    (v_t = v_xx, u = -v_x):

    (-u v^-1)' = -(v_x) v^-1 (-u v^-1)^2 - (-u v^-1) d_x(-u v^-1)
                 + (v_x)' (v_x)^-1 (-u v^-1).
    """
    t, x = window.lattice()
    uu = pair.u(t, x)
    vv = pair.v(t, x)
    vx = pair.vx(t, x)
    _guard("v", vv, 1e-12)
    _guard("d_x v", vx, 1e-12)
    psi = -uu / vv
    lhs = _cstep_t(lambda tt, xx: -pair.u(tt, xx) / pair.v(tt, xx), t, x)
    dpsi_dx = _cstep_x(lambda tt, xx: -pair.u(tt, xx) / pair.v(tt, xx), t, x)
    rhs = -vx / vv * psi**2 - psi * dpsi_dx + pair.vxt(t, x) / vx * psi
    out = _residual("advection_emergence", lhs, rhs)
    if pair.heat_constrained and float(
        np.max(np.abs(np.real_if_close(psi * dpsi_dx)))
    ) <= 1e-14 * max(out.scale, 1.0):
        raise ConfigError(
            "advection term vanishes identically on this window; the check is vacuous"
        )
    return out


def gradient_square_identity(pair: SmoothPair, window: Window) -> IdentityResidual:
    """d_x u^2 = 2 (d_x^2 v) (d_x v)^-1 u^2, using u = -d_x v."""
    t, x = window.lattice()
    uu = pair.u(t, x)
    vx = pair.vx(t, x)
    _guard("d_x v", vx, 1e-12)
    lhs = _cstep_x(lambda tt, xx: pair.u(tt, xx) ** 2, t, x)
    rhs = 2.0 * pair.vxx(t, x) / vx * uu**2
    return _residual("gradient_square", lhs, rhs)
