"""Two-parameter evolution families U(t,s) with commuting generators.

Only two kinds of family are constructible: a constant generator M, giving
U(t,s) = exp((t-s) M), and a scalar-modulated generator a(.)M, giving
U(t,s) = exp((int_s^t a) M). Both commute with their generator by
construction, which is exactly the condition the logarithmic representation
needs. The evolution coordinate is direction-agnostic: the label ("t",
"x1", ...) is metadata and never enters any computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .errors import ConfigError, DomainError, QuadratureError
from .operators import as_operator, identity_like, mat_exp, op_norm
from .report import VerificationReport, inputs_digest

TOL_SEMIGROUP = 1e-10

# Named scalar coefficient catalogue, shared with gauge functions:
#   const:c -> c,  linear:c -> c*tau,  sin:c -> c*sin(tau),  poly:c -> tau**c
def coefficient_from_name(name: str) -> Callable[[float], float]:
    try:
        kind, _, arg = name.partition(":")
        c = float(arg) if arg else 1.0
    except ValueError as exc:
        raise ConfigError(f"bad coefficient spec {name!r}") from exc
    if kind == "const":
        return lambda tau: c
    if kind == "linear":
        return lambda tau: c * tau
    if kind == "sin":
        return lambda tau: c * np.sin(tau)
    if kind == "poly":
        return lambda tau: tau**c
    raise ConfigError(f"unknown coefficient kind {kind!r}")


@dataclass(frozen=True)
class GeneratorSpec:
    """Generator of an evolution family.

    kind is "constant" (U = exp((t-s)M)) or "scalar_modulated"
    (U = exp((int_s^t a) M)).
    """

    kind: str
    matrix: np.ndarray
    coefficient: Optional[Callable[[float], float]] = None
    coordinate_label: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_operator(self.matrix))
        if self.kind not in ("constant", "scalar_modulated"):
            raise ConfigError(f"unknown generator kind {self.kind!r}")
        if self.kind == "scalar_modulated" and self.coefficient is None:
            raise ConfigError("scalar_modulated requires a coefficient")

    def true_generator(self, t: float) -> np.ndarray:
        """The analytic generator a(t) M (a = 1 for constant families)."""
        if self.kind == "constant":
            return self.matrix
        return self.coefficient(t) * self.matrix


@dataclass(frozen=True)
class EvolutionFamily:
    """Family (t,s) -> U(t,s) on the closed interval [-T, T]."""

    spec: GeneratorSpec
    T: float
    _phase: Callable[[float, float], float] = field(repr=False, default=None)

    def _check_domain(self, *coords: float) -> None:
        for c in coords:
            if abs(c) > self.T + 1e-15:
                raise DomainError(f"coordinate {c} outside [-{self.T}, {self.T}]")

    def phase(self, t: float, s: float) -> float:
        """Scalar theta(t,s) with U(t,s) = exp(theta M)."""
        self._check_domain(t, s)
        return self._phase(t, s)

    def __call__(self, t: float, s: float) -> np.ndarray:
        if t == s:
            return identity_like(self.spec.matrix)
        return mat_exp(self.phase(t, s) * self.spec.matrix)


def build_family(spec: GeneratorSpec, T: float) -> EvolutionFamily:
    """Construct the evolution family generated by ``spec`` on [-T, T]."""
    if T <= 0:
        raise ConfigError("T must be positive")
    if spec.kind == "constant":
        phase = lambda t, s: t - s
    else:

        def phase(t, s):
            val, err = quad(spec.coefficient, s, t, epsabs=1e-12, epsrel=1e-12)
            if err > 1e-9 * max(1.0, abs(val)):
                raise QuadratureError(
                    f"coefficient integral error estimate {err:.3e} too large"
                )
            return val

    return EvolutionFamily(spec=spec, T=T, _phase=phase)


def check_group_axioms(family: EvolutionFamily, triples) -> VerificationReport:
    """Residuals of composition, identity, and inverse laws over triples."""
    triples = list(triples)
    comp = 0.0
    ident = 0.0
    inv = 0.0
    for t, r, s in triples:
        comp = max(comp, op_norm(family(t, r) @ family(r, s) - family(t, s)))
        ident = max(ident, op_norm(family(s, s) - identity_like(family.spec.matrix)))
        inv = max(inv, op_norm(family(s, t) @ family(t, s) - identity_like(family.spec.matrix)))
    rep = VerificationReport(
        name="group_axioms",
        inputs_digest=inputs_digest(
            {"kind": family.spec.kind, "T": family.T, "n_triples": len(triples)}
        ),
        residuals={"composition": comp, "identity": ident, "inverse": inv},
        tolerances={
            "composition": TOL_SEMIGROUP,
            "identity": TOL_SEMIGROUP,
            "inverse": TOL_SEMIGROUP,
        },
    )
    return rep


def pre_generator(
    family: EvolutionFamily, t: float, h: float, scheme: str = "central"
) -> np.ndarray:
    """Difference-quotient generator of the family at coordinate t.

    "central" is (U(t+h,t) - U(t-h,t)) / (2h), accurate to O(h^2);
    "forward" is (U(t+h,t) - I) / h, matching the defining limit literally.
    """
    if h <= 0:
        raise ConfigError("h must be positive")
    family._check_domain(t + h, t - h if scheme == "central" else t)
    if scheme == "central":
        return (family(t + h, t) - family(t - h, t)) / (2.0 * h)
    if scheme == "forward":
        return (family(t + h, t) - identity_like(family.spec.matrix)) / h
    raise ConfigError(f"unknown difference scheme {scheme!r}")
